#pragma once

#include <cstddef>
#include <vector>

namespace cauchylens {

struct GaussRule1d {
  std::vector<double> x;  // nodes on [-1, 1]
  std::vector<double> w;
};

// Gauss-Legendre nodes/weights on [-1,1], Newton iteration on P_n.
GaussRule1d gauss_legendre(std::size_t n);

// Differentiation matrix for the Lagrange interpolant on arbitrary nodes
// (barycentric form).  Row-major n x n; D*f approximates f' at the nodes.
std::vector<double> lagrange_diff_matrix(const std::vector<double>& nodes);

}  // namespace cauchylens
