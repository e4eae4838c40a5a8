#pragma once

#include <cstdint>
#include <vector>

#include "cauchylens/common.hpp"

namespace cauchylens {

// ---------------------------------------------------------------------------
// Doubly orthogonal holomorphic basis on the disc pair (Omega, omega):
// b_nu(z) = sqrt(nu / (pi R^{2 nu})) z^{nu-1}, nu = 1, 2, ...
// is orthonormal in L^2(Omega) and orthogonal in L^2(omega) with
// (b_nu, b_nu)_omega = lambda_nu = (r/R)^{2 nu}.
// ---------------------------------------------------------------------------

struct AnalyticBasis {
  double omega_radius = 1.0;
  double test_radius = 0.5;
  int n_max = 0;

  double beta(int nu) const;    // leading coefficient sqrt(nu/(pi R^{2nu}))
  double lambda(int nu) const;  // (r/R)^{2 nu}
  cplx eval(int nu, cplx z) const;
  // All values b_1(z), ..., b_{n_max}(z) in one pass.
  std::vector<cplx> eval_all(cplx z) const;
};

AnalyticBasis make_analytic_basis(double omega_radius, double test_radius, int n_max);

// L^2(B(0,R)) norm squared of z^{nu-1}: pi R^{2 nu} / nu.
double monomial_ball_norm_squared(double R, int nu);

// ---------------------------------------------------------------------------
// Numeric construction: Gram matrices of the scaled monomials over both discs
// by quadrature, then the generalized eigenproblem
//   G_omega v = lambda G_Omega v
// solved through a Cholesky reduction and a cyclic Jacobi iteration with the
// relative off-diagonal stopping rule, which preserves the relative accuracy
// of the sharply graded small eigenvalues (lambda_n decays like (r/R)^{2n}).
// ---------------------------------------------------------------------------

struct NumericBasis {
  double omega_radius = 1.0;
  double test_radius = 0.5;
  int n_max = 0;
  std::vector<double> lambda;            // descending
  std::vector<std::vector<cplx>> coef;   // coef[k][j]: scaled-monomial coefficients
  std::vector<double> mono_scale;        // z^j is used as mono_scale[j] * z^j

  cplx eval(int k, cplx z) const;  // k = 0-based eigenfunction index
};

NumericBasis build_numeric_basis(double omega_radius, double test_radius, int n_max);

// ---------------------------------------------------------------------------
// Dense Hermitian eigensolver used above; exposed for testing.  A is n x n
// row-major and overwritten; eigenvalues are unordered on return, V's columns
// hold the corresponding eigenvectors.
// ---------------------------------------------------------------------------
void hermitian_jacobi(std::vector<cplx>& A, int n, std::vector<double>& eigenvalues,
                      std::vector<cplx>& V);

// Dimension of the space of homogeneous harmonics of degree nu on R^dim
// restricted to the sphere, dim even (complex setting); exact integers.
// dim = 2 gives 1, 2, 2, 2, ...; dim = 4 gives (nu+1)^2.
std::uint64_t harmonic_dimension(int dim, int nu);

}  // namespace cauchylens
