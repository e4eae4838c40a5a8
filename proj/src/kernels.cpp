#include "cauchylens/kernels.hpp"

#include <cmath>
#include <string>

namespace cauchylens {

namespace {

void check_separation(cplx zeta, cplx z, double exclusion) {
  if (std::abs(zeta - z) < exclusion)
    throw SingularEvaluation("kernel evaluated within " + std::to_string(exclusion) +
                             " of its singularity");
}

// (z/zeta)^N by squaring; N is small but this keeps large N cheap and exact
// for N = 0.
cplx ratio_power(cplx z, cplx zeta, int n) {
  cplx base = z / zeta, out{1.0, 0.0};
  for (int e = n; e > 0; e >>= 1) {
    if (e & 1) out *= base;
    base *= base;
  }
  return out;
}

}  // namespace

cplx boundary_kernel(cplx zeta, cplx z, double exclusion) {
  check_separation(zeta, z, exclusion);
  return 1.0 / (cplx(0.0, 2.0 * pi) * (zeta - z));
}

cplx area_kernel(cplx zeta, cplx z, double exclusion) {
  check_separation(zeta, z, exclusion);
  return -1.0 / (pi * (zeta - z));
}

cplx carleman_boundary_kernel(cplx zeta, cplx z, int truncation, double exclusion) {
  if (truncation < 0) throw TooFewTerms("truncation order must be nonnegative");
  return ratio_power(z, zeta, truncation) * boundary_kernel(zeta, z, exclusion);
}

cplx carleman_area_kernel(cplx zeta, cplx z, int truncation, double exclusion) {
  if (truncation < 0) throw TooFewTerms("truncation order must be nonnegative");
  return ratio_power(z, zeta, truncation) * area_kernel(zeta, z, exclusion);
}

cplx fd_dbar(const ScalarField& u, cplx z, double h) {
  const cplx ux = (u(z + h) - u(z - h)) / (2.0 * h);
  const cplx uy = (u(z + cplx(0.0, h)) - u(z - cplx(0.0, h))) / (2.0 * h);
  return 0.5 * (ux + cplx(0.0, 1.0) * uy);
}

cplx fd_dz(const ScalarField& u, cplx z, double h) {
  const cplx ux = (u(z + h) - u(z - h)) / (2.0 * h);
  const cplx uy = (u(z + cplx(0.0, h)) - u(z - cplx(0.0, h))) / (2.0 * h);
  return 0.5 * (ux - cplx(0.0, 1.0) * uy);
}

cplx fd_laplacian(const ScalarField& u, cplx z, double h) {
  return (u(z + h) + u(z - h) + u(z + cplx(0.0, h)) + u(z - cplx(0.0, h)) -
          4.0 * u(z)) /
         (h * h);
}

double fd_curl(const std::function<double(double, double)>& p,
               const std::function<double(double, double)>& q, double x, double y,
               double h) {
  const double qx = (q(x + h, y) - q(x - h, y)) / (2.0 * h);
  const double py = (p(x, y + h) - p(x, y - h)) / (2.0 * h);
  return qx - py;
}

}  // namespace cauchylens
