#pragma once

#include <functional>

#include "cauchylens/common.hpp"

namespace cauchylens {

// ---------------------------------------------------------------------------
// Integral kernels.  Boundary potentials pair against dzeta with the factor
// 1/(2 pi i (zeta - z)); area potentials against dA with -1/(pi (zeta - z)).
// The truncated reconstruction kernels carry the extra factor (z/zeta)^N:
// subtracting from the Cauchy kernel its projection onto the first N doubly
// orthogonal basis functions leaves exactly (z/zeta)^N / (zeta - z),
// independent of the two disc radii.
// ---------------------------------------------------------------------------

inline constexpr double kKernelExclusion = 1e-8;

cplx boundary_kernel(cplx zeta, cplx z, double exclusion = kKernelExclusion);
cplx area_kernel(cplx zeta, cplx z, double exclusion = kKernelExclusion);

cplx carleman_boundary_kernel(cplx zeta, cplx z, int truncation,
                              double exclusion = kKernelExclusion);
cplx carleman_area_kernel(cplx zeta, cplx z, int truncation,
                          double exclusion = kKernelExclusion);

// ---------------------------------------------------------------------------
// Differential conventions, pinned once:
//   dbar = (d/dx + i d/dy) / 2,  dz = (d/dx - i d/dy) / 2,
// the formal adjoint of dbar is -dz, and dbar* dbar = -(1/4) Laplacian.
// ---------------------------------------------------------------------------

inline constexpr double kDbarStarDbarLaplaceFactor = -0.25;

using ScalarField = std::function<cplx(cplx)>;

cplx fd_dbar(const ScalarField& u, cplx z, double h);
cplx fd_dz(const ScalarField& u, cplx z, double h);
cplx fd_laplacian(const ScalarField& u, cplx z, double h);

// Scalar curl of a real planar vector field (p, q): dq/dx - dp/dy.
double fd_curl(const std::function<double(double, double)>& p,
               const std::function<double(double, double)>& q, double x, double y,
               double h);

}  // namespace cauchylens
