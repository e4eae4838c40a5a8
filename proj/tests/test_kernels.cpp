#include <cmath>

#include "cauchylens/basis.hpp"
#include "cauchylens/geometry.hpp"
#include "cauchylens/kernels.hpp"
#include "cauchylens/quadrature.hpp"
#include "doctest.h"

using namespace cauchylens;

TEST_CASE("kernel values and singular exclusion") {
  const cplx zeta(0.7, 0.1), z(0.2, -0.3);
  CHECK(std::abs(boundary_kernel(zeta, z) -
                 1.0 / (cplx(0, 2.0 * pi) * (zeta - z))) < 1e-16);
  CHECK(std::abs(area_kernel(zeta, z) + 1.0 / (pi * (zeta - z))) < 1e-16);
  CHECK_THROWS_AS(boundary_kernel(z, z + cplx(1e-9, 0)), SingularEvaluation);
  CHECK_THROWS_AS(area_kernel(z, z), SingularEvaluation);
  CHECK_THROWS_AS(carleman_area_kernel(zeta, z, -1), TooFewTerms);
}

TEST_CASE("truncated kernel equals kernel minus its basis projection") {
  // The closed form (z/zeta)^N / (zeta - z) must coincide with subtracting
  // from the Cauchy kernel its expansion coefficients against the doubly
  // orthogonal basis, computed from the small-disc inner products.
  const double R = 1.0, r = 0.25;
  const AnalyticBasis basis = make_analytic_basis(R, r, 40);
  const auto small = disc_quadrature(cplx(0, 0), r, 48, 176);

  const int N = 12;
  for (cplx zeta : {cplx(0.5, 0.2), cplx(0.9, -0.3), cplx(0.6, 0.0)}) {
    for (cplx z : {cplx(0.55, 0.1), cplx(0.45, -0.2)}) {
      // Projection of K(zeta, .) onto b_nu over the small disc.
      cplx series = area_kernel(zeta, z);
      for (int nu = 1; nu <= N; ++nu) {
        cplx inner{0, 0};
        for (const WeightedNode& n : small)
          inner += n.w * area_kernel(zeta, n.z) * std::conj(basis.eval(nu, n.z));
        series -= inner / basis.lambda(nu) * basis.eval(nu, z);
      }
      const cplx closed = carleman_area_kernel(zeta, z, N);
      // Absolute bound: the subtraction cancels from kernel scale (~1) down
      // to the closed form, so quadrature-sum roundoff ~1e-12 is the floor.
      CHECK(std::abs(series - closed) < 5e-12);
    }
  }
}

TEST_CASE("truncated kernel at order zero is the plain kernel") {
  const cplx zeta(0.8, 0.3), z(0.1, 0.2);
  CHECK(std::abs(carleman_boundary_kernel(zeta, z, 0) - boundary_kernel(zeta, z)) <
        1e-16);
}

TEST_CASE("finite differences recover the complex derivatives") {
  // u = z^2 conj(z): dbar u = z^2, dz u = 2 z conj(z).
  const ScalarField u = [](cplx z) { return z * z * std::conj(z); };
  const cplx z(0.4, -0.7);
  CHECK(std::abs(fd_dbar(u, z, 1e-5) - z * z) < 1e-9);
  CHECK(std::abs(fd_dz(u, z, 1e-5) - 2.0 * z * std::conj(z)) < 1e-9);
}

TEST_CASE("adjoint convention: dbar* dbar is -1/4 of the laplacian") {
  // dbar* = -dz, so dbar* dbar u = -dz(dbar u); compare with the laplacian.
  const ScalarField u = [](cplx z) {
    return std::exp(z.real()) * std::cos(z.imag()) +
           cplx(0, 1) * z.real() * z.real() * z.imag();
  };
  const cplx z(0.3, 0.2);
  const double h = 1e-4;
  const ScalarField dbar_u = [&](cplx w) { return fd_dbar(u, w, h); };
  const cplx lhs = -fd_dz(dbar_u, z, h);
  const cplx rhs = kDbarStarDbarLaplaceFactor * fd_laplacian(u, z, 1e-4);
  CHECK(std::abs(lhs - rhs) < 1e-6);
}

TEST_CASE("green identity fixes the boundary pairing weight") {
  // integral_D [ (dbar v) conj(w) + v conj(dz w) ] dA
  //   = integral_{bd D} (n/2) v conj(w) ds,
  // with n the outward unit normal as a complex number.
  DomainOptions opt;
  opt.gamma = GammaDescriptor::chord(0.5);
  const DomainSpec spec = make_domain(opt);
  const AreaRule area = area_rule(spec, 64, 3);
  const BoundaryRule bdry = boundary_rule(spec, BoundaryPart::FULL, 512);

  // v = z^2 (dbar v = 0), w = conj(z)^2 + z (dz w = 1).
  cplx lhs{0, 0};
  for (const WeightedNode& n : area.nodes) {
    const cplx v = n.z * n.z;
    lhs += n.w * v * std::conj(cplx(1.0, 0.0));
  }
  cplx rhs{0, 0};
  for (const BoundaryNode& n : bdry.nodes) {
    const cplx v = n.z * n.z;
    const cplx w = std::conj(n.z) * std::conj(n.z) + n.z;
    rhs += n.w * (n.normal / 2.0) * v * std::conj(w);
  }
  CHECK(std::abs(lhs - rhs) < 1e-9);
}
