#include <cmath>

#include "cauchylens/geometry.hpp"
#include "cauchylens/potentials.hpp"
#include "doctest.h"

using namespace cauchylens;

namespace {

DomainSpec chord_spec() {
  DomainOptions opt;
  opt.gamma = GammaDescriptor::chord(0.5);
  opt.side = Side::Positive;
  return make_domain(opt);
}

// Stokes form of the area integral of the Cauchy kernel over D:
//   T(1)(z) = conj(z) - (1/(2 pi i)) contour-int conj(zeta)/(zeta - z) dzeta
// for z in D; without the conj(z) term for z outside the closure.
cplx t_one_reference(const DomainSpec& spec, const BoundaryRule& full, cplx z) {
  std::vector<cplx> zbar(full.nodes.size());
  for (std::size_t k = 0; k < zbar.size(); ++k)
    zbar[k] = std::conj(full.nodes[k].z);
  const cplx contour = boundary_potential(full, zbar, z);
  const bool inside = spec.on_d_side(spec.side_value(z));
  return (inside ? std::conj(z) : cplx(0.0, 0.0)) - contour;
}

}  // namespace

TEST_CASE("cauchy potential of the constant density reproduces the indicator") {
  const DomainSpec spec = chord_spec();
  const BoundaryRule full = boundary_rule(spec, BoundaryPart::FULL, 512);
  const std::vector<cplx> one(full.nodes.size(), cplx(1.0, 0.0));

  for (cplx z : {cplx(0.75, 0.0), cplx(0.6, 0.3), cplx(0.9, -0.1)}) {
    CHECK(std::abs(boundary_potential(full, one, z) - 1.0) < 1e-10);
  }
  for (cplx z : {cplx(0.0, 0.0), cplx(-0.5, 0.2), cplx(1.5, 0.5)}) {
    CHECK(std::abs(boundary_potential(full, one, z)) < 1e-10);
  }
}

TEST_CASE("area potential of the constant source at interior points") {
  const DomainSpec spec = chord_spec();
  // The Stokes reference integrand is nearly singular for probes 0.05 away
  // from the boundary, so the reference rule must be much finer than the
  // potential under test.
  const BoundaryRule full = boundary_rule(spec, BoundaryPart::FULL, 4096);
  const AreaRule rule = area_rule(spec, 32, 3);
  const AreaPotential pot = AreaPotential::from_function(
      spec, rule, [](cplx) { return cplx(1.0, 0.0); });

  for (cplx z : {cplx(0.75, 0.0), cplx(0.62, 0.28), cplx(0.85, -0.35),
                 cplx(0.55, 0.05), cplx(0.95, 0.0)}) {
    const cplx expect = t_one_reference(spec, full, z);
    CHECK(std::abs(pot.value(z) - expect) < 1e-6);
  }
}

TEST_CASE("area potential outside D matches the Stokes reference") {
  const DomainSpec spec = chord_spec();
  const BoundaryRule full = boundary_rule(spec, BoundaryPart::FULL, 1024);
  const AreaRule rule = area_rule(spec, 32, 3);
  const AreaPotential pot = AreaPotential::from_function(
      spec, rule, [](cplx) { return cplx(1.0, 0.0); });

  for (cplx z : {cplx(0.0, 0.0), cplx(-0.4, 0.3), cplx(0.2, -0.6)}) {
    const cplx expect = t_one_reference(spec, full, z);
    CHECK(std::abs(pot.value(z) - expect) < 1e-8);
    // Outside D the automatic policy reduces to the raw sum.
    CHECK(pot.value(z) == pot.value(z, EvalPolicy::Raw));
  }
}

TEST_CASE("disc area kernel sum has the exterior closed form") {
  // Over B(c, rho), the potential of the constant source at exterior z is
  // rho^2 / (z - c).
  const cplx c(0.1, -0.05);
  const double rho = 0.25;
  const auto nodes = disc_quadrature(c, rho, 24, 96);
  for (cplx z : {cplx(0.8, 0.2), cplx(-0.6, 0.5), cplx(0.0, 0.9)}) {
    cplx sum{0.0, 0.0};
    for (const WeightedNode& n : nodes) sum += n.w * area_kernel(n.z, z);
    CHECK(std::abs(sum - rho * rho / (z - c)) < 1e-12);
  }
}

TEST_CASE("jump of the interface potential recovers the density") {
  const DomainSpec spec = chord_spec();
  const BoundaryRule gamma = boundary_rule(spec, BoundaryPart::GAMMA, 2048);
  const auto g = [](cplx z) { return z * z + 1.0; };
  std::vector<cplx> density(gamma.nodes.size());
  for (std::size_t k = 0; k < density.size(); ++k)
    density[k] = g(gamma.nodes[k].z);

  const GammaPoint gp = spec.gamma_point(0.37);
  const cplx n_out = spec.gamma_outward_normal(0.37);

  // Laterally extrapolate the one-sided values to the curve (the defect of
  // the one-sided limits is smooth in the offset).
  const double deltas[3] = {0.08, 0.04, 0.02};
  cplx jumps[3];
  for (int k = 0; k < 3; ++k) {
    const cplx z_in = gp.z - deltas[k] * n_out;
    const cplx z_out = gp.z + deltas[k] * n_out;
    jumps[k] = boundary_potential(gamma, density, z_in) -
               boundary_potential(gamma, density, z_out);
  }
  cplx extrap{0.0, 0.0};
  for (int k = 0; k < 3; ++k) {
    double l = 1.0;
    for (int m = 0; m < 3; ++m)
      if (m != k) l *= (0.0 - deltas[m]) / (deltas[k] - deltas[m]);
    extrap += l * jumps[k];
  }
  CHECK(std::abs(extrap - g(gp.z)) < 2e-3);
}

TEST_CASE("cauchy-pompeiu identity for a manufactured field") {
  const DomainSpec spec = chord_spec();
  const BoundaryRule full = boundary_rule(spec, BoundaryPart::FULL, 2048);
  const AreaRule rule = area_rule(spec, 32, 3);

  // u = z^2 conj(z), dbar u = z^2.
  const ScalarField u = [](cplx z) { return z * z * std::conj(z); };
  const AreaPotential tf =
      AreaPotential::from_function(spec, rule, [](cplx z) { return z * z; });

  const std::vector<cplx> probes{cplx(0.75, 0.0),  cplx(0.6, 0.25),
                                 cplx(0.9, -0.2),  cplx(0.0, 0.0),
                                 cplx(-0.5, 0.3),  cplx(0.2, -0.5)};
  CHECK(homotopy_residual(spec, full, tf, u, probes) < 1e-6);
}

TEST_CASE("cauchy-pompeiu identity for a holomorphic field is near exact") {
  const DomainSpec spec = chord_spec();
  const BoundaryRule full = boundary_rule(spec, BoundaryPart::FULL, 512);
  const AreaRule rule = area_rule(spec, 16, 3);
  const ScalarField u = [](cplx z) { return z * z; };
  const AreaPotential tf =
      AreaPotential::from_function(spec, rule, [](cplx) { return cplx(0.0, 0.0); });
  const std::vector<cplx> probes{cplx(0.75, 0.1), cplx(0.0, 0.0), cplx(-0.3, 0.4)};
  CHECK(homotopy_residual(spec, full, tf, u, probes) < 1e-10);
}

TEST_CASE("pompeiu residual refines at second order or better") {
  const DomainSpec spec = chord_spec();
  const ScalarField u = [](cplx z) { return std::conj(z); };
  const std::vector<cplx> probes{cplx(0.75, 0.0), cplx(0.65, 0.3), cplx(0.9, -0.15),
                                 cplx(0.0, 0.0), cplx(-0.4, 0.3)};

  // Joint boundary + area refinement; the coarse end must be coarse enough
  // that quadrature error dominates the scheme's desingularization floor.
  double err[3];
  const int nodes[3] = {128, 256, 512};
  const int res[3] = {8, 16, 32};
  for (int k = 0; k < 3; ++k) {
    const BoundaryRule full = boundary_rule(spec, BoundaryPart::FULL, nodes[k]);
    const AreaRule rule = area_rule(spec, res[k], 3);
    const AreaPotential tf =
        AreaPotential::from_function(spec, rule, [](cplx) { return cplx(1.0, 0.0); });
    err[k] = homotopy_residual(spec, full, tf, u, probes);
  }
  CHECK(err[1] < err[0]);
  CHECK(err[2] < err[1]);
  const double slope = std::log(err[0] / err[2]) / std::log(4.0);
  CHECK(slope >= 2.0);
}

TEST_CASE("interpolated source evaluation") {
  const DomainSpec spec = chord_spec();
  const AreaRule rule = area_rule(spec, 32, 3);
  const ScalarField f = [](cplx z) {
    return std::exp(z.real()) + cplx(0, 1) * z.imag() * z.imag();
  };
  // Samples only; no exact callback.
  std::vector<cplx> samples(rule.nodes.size());
  for (std::size_t k = 0; k < samples.size(); ++k) samples[k] = f(rule.nodes[k].z);
  const AreaPotential pot(spec, rule, samples);

  for (cplx z : {cplx(0.7, 0.1), cplx(0.55, -0.3), cplx(0.92, 0.05)}) {
    CHECK(std::abs(pot.source_at(z) - f(z)) < 1e-4);
  }
  CHECK_THROWS_AS(pot.source_at(cplx(-0.5, 0.0)), PointOutsideD);
}

TEST_CASE("sample-count mismatches are rejected") {
  const DomainSpec spec = chord_spec();
  const AreaRule rule = area_rule(spec, 8, 3);
  const BoundaryRule gamma = boundary_rule(spec, BoundaryPart::GAMMA, 128);
  CHECK_THROWS_AS(AreaPotential(spec, rule, std::vector<cplx>(5)), QuadratureMismatch);
  CHECK_THROWS_AS(boundary_potential(gamma, std::vector<cplx>(3), cplx(0, 0)),
                  QuadratureMismatch);
}

TEST_CASE("batch evaluation is bit-identical between serial and parallel") {
  const DomainSpec spec = chord_spec();
  const BoundaryRule gamma = boundary_rule(spec, BoundaryPart::GAMMA, 256);
  const AreaRule rule = area_rule(spec, 16, 3);
  const AreaPotential pot = AreaPotential::from_function(
      spec, rule, [](cplx z) { return z + std::conj(z) * z; });
  std::vector<cplx> density(gamma.nodes.size(), cplx(0.3, -0.7));

  std::vector<cplx> points;
  for (int i = 0; i < 40; ++i)
    points.emplace_back(0.55 + 0.01 * i, 0.02 * (i % 7) - 0.06);

  const auto b_ser = boundary_potential_many(gamma, density, points, 0, par::Mode::Serial);
  const auto b_par = boundary_potential_many(gamma, density, points, 0, par::Mode::Parallel);
  const auto a_ser = pot.values(points, EvalPolicy::Auto, 0, par::Mode::Serial);
  const auto a_par = pot.values(points, EvalPolicy::Auto, 0, par::Mode::Parallel);
  for (std::size_t i = 0; i < points.size(); ++i) {
    CHECK(b_ser[i] == b_par[i]);
    CHECK(a_ser[i] == a_par[i]);
  }
}
