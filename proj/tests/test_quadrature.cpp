#include <cmath>
#include <complex>

#include "cauchylens/geometry.hpp"
#include "cauchylens/quadrature.hpp"
#include "doctest.h"

using namespace cauchylens;

namespace {

DomainSpec chord_spec() {
  DomainOptions opt;
  opt.gamma = GammaDescriptor::chord(0.5);
  opt.side = Side::Positive;
  return make_domain(opt);
}

DomainSpec arc_lens_spec() {
  DomainOptions opt;
  opt.gamma = GammaDescriptor::circular_arc(cplx(0.7, 0.0), 0.45);
  opt.side = Side::Negative;
  return make_domain(opt);
}

}  // namespace

TEST_CASE("boundary part names") {
  CHECK(parse_boundary_part("gamma") == BoundaryPart::GAMMA);
  CHECK(parse_boundary_part("arc") == BoundaryPart::OUTER_ARC);
  CHECK(parse_boundary_part("full") == BoundaryPart::FULL);
  CHECK_THROWS_AS(parse_boundary_part("edge"), UnknownPart);
}

TEST_CASE("boundary rule lengths match closed forms") {
  const DomainSpec spec = chord_spec();
  const BoundaryRule gamma = boundary_rule(spec, BoundaryPart::GAMMA, 256);
  const BoundaryRule arc = boundary_rule(spec, BoundaryPart::OUTER_ARC, 256);
  const BoundaryRule full = boundary_rule(spec, BoundaryPart::FULL, 512);

  CHECK(gamma.length == doctest::Approx(1.7320508075688772).epsilon(1e-12));
  CHECK(arc.length == doctest::Approx(2.0943951023931957).epsilon(1e-12));
  CHECK(full.length == doctest::Approx(3.826445909962073).epsilon(1e-12));
}

TEST_CASE("closed contour integrals: orientation and Stokes") {
  const DomainSpec spec = chord_spec();
  const BoundaryRule full = boundary_rule(spec, BoundaryPart::FULL, 512);

  cplx int_one{0.0, 0.0}, int_zbar{0.0, 0.0};
  for (const BoundaryNode& n : full.nodes) {
    int_one += n.w * n.tangent;
    int_zbar += n.w * n.tangent * std::conj(n.z);
  }
  // Contour integral of dzeta vanishes; of conj(zeta) dzeta equals 2i * area.
  CHECK(std::abs(int_one) < 1e-12);
  CHECK(std::abs(int_zbar - cplx(0.0, 2.0 * 0.6141848493043786)) < 1e-10);
}

TEST_CASE("tangents are unit and consistent with outward normals") {
  const DomainSpec spec = arc_lens_spec();
  const BoundaryRule full = boundary_rule(spec, BoundaryPart::FULL, 256);
  for (const BoundaryNode& n : full.nodes) {
    CHECK(std::abs(std::abs(n.tangent) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(n.normal) - 1.0) < 1e-12);
    CHECK(std::abs(n.tangent - cplx(0.0, 1.0) * n.normal) < 1e-12);
    // A short step inward lands in D.
    const cplx inside = n.z - 1e-6 * n.normal;
    CHECK(spec.on_d_side(spec.side_value(inside)));
  }
}

TEST_CASE("area rule integrates the chord segment") {
  const DomainSpec spec = chord_spec();
  const AreaRule rule = area_rule(spec, 32, 3);
  CHECK(rule.total_area == doctest::Approx(0.6141848493043786).epsilon(5e-9));

  // First moment: integral of Re z over the segment has the closed form
  // (2/3) (1 - h^2)^{3/2} with h = 0.5.
  double mx = 0.0;
  for (const WeightedNode& n : rule.nodes) mx += n.w * n.z.real();
  CHECK(mx == doctest::Approx(2.0 / 3.0 * std::pow(0.75, 1.5)).epsilon(1e-8));
  // Symmetry kills the Im z moment.
  double my = 0.0;
  for (const WeightedNode& n : rule.nodes) my += n.w * n.z.imag();
  CHECK(std::abs(my) < 1e-12);
}

TEST_CASE("area rule integrates the two-circle lens") {
  const DomainSpec spec = arc_lens_spec();
  const AreaRule rule = area_rule(spec, 32, 3);
  CHECK(rule.total_area == doctest::Approx(0.5500393979782252).epsilon(1e-8));
}

TEST_CASE("area rule refines toward the exact area") {
  const DomainSpec spec = chord_spec();
  const double exact = 0.6141848493043786;
  double prev = std::abs(area_rule(spec, 8, 3).total_area - exact);
  for (int res : {16, 32}) {
    const double err = std::abs(area_rule(spec, res, 3).total_area - exact);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 5e-9);
}

TEST_CASE("every area node lies inside D and cells tile the chart") {
  const DomainSpec spec = chord_spec();
  const AreaRule rule = area_rule(spec, 12, 3);
  REQUIRE(rule.n_phi >= 4);
  REQUIRE(int(rule.nodes.size()) == rule.n_phi * rule.n_t * rule.q * rule.q);
  for (const WeightedNode& n : rule.nodes) {
    CHECK(n.w > 0.0);
    CHECK(spec.on_d_side(spec.side_value(n.z)));
  }
  // Chart coordinates round-trip and locate the owning cell.
  for (int jphi : {0, rule.n_phi / 2, rule.n_phi - 1}) {
    for (int it : {0, rule.n_t / 2, rule.n_t - 1}) {
      const int cell = rule.cell_index(jphi, it);
      const WeightedNode& n = rule.nodes[rule.node_index(cell, 1, 1)];
      CHECK(rule.locate_cell(spec, n.z) == cell);
    }
  }
}

TEST_CASE("disc rule is exact on radial and low angular moments") {
  const double rho = 0.3;
  const auto nodes = disc_quadrature(cplx(0.0, 0.0), rho, 8, 32);

  double area = 0.0, m2 = 0.0;
  cplx z3{0.0, 0.0};
  for (const WeightedNode& n : nodes) {
    area += n.w;
    m2 += n.w * std::norm(n.z);
    z3 += n.w * n.z * n.z * n.z;
  }
  CHECK(area == doctest::Approx(pi * rho * rho).epsilon(1e-13));
  CHECK(m2 == doctest::Approx(0.012723450247038661).epsilon(1e-13));
  CHECK(std::abs(z3) < 1e-15);
}

TEST_CASE("quadrature input validation") {
  const DomainSpec spec = chord_spec();
  CHECK_THROWS_AS(boundary_rule(spec, BoundaryPart::GAMMA, 4), QuadratureMismatch);
  CHECK_THROWS_AS(area_rule(spec, 2, 3), QuadratureMismatch);
  CHECK_THROWS_AS(disc_quadrature(cplx(0, 0), 0.3, 0, 32), QuadratureMismatch);
}
