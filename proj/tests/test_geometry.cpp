#include <cmath>

#include "cauchylens/geometry.hpp"
#include "doctest.h"

using namespace cauchylens;

namespace {

DomainOptions chord_options(double h) {
  DomainOptions opt;
  opt.gamma = GammaDescriptor::chord(h);
  opt.side = Side::Positive;  // D = { Re z > h }
  return opt;
}

DomainOptions arc_lens_options() {
  DomainOptions opt;
  opt.gamma = GammaDescriptor::circular_arc(cplx(0.7, 0.0), 0.45);
  opt.side = Side::Negative;  // D = inside the interface circle
  return opt;
}

}  // namespace

TEST_CASE("chord lens at offset 0.5: derived geometry") {
  const DomainSpec spec = make_domain(chord_options(0.5));

  CHECK(spec.chord_halfspan == doctest::Approx(0.8660254037844386).epsilon(1e-14));
  CHECK(spec.gamma_len == doctest::Approx(1.7320508075688772).epsilon(1e-14));
  CHECK(spec.dist0_gamma == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(spec.test_ball_radius == doctest::Approx(0.25).epsilon(1e-14));

  CHECK(spec.corner_a.real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(spec.corner_a.imag() == doctest::Approx(-0.8660254037844386).epsilon(1e-14));
  CHECK(spec.corner_b.imag() == doctest::Approx(0.8660254037844386).epsilon(1e-14));

  // Outer arc spans angle 2*acos(h) = 2*pi/3, symmetric about 0.
  CHECK(spec.arc_hi - spec.arc_lo == doctest::Approx(2.0943951023931957).epsilon(1e-13));
  CHECK(spec.arc_hi == doctest::Approx(-spec.arc_lo).epsilon(1e-13));

  CHECK(spec.pivot.real() == doctest::Approx(0.75).epsilon(1e-13));
  CHECK(spec.pivot.imag() == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("chord lens: point classification") {
  const DomainSpec spec = make_domain(chord_options(0.5));

  CHECK(classify_point(spec, cplx(0.9, 0.0)) == PointClass::IN_D);
  CHECK(classify_point(spec, cplx(0.6, 0.3)) == PointClass::IN_D);
  CHECK(classify_point(spec, cplx(0.0, 0.0)) == PointClass::IN_OMEGA_TEST_BALL);
  CHECK(classify_point(spec, cplx(0.1, 0.2)) == PointClass::IN_OMEGA_TEST_BALL);
  CHECK(classify_point(spec, cplx(-0.5, 0.0)) == PointClass::IN_DPLUS);
  CHECK(classify_point(spec, cplx(0.3, 0.6)) == PointClass::IN_DPLUS);
  CHECK(classify_point(spec, cplx(0.5005, 0.0)) == PointClass::NEAR_BOUNDARY);
  CHECK(classify_point(spec, cplx(1.5, 0.0)) == PointClass::OUTSIDE);
  CHECK(classify_point(spec, cplx(2.0, 2.0)) == PointClass::OUTSIDE);
  // Near-boundary takes precedence over the outside label.
  CHECK(classify_point(spec, cplx(1.0004, 0.0)) == PointClass::NEAR_BOUNDARY);
  // The left half of the circle is not part of the boundary of D, so a point
  // just beyond it is plain outside.
  CHECK(classify_point(spec, cplx(0.0, 1.0004)) == PointClass::OUTSIDE);
}

TEST_CASE("chord lens: distances") {
  const DomainSpec spec = make_domain(chord_options(0.5));

  CHECK(spec.dist_to_gamma(cplx(0.0, 0.0)) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(spec.dist_to_gamma(cplx(0.9, 0.2)) == doctest::Approx(0.4).epsilon(1e-14));
  // Above the chord endpoint: nearest point is the corner.
  const cplx far(0.5, 1.2);
  CHECK(spec.dist_to_gamma(far) ==
        doctest::Approx(std::abs(far - spec.corner_b)).epsilon(1e-13));
  CHECK(spec.dist_to_outer_arc(cplx(0.95, 0.0)) == doctest::Approx(0.05).epsilon(1e-13));
  // At angle pi the outer arc is absent; the corners are nearest.
  CHECK(spec.dist_to_outer_arc(cplx(-1.0, 0.0)) ==
        doctest::Approx(std::abs(cplx(-1.0, 0.0) - spec.corner_a)).epsilon(1e-13));
  CHECK(spec.dist_to_boundary(cplx(0.9, 0.0)) == doctest::Approx(0.1).epsilon(1e-13));
}

TEST_CASE("chord lens: star chart") {
  const DomainSpec spec = make_domain(chord_options(0.5));
  REQUIRE(spec.star.size() == 2);
  CHECK(spec.star[0].hits_gamma != spec.star[1].hits_gamma);

  // Horizontal rays from the pivot (0.75, 0).
  CHECK(spec.star_radius(0.0) == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(spec.star_radius(3.14159265358979323846) == doctest::Approx(0.25).epsilon(1e-13));

  // Star points stay in D and the chart round-trips.
  for (double phi : {0.1, 1.0, 2.5, 4.0, 5.5}) {
    for (double t : {0.2, 0.7, 0.95}) {
      const cplx z = spec.star_point(phi, t);
      CHECK(spec.on_d_side(spec.side_value(z)));
      CHECK(std::abs(z) < spec.omega_radius + 1e-12);
    }
  }
}

TEST_CASE("arc lens: derived geometry") {
  const DomainSpec spec = make_domain(arc_lens_options());

  // Circle intersection points, in either traversal order.
  const double xi = 0.9196428571428573, yi = 0.3927556687129062;
  const double pairing1 =
      std::abs(spec.corner_a - cplx(xi, -yi)) + std::abs(spec.corner_b - cplx(xi, yi));
  const double pairing2 =
      std::abs(spec.corner_a - cplx(xi, yi)) + std::abs(spec.corner_b - cplx(xi, -yi));
  CHECK(std::min(pairing1, pairing2) < 1e-12);
  CHECK(spec.gamma_len == doctest::Approx(1.872632126445537).epsilon(1e-12));
  CHECK(spec.dist0_gamma == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(spec.test_ball_radius == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(spec.arc_hi - spec.arc_lo ==
        doctest::Approx(2.0 * 0.40362613762701394).epsilon(1e-12));
  CHECK(spec.pivot.real() == doctest::Approx(0.625).epsilon(1e-12));
}

TEST_CASE("arc lens: classification") {
  const DomainSpec spec = make_domain(arc_lens_options());

  CHECK(classify_point(spec, cplx(0.6, 0.0)) == PointClass::IN_D);
  CHECK(classify_point(spec, cplx(0.4, 0.1)) == PointClass::IN_D);
  CHECK(classify_point(spec, cplx(0.1, 0.0)) == PointClass::IN_OMEGA_TEST_BALL);
  CHECK(classify_point(spec, cplx(-0.5, 0.0)) == PointClass::IN_DPLUS);
  CHECK(classify_point(spec, cplx(0.0, 0.7)) == PointClass::IN_DPLUS);
  CHECK(classify_point(spec, cplx(0.2501, 0.0)) == PointClass::NEAR_BOUNDARY);
  CHECK(classify_point(spec, cplx(1.2, 0.0)) == PointClass::OUTSIDE);
}

TEST_CASE("sampled arc reproducing the chord behaves like the chord") {
  // Points straight up the line Re z = 0.5; left of travel is Re z < 0.5,
  // so D = { Re z > 0.5 } is the negative side.
  const double s0 = 0.8660254037844386;
  std::vector<cplx> pts;
  for (int i = 0; i <= 32; ++i)
    pts.emplace_back(0.5, -s0 + 2.0 * s0 * i / 32.0);
  DomainOptions opt;
  opt.gamma = GammaDescriptor::sampled_arc(pts);
  opt.side = Side::Negative;
  const DomainSpec spec = make_domain(opt);

  CHECK(spec.gamma_len == doctest::Approx(1.7320508075688772).epsilon(1e-9));
  CHECK(spec.dist0_gamma == doctest::Approx(0.5).epsilon(1e-9));

  const DomainSpec chord = make_domain(chord_options(0.5));
  for (cplx z : {cplx(0.9, 0.0), cplx(0.6, 0.3), cplx(0.0, 0.0), cplx(-0.5, 0.0),
                 cplx(0.3, 0.6), cplx(1.5, 0.0)}) {
    CHECK(classify_point(spec, z) == classify_point(chord, z));
  }
  // Outward normal points out of D = leftward here.
  CHECK(spec.gamma_outward_normal(0.5).real() == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("domain validation failures") {
  CHECK_THROWS_AS(make_domain(chord_options(0.0)), GammaThroughOrigin);
  CHECK_THROWS_AS(make_domain(chord_options(1.0)), DegenerateChord);
  CHECK_THROWS_AS(make_domain(chord_options(-1.2)), DegenerateChord);

  {
    DomainOptions opt = chord_options(0.5);
    opt.test_ball_radius = 0.6;  // reaches past the chord
    CHECK_THROWS_AS(make_domain(opt), TestBallCollision);
  }
  {
    DomainOptions opt = chord_options(0.5);
    opt.side = Side::Negative;  // 0 would land inside D
    CHECK_THROWS_AS(make_domain(opt), TestBallCollision);
  }
  {
    DomainOptions opt;
    opt.gamma = GammaDescriptor::circular_arc(cplx(3.0, 0.0), 0.45);
    CHECK_THROWS_AS(make_domain(opt), DomainValidationError);
  }
  {
    // Sampled arc whose endpoints are far from the unit circle.
    std::vector<cplx> pts;
    for (int i = 0; i <= 8; ++i) pts.emplace_back(0.5, -0.5 + i / 8.0);
    DomainOptions opt;
    opt.gamma = GammaDescriptor::sampled_arc(pts);
    opt.side = Side::Negative;
    CHECK_THROWS_AS(make_domain(opt), DomainValidationError);
  }
  // All of these are configuration errors for the CLI's exit-code mapping.
  CHECK_THROWS_AS(make_domain(chord_options(0.0)), ConfigError);
}

TEST_CASE("interior grid respects the margin and stays in D") {
  const DomainSpec spec = make_domain(chord_options(0.5));
  const auto pts = interior_grid(spec, 12, 1e-2);
  CHECK(pts.size() > 200);
  for (cplx z : pts) {
    CHECK(spec.on_d_side(spec.side_value(z)));
    CHECK(spec.dist_to_boundary(z) >= 1e-2 - 1e-12);
  }
}

TEST_CASE("probe points land in the annulus of D+ outside the test ball") {
  const DomainSpec spec = make_domain(chord_options(0.5));
  const auto pts = dplus_probes(spec, 6, 48, 1e-2, 0.3, 0.8);
  CHECK(pts.size() > 100);
  for (cplx z : pts) {
    CHECK(!spec.on_d_side(spec.side_value(z)));
    CHECK(std::abs(z) >= spec.test_ball_radius);
    CHECK(std::abs(z) <= 0.8 + 1e-12);
  }
}
