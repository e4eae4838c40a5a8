#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "cauchylens/common.hpp"

namespace cauchylens {

// ---------------------------------------------------------------------------
// Lens domains: the disc Omega = B(0, R) is cut by an interface curve Gamma
// (endpoints on the circle) into D (carries the data) and D+ (contains the
// expansion center 0 and the test ball omega = B(0, r_test)).
// ---------------------------------------------------------------------------

enum class GammaKind { Chord, CircularArc, SampledArc };

struct GammaDescriptor {
  GammaKind kind = GammaKind::Chord;
  double chord_offset = 0.5;   // chord { Re z = offset }
  cplx arc_center{0.0, 0.0};   // circular arc: piece of |z - center| = arc_radius
  double arc_radius = 0.0;
  std::vector<cplx> samples;   // sampled smooth arc, ordered, endpoints on the circle

  static GammaDescriptor chord(double offset);
  static GammaDescriptor circular_arc(cplx center, double radius);
  static GammaDescriptor sampled_arc(std::vector<cplx> pts);
};

// Which component of Omega \ Gamma is D.  The sign refers to the descriptor's
// side function: chord -> Re z - offset, circular arc -> |z - center| - radius,
// sampled arc -> left of the traversal direction is positive.
enum class Side { Positive, Negative };

struct DomainOptions {
  double omega_radius = 1.0;
  GammaDescriptor gamma = GammaDescriptor::chord(0.5);
  Side side = Side::Positive;
  double test_ball_radius = -1.0;  // <0: default 0.5 * dist(0, Gamma)
  double margin = -1.0;            // <0: default 1e-3 * omega_radius
};

enum class PointClass { IN_D, IN_DPLUS, IN_OMEGA_TEST_BALL, NEAR_BOUNDARY, OUTSIDE };

struct GammaPoint {
  cplx z;
  cplx tangent;  // unit, direction of increasing parameter
  double speed;  // |dz/ds| for s in [0,1]
};

// Natural cubic spline through 2-d samples, chord-length parametrised to [0,1].
struct Spline2d {
  std::vector<double> u;                 // knots in [0,1]
  std::vector<double> ax, bx, cx, dx;    // per-segment cubics for x
  std::vector<double> ay, by, cy, dy;    // per-segment cubics for y
  cplx eval(double s) const;
  cplx deriv(double s) const;
};

struct StarPiece {
  double phi0, phi1;  // contiguous direction interval as seen from the pivot
  bool hits_gamma;    // rays in this interval end on Gamma, else on the outer arc
};

struct DomainSpec {
  double omega_radius = 1.0;
  GammaDescriptor gamma;
  Side side = Side::Positive;
  double test_ball_radius = 0.0;
  double margin = 0.0;

  cplx corner_a, corner_b;     // Gamma endpoints, gamma_point(0) and gamma_point(1)
  double arc_lo = 0.0, arc_hi = 0.0;  // outer-arc angle interval (arc_lo < arc_hi)
  double chord_halfspan = 0.0;        // chord only
  double psi_lo = 0.0, psi_hi = 0.0;  // circular arc only: angles about arc_center
  cplx pivot;                  // interior point of D, center of the star chart
  std::vector<StarPiece> star; // covers [base, base + 2*pi)
  double gamma_len = 0.0;
  double dist0_gamma = 0.0;    // dist(0, closure(Gamma))

  std::optional<Spline2d> spline;  // sampled-arc representation

  // Signed side function of the descriptor (see Side above).
  double side_value(cplx z) const;
  bool on_d_side(double side_val) const {
    return side == Side::Positive ? side_val > 0.0 : side_val < 0.0;
  }

  GammaPoint gamma_point(double s) const;  // s in [0,1]
  cplx gamma_outward_normal(double s) const;  // unit, out of D

  double dist_to_gamma(cplx z) const;
  double dist_to_outer_arc(cplx z) const;
  double dist_to_boundary(cplx z) const;  // boundary of D

  // Star chart: length of the ray from the pivot in direction phi up to the
  // boundary of D.
  double star_radius(double phi) const;
  cplx star_point(double phi, double t) const {  // t in [0,1]
    return pivot + t * star_radius(phi) * cplx(std::cos(phi), std::sin(phi));
  }
};

DomainSpec make_domain(const DomainOptions& opt);

PointClass classify_point(const DomainSpec& spec, cplx z, double margin = -1.0);

// Deterministic point sets.
std::vector<cplx> interior_grid(const DomainSpec& spec, int resolution, double margin);
std::vector<cplx> dplus_probes(const DomainSpec& spec, int n_radial, int n_angular,
                               double margin, double r_min, double r_max);

}  // namespace cauchylens
