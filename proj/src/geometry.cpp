#include "cauchylens/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cauchylens/gauss.hpp"

namespace cauchylens {

namespace {

constexpr double two_pi = 2.0 * pi;

// Wrap x into [0, 2*pi).
double wrap2pi(double x) {
  double y = std::fmod(x, two_pi);
  if (y < 0.0) y += two_pi;
  return y;
}

// Is angle theta inside [lo, hi] (an interval of length < 2*pi)?
bool angle_in(double theta, double lo, double hi) {
  return lo + wrap2pi(theta - lo) <= hi + 1e-14;
}

cplx unit_dir(double phi) { return {std::cos(phi), std::sin(phi)}; }

// Positive ray hit p + t*e with the circle |z - c| = r; restrict the hit angle
// (about c) to [psi_lo, psi_hi] if bounded.  Returns +inf on a miss.
double ray_circle(cplx p, cplx e, cplx c, double r, bool bounded, double psi_lo,
                  double psi_hi) {
  const cplx beta = p - c;
  const double dot = beta.real() * e.real() + beta.imag() * e.imag();
  const double disc = dot * dot - (std::norm(beta) - r * r);
  if (disc < 0.0) return std::numeric_limits<double>::infinity();
  const double sq = std::sqrt(disc);
  for (double t : {-dot - sq, -dot + sq}) {
    if (t <= 1e-12) continue;
    if (bounded) {
      const cplx hit = p + t * e - c;
      if (!angle_in(std::arg(hit), psi_lo, psi_hi)) continue;
    }
    return t;
  }
  return std::numeric_limits<double>::infinity();
}

Spline2d build_spline(const std::vector<cplx>& pts) {
  const std::size_t n = pts.size();
  Spline2d sp;
  sp.u.resize(n);
  sp.u[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i)
    sp.u[i] = sp.u[i - 1] + std::abs(pts[i] - pts[i - 1]);
  const double total = sp.u.back();
  if (total <= 0.0) throw DomainValidationError("sampled arc has zero length");
  for (double& v : sp.u) v /= total;

  // Natural cubic spline: solve the tridiagonal system for second derivatives.
  auto fit = [&](auto value, std::vector<double>& a, std::vector<double>& b,
                 std::vector<double>& c, std::vector<double>& d) {
    std::vector<double> h(n - 1), rhs(n, 0.0), diag(n, 2.0), m(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) h[i] = sp.u[i + 1] - sp.u[i];
    std::vector<double> sub(n, 0.0), sup(n, 0.0);
    diag[0] = diag[n - 1] = 1.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      sub[i] = h[i - 1];
      diag[i] = 2.0 * (h[i - 1] + h[i]);
      sup[i] = h[i];
      rhs[i] = 6.0 * ((value(i + 1) - value(i)) / h[i] -
                      (value(i) - value(i - 1)) / h[i - 1]);
    }
    for (std::size_t i = 1; i < n; ++i) {
      const double w = sub[i] / diag[i - 1];
      diag[i] -= w * sup[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    m[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
      m[i] = (rhs[i] - sup[i] * m[i + 1]) / diag[i];

    a.resize(n - 1);
    b.resize(n - 1);
    c.resize(n - 1);
    d.resize(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      a[i] = value(i);
      c[i] = m[i] / 2.0;
      d[i] = (m[i + 1] - m[i]) / (6.0 * h[i]);
      b[i] = (value(i + 1) - value(i)) / h[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0;
    }
  };
  fit([&](std::size_t i) { return pts[i].real(); }, sp.ax, sp.bx, sp.cx, sp.dx);
  fit([&](std::size_t i) { return pts[i].imag(); }, sp.ay, sp.by, sp.cy, sp.dy);
  return sp;
}

std::size_t spline_segment(const Spline2d& sp, double s) {
  auto it = std::upper_bound(sp.u.begin(), sp.u.end(), s);
  std::size_t i = (it == sp.u.begin()) ? 0 : std::size_t(it - sp.u.begin()) - 1;
  return std::min(i, sp.u.size() - 2);
}

// Parameter of the point on the spline closest to z: coarse scan, then a
// ternary refinement of the bracketing interval.
double nearest_param(const Spline2d& sp, cplx z) {
  const int coarse = 256;
  double best_s = 0.0, best_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= coarse; ++i) {
    const double s = double(i) / coarse;
    const double d = std::abs(sp.eval(s) - z);
    if (d < best_d) {
      best_d = d;
      best_s = s;
    }
  }
  double lo = std::max(0.0, best_s - 1.0 / coarse);
  double hi = std::min(1.0, best_s + 1.0 / coarse);
  for (int it = 0; it < 60; ++it) {
    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    if (std::abs(sp.eval(m1) - z) < std::abs(sp.eval(m2) - z))
      hi = m2;
    else
      lo = m1;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

GammaDescriptor GammaDescriptor::chord(double offset) {
  GammaDescriptor g;
  g.kind = GammaKind::Chord;
  g.chord_offset = offset;
  return g;
}

GammaDescriptor GammaDescriptor::circular_arc(cplx center, double radius) {
  GammaDescriptor g;
  g.kind = GammaKind::CircularArc;
  g.arc_center = center;
  g.arc_radius = radius;
  return g;
}

GammaDescriptor GammaDescriptor::sampled_arc(std::vector<cplx> pts) {
  GammaDescriptor g;
  g.kind = GammaKind::SampledArc;
  g.samples = std::move(pts);
  return g;
}

cplx Spline2d::eval(double s) const {
  const std::size_t i = spline_segment(*this, s);
  const double t = s - u[i];
  return {ax[i] + t * (bx[i] + t * (cx[i] + t * dx[i])),
          ay[i] + t * (by[i] + t * (cy[i] + t * dy[i]))};
}

cplx Spline2d::deriv(double s) const {
  const std::size_t i = spline_segment(*this, s);
  const double t = s - u[i];
  return {bx[i] + t * (2.0 * cx[i] + t * 3.0 * dx[i]),
          by[i] + t * (2.0 * cy[i] + t * 3.0 * dy[i])};
}

double DomainSpec::side_value(cplx z) const {
  switch (gamma.kind) {
    case GammaKind::Chord:
      return z.real() - gamma.chord_offset;
    case GammaKind::CircularArc:
      return std::abs(z - gamma.arc_center) - gamma.arc_radius;
    case GammaKind::SampledArc: {
      // Signed side relative to the traversal direction at the nearest curve
      // point: left is positive.  Near the curve this is the signed distance.
      const double s = nearest_param(*spline, z);
      const cplx q = spline->eval(s);
      const cplx t = spline->deriv(s);
      return std::imag(std::conj(t / std::abs(t)) * (z - q));
    }
  }
  return 0.0;
}

GammaPoint DomainSpec::gamma_point(double s) const {
  switch (gamma.kind) {
    case GammaKind::Chord: {
      const double y = chord_halfspan * (2.0 * s - 1.0);
      return {cplx(gamma.chord_offset, y), cplx(0.0, 1.0), 2.0 * chord_halfspan};
    }
    case GammaKind::CircularArc: {
      const double psi = psi_lo + s * (psi_hi - psi_lo);
      const cplx e = unit_dir(psi);
      return {gamma.arc_center + gamma.arc_radius * e, cplx(0.0, 1.0) * e,
              gamma.arc_radius * (psi_hi - psi_lo)};
    }
    case GammaKind::SampledArc: {
      const cplx d = spline->deriv(s);
      const double sp = std::abs(d);
      return {spline->eval(s), d / sp, sp};
    }
  }
  return {};
}

cplx DomainSpec::gamma_outward_normal(double s) const {
  const GammaPoint gp = gamma_point(s);
  // side_value grows to the left of the tangent for the sampled convention and,
  // for the analytic kinds, in the direction of its gradient; express both as a
  // rotation of the tangent so the formula is uniform per kind.
  cplx grad;
  switch (gamma.kind) {
    case GammaKind::Chord:
      grad = {1.0, 0.0};
      break;
    case GammaKind::CircularArc: {
      const cplx r = gp.z - gamma.arc_center;
      grad = r / std::abs(r);
      break;
    }
    case GammaKind::SampledArc:
      grad = cplx(0.0, 1.0) * gp.tangent;  // left normal
      break;
  }
  const double sgn = (side == Side::Positive) ? -1.0 : 1.0;
  return sgn * grad;  // out of D = away from the D side of Gamma
}

double DomainSpec::dist_to_gamma(cplx z) const {
  switch (gamma.kind) {
    case GammaKind::Chord: {
      if (std::abs(z.imag()) <= chord_halfspan)
        return std::abs(z.real() - gamma.chord_offset);
      return std::min(std::abs(z - corner_a), std::abs(z - corner_b));
    }
    case GammaKind::CircularArc: {
      const cplx r = z - gamma.arc_center;
      if (angle_in(std::arg(r), psi_lo, psi_hi))
        return std::abs(std::abs(r) - gamma.arc_radius);
      return std::min(std::abs(z - corner_a), std::abs(z - corner_b));
    }
    case GammaKind::SampledArc:
      return std::abs(spline->eval(nearest_param(*spline, z)) - z);
  }
  return 0.0;
}

double DomainSpec::dist_to_outer_arc(cplx z) const {
  if (angle_in(std::arg(z), arc_lo, arc_hi))
    return std::abs(std::abs(z) - omega_radius);
  return std::min(std::abs(z - corner_a), std::abs(z - corner_b));
}

double DomainSpec::dist_to_boundary(cplx z) const {
  return std::min(dist_to_gamma(z), dist_to_outer_arc(z));
}

double DomainSpec::star_radius(double phi) const {
  const double base = star.front().phi0;
  const double w = base + wrap2pi(phi - base);
  const StarPiece* piece = &star.back();
  for (const StarPiece& p : star) {
    if (w <= p.phi1 + 1e-14) {
      piece = &p;
      break;
    }
  }
  const cplx e = unit_dir(phi);
  const double t_outer =
      ray_circle(pivot, e, cplx(0.0, 0.0), omega_radius, false, 0.0, 0.0);
  if (!piece->hits_gamma) return t_outer;

  switch (gamma.kind) {
    case GammaKind::Chord: {
      const double t = (gamma.chord_offset - pivot.real()) / e.real();
      return t;
    }
    case GammaKind::CircularArc:
      return ray_circle(pivot, e, gamma.arc_center, gamma.arc_radius, true,
                        psi_lo, psi_hi);
    case GammaKind::SampledArc: {
      // Bisect the side function along the ray.
      const double s_piv = side_value(pivot);
      double lo = 0.0, hi = t_outer;
      double f_hi = side_value(pivot + hi * e);
      if (f_hi * s_piv > 0.0) return t_outer;  // ray leaves through the arc
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (side_value(pivot + mid * e) * s_piv > 0.0)
          lo = mid;
        else
          hi = mid;
      }
      return 0.5 * (lo + hi);
    }
  }
  return t_outer;
}

DomainSpec make_domain(const DomainOptions& opt) {
  DomainSpec spec;
  spec.omega_radius = opt.omega_radius;
  spec.gamma = opt.gamma;
  spec.side = opt.side;
  const double R = opt.omega_radius;
  if (!(R > 0.0)) throw DomainValidationError("disc radius must be positive");

  switch (spec.gamma.kind) {
    case GammaKind::Chord: {
      const double h = spec.gamma.chord_offset;
      if (std::abs(h) >= R)
        throw DegenerateChord("chord offset |" + std::to_string(h) +
                              "| does not cut the disc of radius " +
                              std::to_string(R));
      spec.chord_halfspan = std::sqrt(R * R - h * h);
      spec.corner_a = {h, -spec.chord_halfspan};
      spec.corner_b = {h, spec.chord_halfspan};
      spec.gamma_len = 2.0 * spec.chord_halfspan;
      break;
    }
    case GammaKind::CircularArc: {
      const cplx c = spec.gamma.arc_center;
      const double rc = spec.gamma.arc_radius;
      const double d = std::abs(c);
      if (!(rc > 0.0))
        throw DomainValidationError("interface arc radius must be positive");
      if (d <= 1e-12 * R)
        throw DomainValidationError(
            "interface circle concentric with the disc; no transversal cut");
      if (!(std::abs(d - rc) < R && R < d + rc))
        throw DomainValidationError("interface circle does not cut the disc");
      // Intersections of |z| = R and |z - c| = rc, in the frame where c is on
      // the positive real axis.
      const double a = (R * R + d * d - rc * rc) / (2.0 * d);
      const double b = std::sqrt(std::max(0.0, R * R - a * a));
      const cplx rot = c / d;
      const cplx pa = cplx(a, -b) * rot;
      const cplx pb = cplx(a, b) * rot;
      double psi_a = std::arg(pa - c), psi_b = std::arg(pb - c);
      // Pick the sub-arc lying inside the disc.
      double lo = psi_a, hi = psi_a + wrap2pi(psi_b - psi_a);
      if (std::abs(c + rc * unit_dir(0.5 * (lo + hi))) > R) {
        lo = psi_b;
        hi = psi_b + two_pi - wrap2pi(psi_b - psi_a);
      }
      spec.psi_lo = lo;
      spec.psi_hi = hi;
      spec.corner_a = c + rc * unit_dir(lo);
      spec.corner_b = c + rc * unit_dir(hi);
      spec.gamma_len = rc * (hi - lo);
      break;
    }
    case GammaKind::SampledArc: {
      if (spec.gamma.samples.size() < 4)
        throw DomainValidationError("sampled arc needs at least 4 points");
      spec.spline = build_spline(spec.gamma.samples);
      spec.corner_a = spec.gamma.samples.front();
      spec.corner_b = spec.gamma.samples.back();
      GaussRule1d g8 = gauss_legendre(8);
      double len = 0.0;
      const std::size_t nseg = spec.spline->u.size() - 1;
      for (std::size_t i = 0; i < nseg; ++i) {
        const double ulo = spec.spline->u[i], uhi = spec.spline->u[i + 1];
        for (std::size_t k = 0; k < 8; ++k) {
          const double s = 0.5 * (ulo + uhi) + 0.5 * (uhi - ulo) * g8.x[k];
          len += 0.5 * (uhi - ulo) * g8.w[k] * std::abs(spec.spline->deriv(s));
        }
      }
      spec.gamma_len = len;
      break;
    }
  }

  for (cplx e : {spec.corner_a, spec.corner_b}) {
    if (std::abs(std::abs(e) - R) > 1e-6 * R)
      throw DomainValidationError("interface endpoints must lie on the disc boundary");
  }

  // Outer-arc interval: the circular arc bounding D.
  const double ta = std::arg(spec.corner_a), tb = std::arg(spec.corner_b);
  {
    double lo = ta, hi = ta + wrap2pi(tb - ta);
    double mid = 0.5 * (lo + hi);
    if (!spec.on_d_side(spec.side_value((R * (1.0 - 1e-9)) * unit_dir(mid)))) {
      lo = tb;
      hi = tb + two_pi - wrap2pi(tb - ta);
      mid = 0.5 * (lo + hi);
      if (!spec.on_d_side(spec.side_value((R * (1.0 - 1e-9)) * unit_dir(mid))))
        throw DomainValidationError("could not locate the outer arc of D");
    }
    spec.arc_lo = lo;
    spec.arc_hi = hi;
  }

  spec.dist0_gamma = spec.dist_to_gamma(cplx(0.0, 0.0));
  if (spec.dist0_gamma < 1e-9 * R) throw GammaThroughOrigin();
  if (spec.on_d_side(spec.side_value(cplx(0.0, 0.0))))
    throw TestBallCollision("expansion center 0 lies in D, not in D+");

  spec.test_ball_radius =
      opt.test_ball_radius > 0.0 ? opt.test_ball_radius : 0.5 * spec.dist0_gamma;
  if (spec.test_ball_radius >= spec.dist0_gamma)
    throw TestBallCollision("test ball of radius " +
                            std::to_string(spec.test_ball_radius) +
                            " reaches the interface curve");
  if (spec.test_ball_radius >= R)
    throw TestBallCollision("test ball does not fit inside the disc");

  spec.margin = opt.margin > 0.0 ? opt.margin : 1e-3 * R;

  // Star chart about an interior pivot of D.
  const cplx mid_gamma = spec.gamma_point(0.5).z;
  const cplx mid_arc = R * unit_dir(0.5 * (spec.arc_lo + spec.arc_hi));
  spec.pivot = 0.5 * (mid_gamma + mid_arc);
  if (!spec.on_d_side(spec.side_value(spec.pivot)) ||
      spec.dist_to_boundary(spec.pivot) < 0.02 * R)
    throw DomainValidationError("domain too thin for the star chart pivot");

  const double fa = std::arg(spec.corner_a - spec.pivot);
  const double fb = std::arg(spec.corner_b - spec.pivot);
  const double delta = wrap2pi(fb - fa);
  StarPiece p1{fa, fa + delta, false};
  StarPiece p2{fa + delta, fa + two_pi, false};
  // Decide which direction interval ends on Gamma by casting a test ray; the
  // star chart requires D star-shaped about the pivot, so verify consistency
  // on a sample of directions per piece.
  spec.star = {p1, p2};
  for (StarPiece& p : spec.star) {
    int gamma_hits = 0, checks = 0;
    for (int k = 1; k < 32; ++k) {
      const double phi = p.phi0 + (p.phi1 - p.phi0) * k / 32.0;
      const cplx e = unit_dir(phi);
      const double t_out =
          ray_circle(spec.pivot, e, cplx(0.0, 0.0), R, false, 0.0, 0.0);
      double t_gam = std::numeric_limits<double>::infinity();
      switch (spec.gamma.kind) {
        case GammaKind::Chord: {
          const double t = (spec.gamma.chord_offset - spec.pivot.real()) / e.real();
          if (t > 1e-12 &&
              std::abs(spec.pivot.imag() + t * e.imag()) <= spec.chord_halfspan)
            t_gam = t;
          break;
        }
        case GammaKind::CircularArc:
          t_gam = ray_circle(spec.pivot, e, spec.gamma.arc_center,
                             spec.gamma.arc_radius, true, spec.psi_lo, spec.psi_hi);
          break;
        case GammaKind::SampledArc: {
          const double sv = spec.side_value(spec.pivot);
          if (spec.side_value(spec.pivot + (t_out * (1.0 - 1e-9)) * e) * sv < 0.0)
            t_gam = 0.5 * t_out;  // existence only; the value is unused here
          break;
        }
      }
      ++checks;
      if (t_gam < t_out) ++gamma_hits;
    }
    if (gamma_hits != 0 && gamma_hits != checks)
      throw DomainValidationError("domain is not star-shaped about the pivot");
    p.hits_gamma = gamma_hits == checks;
  }
  if (spec.star[0].hits_gamma == spec.star[1].hits_gamma)
    throw DomainValidationError("star chart could not separate the two boundary parts");

  return spec;
}

PointClass classify_point(const DomainSpec& spec, cplx z, double margin) {
  const double m = margin > 0.0 ? margin : spec.margin;
  if (spec.dist_to_boundary(z) < m) return PointClass::NEAR_BOUNDARY;
  if (std::abs(z) >= spec.omega_radius) return PointClass::OUTSIDE;
  if (spec.on_d_side(spec.side_value(z))) return PointClass::IN_D;
  if (std::abs(z) < spec.test_ball_radius) return PointClass::IN_OMEGA_TEST_BALL;
  return PointClass::IN_DPLUS;
}

std::vector<cplx> interior_grid(const DomainSpec& spec, int resolution, double margin) {
  if (resolution < 2) throw GridTooCoarse("interior grid resolution must be >= 2");
  const double m = margin > 0.0 ? margin : spec.margin;
  std::vector<cplx> pts;
  const int n_phi = 4 * resolution, n_t = resolution;
  pts.reserve(std::size_t(n_phi) * n_t);
  const double base = spec.star.front().phi0;
  for (int j = 0; j < n_phi; ++j) {
    const double phi = base + two_pi * (j + 0.5) / n_phi;
    for (int i = 0; i < n_t; ++i) {
      const double t = (i + 0.5) / n_t;
      const cplx z = spec.star_point(phi, t);
      if (spec.dist_to_boundary(z) >= m) pts.push_back(z);
    }
  }
  if (pts.empty()) throw GridTooCoarse("interior grid is empty at this margin");
  return pts;
}

std::vector<cplx> dplus_probes(const DomainSpec& spec, int n_radial, int n_angular,
                               double margin, double r_min, double r_max) {
  std::vector<cplx> pts;
  for (int i = 0; i < n_radial; ++i) {
    const double r = r_min + (r_max - r_min) * (i + 0.5) / n_radial;
    for (int j = 0; j < n_angular; ++j) {
      const double th = two_pi * (j + 0.5) / n_angular;
      const cplx z = r * unit_dir(th);
      if (classify_point(spec, z, margin) == PointClass::IN_DPLUS) pts.push_back(z);
    }
  }
  return pts;
}

}  // namespace cauchylens
