#include "cauchylens/laplace.hpp"

#include <algorithm>
#include <cmath>

#include "cauchylens/gauss.hpp"

namespace cauchylens {

namespace {

// Derivative weights at nodes[center] for the Lagrange interpolant through
// all of nodes: the matching row of the differentiation matrix.
std::vector<double> derivative_row(const std::vector<double>& nodes, int center) {
  const auto matrix = lagrange_diff_matrix(nodes);
  const std::size_t k = nodes.size();
  std::vector<double> row(k);
  for (std::size_t j = 0; j < k; ++j) row[j] = matrix[std::size_t(center) * k + j];
  return row;
}

struct SegmentIntegral {
  cplx value;
  double sup = 0.0;  // max |g| over the nodes
};

constexpr double kPanelLength = 0.05;  // panel length for the path quadrature

// Integrates g dz over the straight segment [a, b].  When `check` is set,
// every quadrature node must classify as inside D (the tolerance band around
// the boundary counts only within `loose_radius` of a segment endpoint, which
// covers the sanctioned bridge region next to the interface).
SegmentIntegral integrate_segment(const DomainSpec& spec, const ScalarField& g,
                                  cplx a, cplx b, bool check, bool& ok,
                                  double loose_radius = 0.0) {
  SegmentIntegral out{cplx(0.0, 0.0), 0.0};
  ok = true;
  const cplx span = b - a;
  const double len = std::abs(span);
  if (len == 0.0) return out;
  const int panels = std::max(1, int(std::ceil(len / kPanelLength)));
  static const GaussRule1d gauss = gauss_legendre(8);
  for (int p = 0; p < panels && ok; ++p) {
    const double t0 = double(p) / panels, t1 = double(p + 1) / panels;
    for (std::size_t k = 0; k < gauss.x.size(); ++k) {
      const double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * gauss.x[k];
      const cplx z = a + t * span;
      if (check) {
        const PointClass cls = classify_point(spec, z);
        const bool near_end =
            std::min(std::abs(z - a), std::abs(z - b)) <= loose_radius;
        if (!(cls == PointClass::IN_D ||
              (cls == PointClass::NEAR_BOUNDARY && near_end))) {
          ok = false;
          break;
        }
      }
      const cplx gz = g(z);
      out.sup = std::max(out.sup, std::abs(gz));
      out.value += 0.5 * (t1 - t0) * gauss.w[k] * gz * span;
    }
  }
  return out;
}

}  // namespace

CauchyData to_holomorphic(const BoundaryRule& gamma_rule,
                          const ClassicalCauchyData& classical,
                          int stencil_width) {
  const std::size_t n = gamma_rule.nodes.size();
  if (n < 16) throw TooFewSamples("tangential differentiation needs at least 16 interface samples");
  if (classical.u.size() != n || classical.dudn.size() != n)
    throw QuadratureMismatch("classical data arrays must match the interface rule's node count");
  if (stencil_width < 3) throw ConfigError("differentiation stencil needs at least 3 nodes");
  const int width = std::min<int>(stencil_width, int(n));

  // Chordal arc-length parameter of the node sequence.
  std::vector<double> sigma(n, 0.0);
  for (std::size_t i = 1; i < n; ++i)
    sigma[i] = sigma[i - 1] + std::abs(gamma_rule.nodes[i].z - gamma_rule.nodes[i - 1].z);

  CauchyData out;
  out.u0.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const int lo = std::clamp(int(i) - width / 2, 0, int(n) - width);
    std::vector<double> window(sigma.begin() + lo, sigma.begin() + lo + width);
    const auto weights = derivative_row(window, int(i) - lo);

    double du = 0.0;
    cplx dz(0.0, 0.0);
    for (int j = 0; j < width; ++j) {
      du += weights[j] * classical.u[std::size_t(lo + j)];
      dz += weights[j] * gamma_rule.nodes[std::size_t(lo + j)].z;
    }
    // Differentiating the positions with the same weights yields dz/dsigma,
    // whose modulus absorbs the chordal-vs-true parameter distortion and
    // whose direction orients the tangent, so the frame below is orthonormal
    // regardless of the traversal direction of the node sequence.
    const double speed = std::abs(dz);
    const cplx that = dz / speed;
    const cplx grad = (du / speed) * that +
                      classical.dudn[i] * gamma_rule.nodes[i].normal;
    out.u0[i] = std::conj(grad);
  }
  return out;
}

HarmonicReconstruction from_holomorphic(const DomainSpec& spec, const ScalarField& g,
                                        cplx anchor, double anchor_value,
                                        const std::vector<cplx>& grid,
                                        const RealField& reference,
                                        par::Mode mode) {
  HarmonicReconstruction out;
  out.grid = grid;
  out.u.assign(grid.size(), 0.0);

  const double bridge = 0.05 * spec.omega_radius;
  const cplx toward_pivot = spec.pivot - anchor;
  const double pivot_dist = std::abs(toward_pivot);
  if (pivot_dist == 0.0)
    throw PathEscapesDomain("anchor coincides with the star-chart pivot");
  const cplx entry = anchor + std::min(bridge, 0.5 * pivot_dist) *
                              (toward_pivot / pivot_dist);

  // Shared first leg off the interface.  Its start sits on the boundary, so
  // the tolerance band is allowed along the whole (short) segment.
  bool ok = true;
  const SegmentIntegral off_interface = integrate_segment(
      spec, g, anchor, entry, true, ok, std::abs(entry - anchor) + spec.margin);
  if (!ok)
    throw PathEscapesDomain("bridge from the anchor into D leaves the domain");
  const SegmentIntegral entry_to_pivot =
      integrate_segment(spec, g, entry, spec.pivot, true, ok);
  if (!ok)
    throw PathEscapesDomain("segment from the bridge point to the pivot leaves the domain");

  double g_sup = std::max(off_interface.sup, entry_to_pivot.sup);
  std::vector<cplx> path_integral(grid.size());
  std::vector<double> sups(grid.size(), 0.0);
  std::vector<char> failed(grid.size(), 0);

  par::for_index(grid.size(), mode, [&](std::size_t i) {
    bool direct_ok = true;
    SegmentIntegral leg =
        integrate_segment(spec, g, entry, grid[i], true, direct_ok);
    if (direct_ok) {
      path_integral[i] = off_interface.value + leg.value;
      sups[i] = leg.sup;
      return;
    }
    // Waypoint route through the pivot; D is star-shaped about it.
    bool pivot_ok = true;
    leg = integrate_segment(spec, g, spec.pivot, grid[i], true, pivot_ok);
    if (!pivot_ok) {
      failed[i] = 1;
      return;
    }
    path_integral[i] = off_interface.value + entry_to_pivot.value + leg.value;
    sups[i] = leg.sup;
  });

  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (failed[i])
      throw PathEscapesDomain("no interior path to (" + std::to_string(grid[i].real()) +
                              ", " + std::to_string(grid[i].imag()) + ")");
    out.u[i] = anchor_value + path_integral[i].real();
    g_sup = std::max(g_sup, sups[i]);
  }

  // Path independence: closed loops over triangles (entry, pivot, grid
  // point) should integrate to zero by holomorphy; triangles with a leg
  // outside D are skipped.
  double loop_residual = 0.0;
  const std::size_t stride = std::max<std::size_t>(1, grid.size() / 6);
  for (std::size_t i = 0; i < grid.size(); i += stride) {
    bool a_ok = true, b_ok = true, c_ok = true;
    const SegmentIntegral ab =
        integrate_segment(spec, g, entry, spec.pivot, true, a_ok);
    const SegmentIntegral bc =
        integrate_segment(spec, g, spec.pivot, grid[i], true, b_ok);
    const SegmentIntegral ca =
        integrate_segment(spec, g, grid[i], entry, true, c_ok);
    if (!(a_ok && b_ok && c_ok)) continue;
    loop_residual =
        std::max(loop_residual, std::abs(ab.value + bc.value + ca.value));
  }

  out.g_sup = g_sup;
  out.loop_residual = loop_residual;
  if (reference) {
    out.has_reference = true;
    out.reference.resize(grid.size());
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out.reference[i] = reference(grid[i]);
      const double err = std::abs(out.u[i] - out.reference[i]);
      out.sup_error = std::max(out.sup_error, err);
      sum_sq += err * err;
    }
    out.rms_error = grid.empty() ? 0.0 : std::sqrt(sum_sq / double(grid.size()));
  }
  return out;
}

}  // namespace cauchylens
