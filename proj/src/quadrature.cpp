#include "cauchylens/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace cauchylens {

namespace {

constexpr double two_pi = 2.0 * pi;
constexpr int kPanelOrder = 8;

double wrap2pi(double x) {
  double y = std::fmod(x, two_pi);
  if (y < 0.0) y += two_pi;
  return y;
}

// Panel breakpoints on [0, 1] with quadratic clustering at both endpoints.
std::vector<double> clustered_breaks(int panels) {
  std::vector<double> b(panels + 1);
  for (int j = 0; j <= panels; ++j)
    b[j] = 0.5 * (1.0 - std::cos(pi * j / panels));
  return b;
}

void append_gamma_nodes(const DomainSpec& spec, int panels, BoundaryRule& out) {
  const GaussRule1d g = gauss_legendre(kPanelOrder);
  const std::vector<double> brk = clustered_breaks(panels);
  for (int p = 0; p < panels; ++p) {
    const double mid = 0.5 * (brk[p] + brk[p + 1]);
    const double half = 0.5 * (brk[p + 1] - brk[p]);
    for (int k = 0; k < kPanelOrder; ++k) {
      const double s = mid + half * g.x[k];
      const GammaPoint gp = spec.gamma_point(s);
      const cplx n = spec.gamma_outward_normal(s);
      BoundaryNode node;
      node.z = gp.z;
      node.w = half * g.w[k] * gp.speed;
      node.normal = n;
      node.tangent = cplx(0.0, 1.0) * n;  // counterclockwise around D
      out.nodes.push_back(node);
      out.length += node.w;
    }
  }
}

void append_arc_nodes(const DomainSpec& spec, int panels, BoundaryRule& out) {
  const GaussRule1d g = gauss_legendre(kPanelOrder);
  const std::vector<double> brk = clustered_breaks(panels);
  const double R = spec.omega_radius;
  for (int p = 0; p < panels; ++p) {
    const double mid = 0.5 * (brk[p] + brk[p + 1]);
    const double half = 0.5 * (brk[p + 1] - brk[p]);
    for (int k = 0; k < kPanelOrder; ++k) {
      const double s = mid + half * g.x[k];
      const double th = spec.arc_lo + s * (spec.arc_hi - spec.arc_lo);
      const cplx e{std::cos(th), std::sin(th)};
      BoundaryNode node;
      node.z = R * e;
      node.w = half * g.w[k] * R * (spec.arc_hi - spec.arc_lo);
      node.normal = e;                    // radially out of the disc = out of D
      node.tangent = cplx(0.0, 1.0) * e;  // counterclockwise
      out.nodes.push_back(node);
      out.length += node.w;
    }
  }
}

}  // namespace

BoundaryPart parse_boundary_part(const std::string& name) {
  if (name == "gamma") return BoundaryPart::GAMMA;
  if (name == "arc") return BoundaryPart::OUTER_ARC;
  if (name == "full") return BoundaryPart::FULL;
  throw UnknownPart("unknown boundary part '" + name + "' (expected gamma, arc or full)");
}

BoundaryRule boundary_rule(const DomainSpec& spec, BoundaryPart part, int n_target) {
  if (n_target < 2 * kPanelOrder)
    throw QuadratureMismatch("boundary rule needs at least " +
                             std::to_string(2 * kPanelOrder) + " nodes");
  BoundaryRule rule;
  const double arc_len = spec.omega_radius * (spec.arc_hi - spec.arc_lo);
  switch (part) {
    case BoundaryPart::GAMMA:
      append_gamma_nodes(spec, std::max(2, n_target / kPanelOrder), rule);
      break;
    case BoundaryPart::OUTER_ARC:
      append_arc_nodes(spec, std::max(2, n_target / kPanelOrder), rule);
      break;
    case BoundaryPart::FULL: {
      const double total = arc_len + spec.gamma_len;
      const int panels = std::max(4, n_target / kPanelOrder);
      const int arc_panels = std::max(
          2, int(std::lround(panels * arc_len / total)));
      const int gamma_panels = std::max(2, panels - arc_panels);
      append_arc_nodes(spec, arc_panels, rule);
      append_gamma_nodes(spec, gamma_panels, rule);
      break;
    }
  }
  return rule;
}

void AreaRule::chart_coords(const DomainSpec& spec, cplx z, double& phi,
                            double& t) const {
  const cplx d = z - spec.pivot;
  const double base = phi_breaks.front();
  phi = base + wrap2pi(std::arg(d) - base);
  t = std::abs(d) / spec.star_radius(phi);
}

int AreaRule::locate_cell(const DomainSpec& spec, cplx z) const {
  double phi, t;
  chart_coords(spec, z, phi, t);
  if (t > 1.0) return -1;
  auto hi_phi = std::upper_bound(phi_breaks.begin(), phi_breaks.end(), phi);
  int jphi = int(hi_phi - phi_breaks.begin()) - 1;
  jphi = std::clamp(jphi, 0, n_phi - 1);
  auto hi_t = std::upper_bound(t_breaks.begin(), t_breaks.end(), t);
  int it = int(hi_t - t_breaks.begin()) - 1;
  it = std::clamp(it, 0, n_t - 1);
  return cell_index(jphi, it);
}

AreaRule area_rule(const DomainSpec& spec, int resolution, int q) {
  if (resolution < 4) throw QuadratureMismatch("area resolution must be >= 4");
  if (q < 2 || q > 8) throw QuadratureMismatch("area cell order must be in [2, 8]");

  AreaRule rule;
  rule.q = q;
  rule.n_t = resolution;
  rule.cell_gauss = gauss_legendre(q);

  // Split the full angle range at the two corner directions so every cell's
  // radial function is smooth.
  const double base = spec.star.front().phi0;
  const int n_phi_total = 4 * resolution;
  rule.phi_breaks.push_back(base);
  for (const StarPiece& piece : spec.star) {
    const double width = piece.phi1 - piece.phi0;
    const int cells = std::max(2, int(std::lround(n_phi_total * width / two_pi)));
    for (int j = 1; j <= cells; ++j)
      rule.phi_breaks.push_back(piece.phi0 + width * j / cells);
  }
  rule.n_phi = int(rule.phi_breaks.size()) - 1;

  rule.t_breaks.resize(resolution + 1);
  for (int i = 0; i <= resolution; ++i)
    rule.t_breaks[i] = double(i) / resolution;

  rule.nodes.resize(std::size_t(rule.n_phi) * rule.n_t * q * q);
  for (int jphi = 0; jphi < rule.n_phi; ++jphi) {
    const double p0 = rule.phi_breaks[jphi], p1 = rule.phi_breaks[jphi + 1];
    for (int it = 0; it < rule.n_t; ++it) {
      const double t0 = rule.t_breaks[it], t1 = rule.t_breaks[it + 1];
      const int cell = rule.cell_index(jphi, it);
      for (int a = 0; a < q; ++a) {
        const double phi = 0.5 * (p0 + p1) + 0.5 * (p1 - p0) * rule.cell_gauss.x[a];
        const double rho = spec.star_radius(phi);
        for (int b = 0; b < q; ++b) {
          const double t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * rule.cell_gauss.x[b];
          WeightedNode node;
          node.z = spec.pivot + (t * rho) * cplx(std::cos(phi), std::sin(phi));
          node.w = 0.25 * (p1 - p0) * (t1 - t0) * rule.cell_gauss.w[a] *
                   rule.cell_gauss.w[b] * t * rho * rho;
          rule.nodes[rule.node_index(cell, a, b)] = node;
          rule.total_area += node.w;
        }
      }
    }
  }
  return rule;
}

std::vector<WeightedNode> disc_quadrature(cplx center, double radius, int n_r,
                                          int n_theta) {
  if (n_r < 1 || n_theta < 4)
    throw QuadratureMismatch("disc rule needs n_r >= 1 and n_theta >= 4");
  const GaussRule1d g = gauss_legendre(n_r);
  std::vector<WeightedNode> nodes;
  nodes.reserve(std::size_t(n_r) * n_theta);
  for (int i = 0; i < n_r; ++i) {
    const double r = 0.5 * radius * (g.x[i] + 1.0);
    const double wr = 0.5 * radius * g.w[i] * r;
    for (int j = 0; j < n_theta; ++j) {
      const double th = two_pi * j / n_theta;
      nodes.push_back({center + r * cplx(std::cos(th), std::sin(th)),
                       wr * two_pi / n_theta});
    }
  }
  return nodes;
}

}  // namespace cauchylens
