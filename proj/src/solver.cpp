#include "cauchylens/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cauchylens/kernels.hpp"

namespace cauchylens {

BasisView basis_view(const AnalyticBasis& basis) {
  BasisView v;
  v.size = basis.n_max;
  v.omega_radius = basis.omega_radius;
  v.test_radius = basis.test_radius;
  v.kind = "analytic";
  v.eval = [basis](int nu, cplx z) { return basis.eval(nu, z); };
  v.lambda = [basis](int nu) { return basis.lambda(nu); };
  v.poly.resize(std::size_t(basis.n_max));
  for (int nu = 1; nu <= basis.n_max; ++nu) {
    auto& row = v.poly[std::size_t(nu - 1)];
    row.assign(std::size_t(nu), cplx(0.0));
    row.back() = basis.beta(nu);
  }
  return v;
}

BasisView basis_view(const NumericBasis& basis) {
  BasisView v;
  v.size = basis.n_max;
  v.omega_radius = basis.omega_radius;
  v.test_radius = basis.test_radius;
  v.kind = "numeric";
  v.eval = [basis](int nu, cplx z) { return basis.eval(nu - 1, z); };
  v.lambda = [basis](int nu) { return basis.lambda[std::size_t(nu - 1)]; };
  v.poly.resize(std::size_t(basis.n_max));
  for (int k = 0; k < basis.n_max; ++k) {
    auto& row = v.poly[std::size_t(k)];
    row.assign(basis.coef[std::size_t(k)].size(), cplx(0.0));
    for (std::size_t j = 0; j < row.size(); ++j)
      row[j] = basis.coef[std::size_t(k)][j] * basis.mono_scale[j];
  }
  return v;
}

// ---------------------------------------------------------------------------
// PotentialField
// ---------------------------------------------------------------------------

PotentialField::PotentialField(const DomainSpec& spec, const BoundaryRule& gamma_rule,
                               std::vector<cplx> u0_at_nodes, const AreaPotential* source)
    : spec_(&spec), gamma_(&gamma_rule), u0_(std::move(u0_at_nodes)), source_(source) {
  if (!u0_.empty() && u0_.size() != gamma_->nodes.size())
    throw QuadratureMismatch("boundary data carries " + std::to_string(u0_.size()) +
                             " samples for a rule with " +
                             std::to_string(gamma_->nodes.size()) + " nodes");
}

cplx PotentialField::value(cplx z, EvalPolicy policy, int truncation) const {
  cplx out = 0.0;
  if (!u0_.empty()) out += boundary_potential(*gamma_, u0_, z, truncation);
  if (source_) out += source_->value(z, policy, truncation);
  return out;
}

std::vector<cplx> PotentialField::values(const std::vector<cplx>& points,
                                         EvalPolicy policy, int truncation,
                                         par::Mode mode) const {
  std::vector<cplx> out(points.size(), cplx(0.0));
  if (!u0_.empty()) out = boundary_potential_many(*gamma_, u0_, points, truncation, mode);
  if (source_) {
    const std::vector<cplx> t = source_->values(points, policy, truncation, mode);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += t[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Coefficients
// ---------------------------------------------------------------------------

CoefficientSeries compute_coefficients(const std::vector<cplx>& F_at_nodes,
                                       const BasisView& basis,
                                       const std::vector<WeightedNode>& omega_quad,
                                       int n_terms) {
  if (n_terms < 1) throw ConfigError("coefficient count must be positive");
  if (n_terms > basis.size)
    throw BasisTooSmall("requested " + std::to_string(n_terms) +
                        " coefficients from a basis of size " +
                        std::to_string(basis.size));
  if (F_at_nodes.size() != omega_quad.size())
    throw QuadratureMismatch("field carries " + std::to_string(F_at_nodes.size()) +
                             " samples for a test-ball rule with " +
                             std::to_string(omega_quad.size()) + " nodes");

  CoefficientSeries series;
  series.basis = basis;
  series.c.resize(std::size_t(n_terms));
  series.partial_sums.resize(std::size_t(n_terms));
  double running = 0.0;
  for (int nu = 1; nu <= n_terms; ++nu) {
    cplx inner = 0.0;
    for (std::size_t k = 0; k < omega_quad.size(); ++k)
      inner += omega_quad[k].w * F_at_nodes[k] * std::conj(basis.eval(nu, omega_quad[k].z));
    const double lam = basis.lambda(nu);
    if (!(lam > 0.0))
      throw NumericalError("test-ball norm of basis element " + std::to_string(nu) +
                           " is not positive");
    const cplx c = inner / lam;
    series.c[std::size_t(nu - 1)] = c;
    running += std::norm(c);
    series.partial_sums[std::size_t(nu - 1)] = running;
  }
  return series;
}

CoefficientSeries compute_coefficients(const ScalarField& F_plus, const BasisView& basis,
                                       const std::vector<WeightedNode>& omega_quad,
                                       int n_terms) {
  std::vector<cplx> values(omega_quad.size());
  for (std::size_t k = 0; k < omega_quad.size(); ++k) values[k] = F_plus(omega_quad[k].z);
  return compute_coefficients(values, basis, omega_quad, n_terms);
}

CoefficientSeries compute_coefficients(const PotentialField& F_plus, const BasisView& basis,
                                       const std::vector<WeightedNode>& omega_quad,
                                       int n_terms, par::Mode mode) {
  std::vector<cplx> points(omega_quad.size());
  for (std::size_t k = 0; k < omega_quad.size(); ++k) points[k] = omega_quad[k].z;
  return compute_coefficients(F_plus.values(points, EvalPolicy::Auto, 0, mode), basis,
                              omega_quad, n_terms);
}

namespace {

void check_series_request(const BasisView& basis, int n_terms) {
  if (n_terms < 1) throw ConfigError("coefficient count must be positive");
  if (n_terms > basis.size)
    throw BasisTooSmall("requested " + std::to_string(n_terms) +
                        " coefficients from a basis of size " +
                        std::to_string(basis.size));
  if (basis.poly.size() < std::size_t(n_terms))
    throw ConfigError("basis view carries no polynomial table; build it with basis_view()");
}

// Highest monomial degree feeding the first n_terms elements.
std::size_t mode_count(const BasisView& basis, int n_terms) {
  std::size_t n_modes = 0;
  for (int k = 0; k < n_terms; ++k)
    n_modes = std::max(n_modes, basis.poly[std::size_t(k)].size());
  return n_modes;
}

// Adds one source node's contribution to the per-mode sums
// S_m += factor * zeta^-(m+1), with the inverse powers built incrementally.
void accumulate_modes(std::vector<xcplx>& S, const xcplx& zeta, const xcplx& factor) {
  const xcplx izeta = xinv(zeta);
  xcplx p = izeta;
  for (auto& s : S) {
    s += factor * p;
    p = p * izeta;
  }
}

// c_nu from the per-mode source sums: c_nu = (1/lambda_nu) *
// sum_m conj(a_num) * (pi r^(2(m+1))/(m+1)) * S_m for b_nu = sum a_num z^m.
CoefficientSeries mix_mode_sums(const BasisView& basis, int n_terms,
                                const std::vector<xcplx>& S) {
  // Mode weights pi r^(2(m+1)) / (m+1), kept in extended precision because
  // they underflow double range together with lambda_nu for deep modes.
  const xreal r2 = xreal(basis.test_radius) * xreal(basis.test_radius);
  std::vector<xreal> mode_weight(S.size());
  xreal rpow = kXPi * r2;
  for (std::size_t m = 0; m < S.size(); ++m) {
    mode_weight[m] = rpow / xreal(double(m + 1));
    rpow *= r2;
  }

  CoefficientSeries series;
  series.basis = basis;
  series.c.resize(std::size_t(n_terms));
  series.partial_sums.resize(std::size_t(n_terms));
  double running = 0.0;
  for (int nu = 1; nu <= n_terms; ++nu) {
    const auto& row = basis.poly[std::size_t(nu - 1)];
    xcplx acc;
    for (std::size_t m = 0; m < row.size(); ++m) {
      if (row[m] == cplx(0.0)) continue;
      acc += xcplx(std::conj(row[m])) * S[m] * mode_weight[m];
    }
    const double lam = basis.lambda(nu);
    if (!(lam > 0.0))
      throw NumericalError("test-ball norm of basis element " + std::to_string(nu) +
                           " is not positive");
    const cplx c = to_double(acc * (xreal(1) / xreal(lam)));
    series.c[std::size_t(nu - 1)] = c;
    running += std::norm(c);
    series.partial_sums[std::size_t(nu - 1)] = running;
  }
  return series;
}

// -i / (2 pi), the boundary potential's prefactor 1/(2 pi i).
xcplx boundary_prefactor() { return xcplx(0, xreal(-1) / (2 * kXPi)); }

void add_area_mode_sums(std::vector<xcplx>& S, const AreaPotential& src) {
  const AreaRule& rule = src.rule();
  const std::vector<cplx>& f = src.density();
  const xreal neg_inv_pi = xreal(-1) / kXPi;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k)
    accumulate_modes(S, xcplx(rule.nodes[k].z),
                     xcplx(rule.nodes[k].w * f[k]) * neg_inv_pi);
}

}  // namespace

CoefficientSeries compute_coefficients_regrouped(const PotentialField& F_plus,
                                                 const BasisView& basis,
                                                 int n_terms) {
  check_series_request(basis, n_terms);

  // Per-mode source sums S_m = (1/(2 pi i)) sum_Gamma w tau u0 zeta^-(m+1)
  //                          - (1/pi)      sum_D     w f      zeta^-(m+1),
  // the exact regrouping of the test-ball inner products of the potential:
  // projecting the Cauchy kernel y -> 1/(zeta - y) onto the monomial y^m over
  // the ball B(0, r) gives (pi r^(2m+2)/(m+1)) zeta^-(m+1) whenever
  // |zeta| > r, which holds for every source location here.
  std::vector<xcplx> S(mode_count(basis, n_terms));
  const BoundaryRule& gamma = F_plus.gamma_rule();
  const std::vector<cplx>& u0 = F_plus.boundary_density();
  if (!u0.empty()) {
    const xcplx pref = boundary_prefactor();
    for (std::size_t k = 0; k < gamma.nodes.size(); ++k) {
      const auto& node = gamma.nodes[k];
      accumulate_modes(S, xcplx(node.z),
                       xcplx(node.w * node.tangent * u0[k]) * pref);
    }
  }
  if (const AreaPotential* src = F_plus.source()) add_area_mode_sums(S, *src);
  return mix_mode_sums(basis, n_terms, S);
}

// ---------------------------------------------------------------------------
// Solvability
// ---------------------------------------------------------------------------

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::SOLVABLE: return "SOLVABLE";
    case Verdict::NOT_SOLVABLE: return "NOT_SOLVABLE";
    case Verdict::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

SolvabilityReport solvability_indicator(const CoefficientSeries& series,
                                        const SolvabilityPolicy& policy) {
  const int n = int(series.c.size());
  if (n < policy.min_terms)
    throw TooFewTerms("verdict needs at least " + std::to_string(policy.min_terms) +
                      " coefficients, got " + std::to_string(n));

  SolvabilityReport rep;
  rep.policy = policy;
  rep.terms = n;
  rep.window_lo = n / 2;

  const double s_n = series.partial_sums[std::size_t(n - 1)];
  const double s_half = series.partial_sums[std::size_t(rep.window_lo - 1)];
  rep.growth = s_half > 0.0
                   ? s_n / s_half
                   : (s_n > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
  rep.tail_increment = s_n > 0.0 ? (s_n - s_half) / s_n : 0.0;

  double num = 0.0, den = 0.0;
  for (int nu = rep.window_lo + 1; nu <= n; ++nu) {
    const double mag = std::max(std::abs(series.c[std::size_t(nu - 1)]), policy.coeff_floor);
    num += double(nu) * std::log(mag);
    den += double(nu) * double(nu);
  }
  rep.rho_hat = std::exp(num / den);

  if (rep.rho_hat > 1.0 + policy.margin) {
    rep.verdict = Verdict::NOT_SOLVABLE;
    rep.rule = "decay ratio above the divergence threshold";
  } else if (rep.growth > policy.growth_factor) {
    rep.verdict = Verdict::NOT_SOLVABLE;
    rep.rule = "partial sums grew past the growth factor";
  } else if (rep.rho_hat >= policy.rho_max && rep.tail_increment >= policy.stagnation) {
    rep.verdict = Verdict::NOT_SOLVABLE;
    rep.rule = "stagnant coefficients keep feeding the sum";
  } else if (rep.rho_hat < policy.rho_max && rep.tail_increment < policy.eps_tail) {
    rep.verdict = Verdict::SOLVABLE;
    rep.rule = "decay ratio and tail increment below thresholds";
  } else {
    rep.verdict = Verdict::INCONCLUSIVE;
    rep.rule = "between the convergence and divergence thresholds";
  }
  return rep;
}

int suggest_truncation(const SolvabilityReport& report, double amplitude, double noise,
                       double radius_ratio, int cap) {
  if (cap < 1) throw ConfigError("truncation cap must be positive");
  int best_n = 1;
  double best = std::numeric_limits<double>::infinity();
  for (int n = 1; n <= cap; ++n) {
    const double model = amplitude * std::pow(report.rho_hat, n) +
                         noise * std::pow(radius_ratio, n);
    if (model < best) {
      best = model;
      best_n = n;
    }
  }
  return best_n;
}

// ---------------------------------------------------------------------------
// Extension and reconstruction
// ---------------------------------------------------------------------------

cplx extend_n(const CoefficientSeries& series, int n, cplx z) {
  if (n < 0 || n > int(series.c.size()))
    throw TooFewTerms("extension over " + std::to_string(n) +
                      " terms from a series holding " + std::to_string(series.c.size()));
  cplx out = 0.0;
  for (int nu = 1; nu <= n; ++nu)
    out += series.c[std::size_t(nu - 1)] * series.basis.eval(nu, z);
  return out;
}

cplx extend(const CoefficientSeries& series, cplx z) {
  return extend_n(series, int(series.c.size()), z);
}

std::vector<cplx> extend_many(const CoefficientSeries& series, int n,
                              const std::vector<cplx>& points, par::Mode mode) {
  if (n < 0 || n > int(series.c.size()))
    throw TooFewTerms("extension over " + std::to_string(n) +
                      " terms from a series holding " + std::to_string(series.c.size()));
  std::vector<cplx> out(points.size());
  par::for_index(points.size(), mode,
                 [&](std::size_t i) { out[i] = extend_n(series, n, points[i]); });
  return out;
}

std::string to_string(Method m) {
  return m == Method::SERIES ? "SERIES" : "CARLEMAN";
}

namespace {

void require_in_d(const DomainSpec& spec, const std::vector<cplx>& grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (classify_point(spec, grid[i]) != PointClass::IN_D)
      throw PointOutsideD("reconstruction point " + std::to_string(i) + " at (" +
                          std::to_string(grid[i].real()) + ", " +
                          std::to_string(grid[i].imag()) +
                          ") is not an interior point of D");
  }
}

void attach_reference(Reconstruction& rec, const ScalarField& reference) {
  if (!reference) return;
  rec.has_reference = true;
  rec.reference.resize(rec.grid.size());
  double sup = 0.0, sum_sq = 0.0;
  for (std::size_t i = 0; i < rec.grid.size(); ++i) {
    rec.reference[i] = reference(rec.grid[i]);
    const double err = std::abs(rec.u[i] - rec.reference[i]);
    sup = std::max(sup, err);
    sum_sq += err * err;
  }
  rec.sup_error = sup;
  rec.rms_error = rec.grid.empty() ? 0.0 : std::sqrt(sum_sq / double(rec.grid.size()));
}

}  // namespace

Reconstruction reconstruct_series(const PotentialField& F, const CoefficientSeries& series,
                                  int n_terms, const std::vector<cplx>& grid,
                                  const ScalarField& reference, EvalPolicy policy,
                                  par::Mode mode) {
  require_in_d(F.domain(), grid);
  Reconstruction rec;
  rec.grid = grid;
  rec.method = Method::SERIES;
  rec.terms = n_terms;
  rec.u = F.values(grid, policy, 0, mode);
  const std::vector<cplx> ext = extend_many(series, n_terms, grid, mode);
  for (std::size_t i = 0; i < rec.u.size(); ++i) rec.u[i] -= ext[i];
  attach_reference(rec, reference);
  return rec;
}

cplx reconstruct_carleman(const PotentialField& F, int n_terms, cplx x,
                          EvalPolicy policy) {
  require_in_d(F.domain(), {x});
  return F.value(x, policy, n_terms);
}

Reconstruction reconstruct_carleman_grid(const PotentialField& F, int n_terms,
                                         const std::vector<cplx>& grid,
                                         const ScalarField& reference, EvalPolicy policy,
                                         par::Mode mode) {
  require_in_d(F.domain(), grid);
  Reconstruction rec;
  rec.grid = grid;
  rec.method = Method::CARLEMAN;
  rec.terms = n_terms;
  rec.u = F.values(grid, policy, n_terms, mode);
  attach_reference(rec, reference);
  return rec;
}

// ---------------------------------------------------------------------------
// Compatibility
// ---------------------------------------------------------------------------

CompatibilityCheck check_compatibility(ComplexInstance instance,
                                       const std::function<double(double, double)>& p,
                                       const std::function<double(double, double)>& q,
                                       const std::vector<cplx>& probes, double fd_step,
                                       double tolerance) {
  CompatibilityCheck out;
  if (instance == ComplexInstance::DBAR_PLANE) {
    out.note =
        "no compatibility condition: the scalar dbar problem in the plane has "
        "no next operator to annihilate f, so any square-integrable source is "
        "formally admissible";
    return out;
  }
  out.note = "gradient problem: f = (p, q) must satisfy curl(p, q) = 0";
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const double r =
        std::abs(fd_curl(p, q, probes[i].real(), probes[i].imag(), fd_step));
    out.max_residual = std::max(out.max_residual, r);
    if (r > tolerance)
      out.violations.push_back("curl residual " + std::to_string(r) + " at (" +
                               std::to_string(probes[i].real()) + ", " +
                               std::to_string(probes[i].imag()) + ")");
  }
  return out;
}

// ---------------------------------------------------------------------------
// CauchyProblem
// ---------------------------------------------------------------------------

CauchyProblem::CauchyProblem(const DomainSpec& spec, CauchyData data, const Options& opt)
    : spec_(spec),
      opt_(opt),
      gamma_(boundary_rule(spec_, BoundaryPart::GAMMA, opt.gamma_nodes)),
      data_(std::move(data)) {
  if (data_.u0.empty() && data_.u0_exact) {
    data_.u0.resize(gamma_.nodes.size());
    for (std::size_t k = 0; k < gamma_.nodes.size(); ++k)
      data_.u0[k] = data_.u0_exact(gamma_.nodes[k].z);
  }
  if (!data_.u0.empty() && data_.u0.size() != gamma_.nodes.size())
    throw QuadratureMismatch("interface data carries " + std::to_string(data_.u0.size()) +
                             " samples for a rule with " +
                             std::to_string(gamma_.nodes.size()) + " nodes");

  const bool has_source = !data_.f.empty() || bool(data_.f_exact);
  if (has_source) {
    area_.emplace(area_rule(spec_, opt.area_resolution, opt.area_order));
    if (data_.f.empty()) {
      data_.f.resize(area_->nodes.size());
      for (std::size_t k = 0; k < area_->nodes.size(); ++k)
        data_.f[k] = data_.f_exact(area_->nodes[k].z);
    }
    source_.emplace(spec_, *area_, data_.f, data_.f_exact);
  }
  field_.emplace(spec_, gamma_, data_.u0, source_ ? &*source_ : nullptr);
}

const std::vector<WeightedNode>& CauchyProblem::omega_rule(int n_terms) const {
  const int need = std::max(n_terms, 1);
  if (need > omega_capacity_) {
    const int n_r = std::max(opt_.omega_radial, need + 8);
    const int n_theta = std::max(opt_.omega_angular, 4 * (need + 8));
    omega_ = disc_quadrature(cplx(0.0, 0.0), spec_.test_ball_radius, n_r, n_theta);
    omega_capacity_ = need;
    F_on_omega_.clear();
  }
  return omega_;
}

const std::vector<cplx>& CauchyProblem::potential_on_omega(int n_terms) const {
  const std::vector<WeightedNode>& rule = omega_rule(n_terms);
  if (F_on_omega_.empty() && !rule.empty()) {
    std::vector<cplx> points(rule.size());
    for (std::size_t k = 0; k < rule.size(); ++k) points[k] = rule[k].z;
    F_on_omega_ = field_->values(points, EvalPolicy::Auto, 0, opt_.mode);
  }
  return F_on_omega_;
}

CoefficientSeries CauchyProblem::coefficients(const BasisView& basis, int n_terms) const {
  const double R = spec_.omega_radius, r = spec_.test_ball_radius;
  if (std::abs(basis.omega_radius - R) > 1e-12 * R ||
      std::abs(basis.test_radius - r) > 1e-12 * R)
    throw ConfigError("basis radii (" + std::to_string(basis.omega_radius) + ", " +
                      std::to_string(basis.test_radius) +
                      ") do not match the domain (" + std::to_string(R) + ", " +
                      std::to_string(r) + ")");
  const bool extended_data =
      bool(data_.u0_extended) && !data_.u0.empty() &&
      spec_.gamma.kind != GammaKind::SampledArc;
  if (!extended_data)
    return compute_coefficients_regrouped(coefficient_field(n_terms), basis, n_terms);

  // Extended path: interface rule, data, and mode sums all carried beyond
  // double precision, so the only boundary-side errors left are the rule's
  // own resolution and the extended arithmetic's floor.
  check_series_request(basis, n_terms);
  std::vector<xcplx> S(mode_count(basis, n_terms));
  const xcplx pref = boundary_prefactor();
  for (const XBoundaryNode& node : extended_gamma_rule(n_terms))
    accumulate_modes(S, node.z,
                     data_.u0_extended(node.z) * node.tangent * pref * node.w);
  if (source_) add_area_mode_sums(S, *source_);
  return mix_mode_sums(basis, n_terms, S);
}

int CauchyProblem::coefficient_rule_target(int n_terms) const {
  int target = opt_.coeff_boundary_nodes;
  if (target <= 0) {
    // Mid-boundary panels of the composite rule span about
    // (pi/2) * length / n_panels; keep them under half the mode width
    // dist(0, Gamma)/sqrt(n_terms), with 8 nodes per panel.
    const double h = std::max(spec_.dist0_gamma, 1e-8);
    const double panels = 3.5 * gamma_.length * std::sqrt(double(n_terms)) / h;
    target = 8 * int(std::ceil(panels));
  }
  return std::clamp(target, opt_.gamma_nodes, 1 << 15);
}

const PotentialField& CauchyProblem::coefficient_field(int n_terms) const {
  // Without the exact callback the potential's own sampling is all there is.
  if (data_.u0.empty() || !data_.u0_exact) return *field_;

  const int target = coefficient_rule_target(n_terms);
  if (target <= int(gamma_.nodes.size())) return *field_;

  if (coeff_capacity_ < target) {
    coeff_field_.reset();
    coeff_gamma_ = boundary_rule(spec_, BoundaryPart::GAMMA, target);
    coeff_u0_.resize(coeff_gamma_.nodes.size());
    for (std::size_t k = 0; k < coeff_gamma_.nodes.size(); ++k)
      coeff_u0_[k] = data_.u0_exact(coeff_gamma_.nodes[k].z);
    coeff_field_.emplace(spec_, coeff_gamma_, coeff_u0_,
                         source_ ? &*source_ : nullptr);
    coeff_capacity_ = int(coeff_gamma_.nodes.size());
  }
  return *coeff_field_;
}

const std::vector<XBoundaryNode>& CauchyProblem::extended_gamma_rule(int n_terms) const {
  const int target = std::max(coefficient_rule_target(n_terms), opt_.gamma_nodes);
  if (xgamma_capacity_ >= target) return xgamma_;

  // Uniform panels: the mode integrand concentrates where Gamma passes
  // closest to the expansion centre, not at the corners, so the potential
  // rule's corner clustering would waste nodes here.
  constexpr int order = 8;
  const int panels = std::max(2, (target + order - 1) / order);
  const XGauss g = xgauss_legendre(order);
  const xreal sgn = (spec_.side == Side::Positive) ? xreal(-1) : xreal(1);
  xgamma_.clear();
  xgamma_.reserve(std::size_t(panels) * order);
  switch (spec_.gamma.kind) {
    case GammaKind::Chord: {
      const xreal offset = xreal(spec_.gamma.chord_offset);
      const xreal R = xreal(spec_.omega_radius);
      const xreal halfspan = xsqrt(R * R - offset * offset);
      const xcplx tangent(0, sgn);  // i * outward normal, ccw around D
      for (int p = 0; p < panels; ++p)
        for (int k = 0; k < order; ++k) {
          const xreal s = (xreal(p) + (g.x[std::size_t(k)] + xreal(1)) * xreal(0.5)) /
                          xreal(panels);
          XBoundaryNode node;
          node.z = xcplx(offset, halfspan * (2 * s - xreal(1)));
          node.tangent = tangent;
          node.w = g.w[std::size_t(k)] * halfspan / xreal(panels);
          xgamma_.push_back(node);
        }
      break;
    }
    case GammaKind::CircularArc: {
      const xcplx centre(spec_.gamma.arc_center);
      const xreal rho = xreal(spec_.gamma.arc_radius);
      const xreal psi_lo = xreal(spec_.psi_lo), psi_hi = xreal(spec_.psi_hi);
      for (int p = 0; p < panels; ++p)
        for (int k = 0; k < order; ++k) {
          const xreal s = (xreal(p) + (g.x[std::size_t(k)] + xreal(1)) * xreal(0.5)) /
                          xreal(panels);
          const xcplx e = xcis(psi_lo + s * (psi_hi - psi_lo));
          XBoundaryNode node;
          node.z = centre + rho * e;
          // outward normal is sgn * e; tangent = i * normal.
          node.tangent = xcplx(-e.im, e.re) * sgn;
          node.w = g.w[std::size_t(k)] * xreal(0.5) * rho *
                   xabs(psi_hi - psi_lo) / xreal(panels);
          xgamma_.push_back(node);
        }
      break;
    }
    case GammaKind::SampledArc:
      throw ConfigError("extended interface rule needs a closed-form boundary");
  }
  xgamma_capacity_ = target;
  return xgamma_;
}

}  // namespace cauchylens
