#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cauchylens/basis.hpp"
#include "cauchylens/extended.hpp"
#include "cauchylens/geometry.hpp"
#include "cauchylens/potentials.hpp"
#include "cauchylens/quadrature.hpp"

namespace cauchylens {

// ---------------------------------------------------------------------------
// End-to-end pipeline for the ill-posed interface problem
//   dbar u = f in D,  u = u0 on Gamma:
// form F = M u0~ + T f (u0~ = zero extension of the interface data), expand
// F's restriction to the test ball in the doubly orthogonal basis, judge
// solvability from the coefficient decay, and reconstruct u = F - extension.
// ---------------------------------------------------------------------------

// Uniform view of the two basis constructions.  The closed-form basis and the
// quadrature-built one expose different types; the solver only needs
// evaluation, the test-ball norms lambda_nu, and the disc radii for
// consistency checks.  Numeric eigenfunctions carry an arbitrary unit phase;
// every use below pairs eval with its conjugate, so the phase cancels.
struct BasisView {
  int size = 0;
  double omega_radius = 0.0;
  double test_radius = 0.0;
  std::string kind;                          // "analytic" or "numeric"
  std::function<cplx(int, cplx)> eval;       // nu = 1..size
  std::function<double(int)> lambda;         // (b_nu, b_nu) over the test ball
  // Monomial form b_nu(z) = sum_m poly[nu-1][m] z^m, used to regroup
  // test-ball inner products into source-side sums (see
  // compute_coefficients_regrouped).
  std::vector<std::vector<cplx>> poly;
};

BasisView basis_view(const AnalyticBasis& basis);
BasisView basis_view(const NumericBasis& basis);  // copies the coefficient table

// ---------------------------------------------------------------------------
// F = M u0~ + T f.  Holds the boundary density at the interface rule's nodes
// and (optionally) an area potential for the source term; rule and potential
// must outlive the field.  truncation > 0 applies the cut kernels
// (z/zeta)^truncation * kernel to both parts, which is the kernel form of
// dropping the first `truncation` basis components of the expansion.
// ---------------------------------------------------------------------------
class PotentialField {
 public:
  PotentialField(const DomainSpec& spec, const BoundaryRule& gamma_rule,
                 std::vector<cplx> u0_at_nodes, const AreaPotential* source);

  cplx value(cplx z, EvalPolicy policy = EvalPolicy::Auto, int truncation = 0) const;
  std::vector<cplx> values(const std::vector<cplx>& points,
                           EvalPolicy policy = EvalPolicy::Auto, int truncation = 0,
                           par::Mode mode = par::default_mode()) const;

  const DomainSpec& domain() const { return *spec_; }
  const BoundaryRule& gamma_rule() const { return *gamma_; }
  const std::vector<cplx>& boundary_density() const { return u0_; }
  const AreaPotential* source() const { return source_; }

 private:
  const DomainSpec* spec_;
  const BoundaryRule* gamma_;
  std::vector<cplx> u0_;
  const AreaPotential* source_;  // may be null (f = 0)
};

// ---------------------------------------------------------------------------
// Coefficients c_nu = (F, b_nu)_omega / lambda_nu and their solvability
// diagnostics.  partial_sums[k] = S_{k+1} = sum_{nu <= k+1} |c_nu|^2; the
// problem is solvable exactly when the full series converges.
// ---------------------------------------------------------------------------
struct CoefficientSeries {
  std::vector<cplx> c;               // c_nu at nu = 1..N
  std::vector<double> partial_sums;  // S_1, ..., S_N
  BasisView basis;
};

enum class Verdict { SOLVABLE, NOT_SOLVABLE, INCONCLUSIVE };
std::string to_string(Verdict v);

// Finite-N stand-in for the exact criterion "sum |c_nu|^2 converges".  All
// thresholds live here and are echoed into the report.  The decay ratio is
// fitted over the last doubling window (N/2, N] by least squares on the pure
// geometric model |c_nu| = rho^nu (log-linear fit through the origin); for an
// exactly geometric sequence it returns the ratio itself, and absorbing the
// amplitude into the slope keeps the estimate low for sequences that decay
// algebraically on top of a small amplitude, which is what the corner jumps
// of the zero-extended data produce.
struct SolvabilityPolicy {
  int min_terms = 16;
  double rho_max = 0.95;        // SOLVABLE needs rho_hat < rho_max ...
  double eps_tail = 1e-4;       // ... and (S_N - S_{N/2})/S_N < eps_tail
  double margin = 0.05;         // NOT_SOLVABLE when rho_hat > 1 + margin ...
  double growth_factor = 10.0;  // ... or S_N / S_{N/2} > growth_factor ...
  double stagnation = 0.25;     // ... or rho_hat >= rho_max while the last
                                //     half-window still carries >= this
                                //     fraction of S_N (divergence too slow
                                //     for the ratio tests, e.g. c_nu == 1)
  double coeff_floor = 1e-300;  // |c_nu| floor inside the log fit
};

struct SolvabilityReport {
  Verdict verdict = Verdict::INCONCLUSIVE;
  double rho_hat = 0.0;
  double tail_increment = 0.0;  // (S_N - S_{N/2}) / S_N
  double growth = 0.0;          // S_N / S_{N/2}
  int terms = 0;                // N
  int window_lo = 0;            // fit window is (window_lo, terms]
  SolvabilityPolicy policy;     // thresholds this verdict used
  std::string rule;             // which clause fired, for the report
};

// c_nu from the test-ball inner products; the rule must integrate
// degree-2*n_terms monomials accurately (disc_quadrature: n_r >= n_terms).
CoefficientSeries compute_coefficients(const std::vector<cplx>& F_at_nodes,
                                       const BasisView& basis,
                                       const std::vector<WeightedNode>& omega_quad,
                                       int n_terms);
CoefficientSeries compute_coefficients(const ScalarField& F_plus, const BasisView& basis,
                                       const std::vector<WeightedNode>& omega_quad,
                                       int n_terms);
CoefficientSeries compute_coefficients(const PotentialField& F_plus,
                                       const BasisView& basis,
                                       const std::vector<WeightedNode>& omega_quad,
                                       int n_terms,
                                       par::Mode mode = par::default_mode());

// Same inner products, regrouped to the source side.  The test-ball
// projection of the Cauchy kernel against a monomial has a closed form, so
// each c_nu collapses to sums of the boundary density and the area source
// against explicit zeta^-(m+1) weights.  This never forms the lambda-small
// intermediates whose cancellation destroys modes beyond ~log(1/eps) /
// (2 log(R/r_omega)) in double arithmetic; the weights grow like
// dist(0, Gamma)^-nu, so the sums are accumulated in extended precision.
// Requires basis.poly (both factory-made views provide it).
CoefficientSeries compute_coefficients_regrouped(const PotentialField& F_plus,
                                                 const BasisView& basis,
                                                 int n_terms);

SolvabilityReport solvability_indicator(const CoefficientSeries& series,
                                        const SolvabilityPolicy& policy = {});

// Partial expansion sum_{nu <= n} c_nu b_nu(z), defined on all of Omega.
cplx extend(const CoefficientSeries& series, cplx z);
cplx extend_n(const CoefficientSeries& series, int n, cplx z);
std::vector<cplx> extend_many(const CoefficientSeries& series, int n,
                              const std::vector<cplx>& points,
                              par::Mode mode = par::default_mode());

// ---------------------------------------------------------------------------
// Reconstruction u(z) = F(z) - extension_N(z) on points of D, either by
// subtracting the expansion explicitly (SERIES) or through the cut kernels
// (CARLEMAN).  The two agree to roundoff on shared quadrature objects because
// cutting the kernel subtracts, per source node, exactly the terms the series
// route subtracts after reordering the double sum.
// ---------------------------------------------------------------------------
enum class Method { SERIES, CARLEMAN };
std::string to_string(Method m);

struct Reconstruction {
  std::vector<cplx> grid;
  std::vector<cplx> u;
  Method method = Method::SERIES;
  int terms = 0;
  bool has_reference = false;
  std::vector<cplx> reference;
  double sup_error = 0.0;  // max |u - reference| over the grid
  double rms_error = 0.0;  // sqrt(mean |u - reference|^2)
  bool nonconvergent = false;  // set by callers that reconstruct anyway after
                               // a NOT_SOLVABLE verdict (diagnostic output)
};

Reconstruction reconstruct_series(const PotentialField& F, const CoefficientSeries& series,
                                  int n_terms, const std::vector<cplx>& grid,
                                  const ScalarField& reference = {},
                                  EvalPolicy policy = EvalPolicy::Auto,
                                  par::Mode mode = par::default_mode());

cplx reconstruct_carleman(const PotentialField& F, int n_terms, cplx x,
                          EvalPolicy policy = EvalPolicy::Auto);
Reconstruction reconstruct_carleman_grid(const PotentialField& F, int n_terms,
                                         const std::vector<cplx>& grid,
                                         const ScalarField& reference = {},
                                         EvalPolicy policy = EvalPolicy::Auto,
                                         par::Mode mode = par::default_mode());

// Truncation trade-off: the expansion tail shrinks like rho_hat^N while
// amplified data noise grows like lambda_N^{-1/2} = (R/r)^N.  Returns the
// argmin over 1..cap of amplitude*rho_hat^N + noise*(R/r)^N (smallest N on
// ties).  Reported as a suggestion only; nothing applies it implicitly.
int suggest_truncation(const SolvabilityReport& report, double amplitude,
                       double noise, double radius_ratio, int cap);

// ---------------------------------------------------------------------------
// Compatibility of the right-hand side.  For the scalar dbar problem in the
// plane there is no condition: the complex ends at this degree, so any f is
// formally admissible and the check documents that.  The first-order de Rham
// instance (find u with grad u = (p, q)) keeps the check honest: there the
// condition is curl(p, q) = 0, verified by centered differences at probes.
// ---------------------------------------------------------------------------
enum class ComplexInstance { DBAR_PLANE, GRADIENT_PLANE };

struct CompatibilityCheck {
  std::vector<std::string> violations;  // empty when compatible
  std::string note;
  double max_residual = 0.0;
};

CompatibilityCheck check_compatibility(
    ComplexInstance instance, const std::function<double(double, double)>& p,
    const std::function<double(double, double)>& q, const std::vector<cplx>& probes,
    double fd_step = 1e-5, double tolerance = 1e-6);

// ---------------------------------------------------------------------------
// Owns the quadrature rules, sampled data, and potentials of one problem
// instance and wires the stages together.  Non-copyable: the potentials hold
// pointers into the owned rules.
// ---------------------------------------------------------------------------
struct CauchyData {
  std::vector<cplx> u0;  // at the interface rule's nodes (empty: u0 = 0)
  std::vector<cplx> f;   // at the area rule's nodes (empty: f = 0)
  ScalarField u0_exact;  // optional callbacks; used to sample when the vector
  ScalarField f_exact;   // is empty, and kept for off-node evaluation

  // Optional extended-precision version of u0_exact.  Deep coefficient
  // requests cancel ~ nu * log10(1/dist(0, Gamma)) decimal digits, so the
  // boundary mode sums round the data's double representation into exactly
  // the noise they cannot afford; this callback lets them evaluate the data
  // at extended precision instead.  Must agree with u0_exact to double
  // rounding.  Without it the coefficient depth is limited to roughly
  // 12 / log10(1/dist(0, Gamma)) terms.
  XScalarField u0_extended;
};

class CauchyProblem {
 public:
  struct Options {
    int gamma_nodes = 512;
    int area_resolution = 32;
    int area_order = 3;
    // Lower bounds for the test-ball rule; it is rebuilt larger when a
    // coefficient request needs more radial exactness (n_r >= n_terms).
    int omega_radial = 24;
    int omega_angular = 96;
    // Boundary rule used for the coefficient sums.  The mode-nu integrand
    // concentrates where Gamma comes closest to the expansion centre, with
    // width dist(0, Gamma)/sqrt(nu), so deep expansions need a finer rule
    // than the potential itself.  0 = refine automatically for the requested
    // depth (needs the exact boundary callback to resample; sample-only data
    // falls back to the potential's rule).  Positive values pin the count.
    int coeff_boundary_nodes = 0;
    par::Mode mode = par::default_mode();
  };

  CauchyProblem(const DomainSpec& spec, CauchyData data, const Options& opt);
  CauchyProblem(const DomainSpec& spec, CauchyData data)
      : CauchyProblem(spec, std::move(data), Options{}) {}
  CauchyProblem(const CauchyProblem&) = delete;
  CauchyProblem& operator=(const CauchyProblem&) = delete;

  const DomainSpec& spec() const { return spec_; }
  const Options& options() const { return opt_; }
  const BoundaryRule& gamma_rule() const { return gamma_; }
  const AreaRule* area() const { return area_ ? &*area_ : nullptr; }
  const AreaPotential* source_potential() const {
    return source_ ? &*source_ : nullptr;
  }
  const PotentialField& potential() const { return *field_; }

  // Test-ball rule with enough radial exactness for n_terms coefficients,
  // and the potential's values at its nodes (cached per capacity).
  const std::vector<WeightedNode>& omega_rule(int n_terms) const;
  const std::vector<cplx>& potential_on_omega(int n_terms) const;

  // Expansion coefficients of the potential, via the regrouped source-side
  // sums (compute_coefficients_regrouped); the direct test-ball quadrature
  // form stays available through the free compute_coefficients overloads.
  CoefficientSeries coefficients(const BasisView& basis, int n_terms) const;

 private:
  const PotentialField& coefficient_field(int n_terms) const;
  int coefficient_rule_target(int n_terms) const;
  const std::vector<XBoundaryNode>& extended_gamma_rule(int n_terms) const;

  DomainSpec spec_;
  Options opt_;
  BoundaryRule gamma_;
  std::optional<AreaRule> area_;
  CauchyData data_;
  std::optional<AreaPotential> source_;
  std::optional<PotentialField> field_;

  mutable int omega_capacity_ = 0;
  mutable std::vector<WeightedNode> omega_;
  mutable std::vector<cplx> F_on_omega_;

  // Refined boundary rule + resampled data for deep coefficient requests.
  mutable int coeff_capacity_ = 0;
  mutable BoundaryRule coeff_gamma_;
  mutable std::vector<cplx> coeff_u0_;
  mutable std::optional<PotentialField> coeff_field_;

  // Extended-precision interface rule, built only when the data carries an
  // extended callback and the descriptor has a closed form.
  mutable int xgamma_capacity_ = 0;
  mutable std::vector<XBoundaryNode> xgamma_;
};

}  // namespace cauchylens
