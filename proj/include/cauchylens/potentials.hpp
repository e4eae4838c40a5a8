#pragma once

#include <vector>

#include "cauchylens/geometry.hpp"
#include "cauchylens/kernels.hpp"
#include "cauchylens/parallel.hpp"
#include "cauchylens/quadrature.hpp"

namespace cauchylens {

// How singular area integrals are evaluated at interior points:
//   Auto - desingularize the neighbourhood of z by a fan of Duffy-mapped
//          triangles in chart coordinates; plain node sums elsewhere.
//   Raw  - always the plain node sum (useful when two different evaluation
//          routes must agree to roundoff, since sums then only reorder).
enum class EvalPolicy { Auto, Raw };

// Cauchy-type boundary potential of a density sampled at the rule's nodes:
//   (1/(2 pi i)) * sum w * tangent * density * (z/zeta)^truncation / (zeta-z).
// truncation = 0 is the plain potential.
cplx boundary_potential(const BoundaryRule& rule, const std::vector<cplx>& density,
                        cplx z, int truncation = 0);

std::vector<cplx> boundary_potential_many(const BoundaryRule& rule,
                                          const std::vector<cplx>& density,
                                          const std::vector<cplx>& points,
                                          int truncation = 0,
                                          par::Mode mode = par::default_mode());

// Area potential -(1/pi) * integral over D of f(zeta) (z/zeta)^truncation
// / (zeta - z) dA(zeta).  Keeps references to the domain and rule; both must
// outlive the object.
class AreaPotential {
 public:
  AreaPotential(const DomainSpec& spec, const AreaRule& rule,
                std::vector<cplx> f_at_nodes, ScalarField f_exact = {});

  static AreaPotential from_function(const DomainSpec& spec, const AreaRule& rule,
                                     const ScalarField& f);

  cplx value(cplx z, EvalPolicy policy = EvalPolicy::Auto, int truncation = 0) const;

  std::vector<cplx> values(const std::vector<cplx>& points,
                           EvalPolicy policy = EvalPolicy::Auto, int truncation = 0,
                           par::Mode mode = par::default_mode()) const;

  // Source value at an arbitrary point of D: the exact callback when present,
  // otherwise tensor Lagrange interpolation on the owning cell's samples.
  cplx source_at(cplx z) const;

  const DomainSpec& domain() const { return *spec_; }
  const AreaRule& rule() const { return *rule_; }
  const std::vector<cplx>& density() const { return f_nodes_; }

  // Tensor order of each leaf rule in the desingularized patch.  Leaves are
  // produced by bisecting fan edges until every piece subtends a small angle
  // at the singular point, which keeps the transformed integrand well
  // resolved even where the star chart shears strongly.
  int duffy_order = 12;

  // Cells within this Chebyshev distance (in cells) of the singular cell, but
  // outside the Duffy patch, are re-integrated with a fresh near_order x
  // near_order Gauss rule.  The stored node sums keep a fixed cell-size to
  // distance ratio near the patch, so without this tier their error would
  // plateau instead of refining.  The ring must reach well past the patch
  // because the chart metric is sheared where the boundary is oblique to the
  // view from the pivot, which shrinks physical distances between cells.
  int near_ring = 8;
  int near_order = 12;

 private:
  cplx raw_sum(cplx z, int truncation) const;
  cplx desingularized(cplx z, int truncation) const;
  cplx source_in_chart(double phi, double t) const;

  const DomainSpec* spec_;
  const AreaRule* rule_;
  std::vector<cplx> f_nodes_;
  ScalarField f_exact_;
};

// Largest Cauchy-Pompeiu defect |M(u|bd D)(z) + T(dbar u)(z) - chi_D(z) u(z)|
// over the probe points; source_potential must hold dbar u.  Probes too close
// to the boundary are rejected.
double homotopy_residual(const DomainSpec& spec, const BoundaryRule& full,
                         const AreaPotential& source_potential, const ScalarField& u,
                         const std::vector<cplx>& probes,
                         par::Mode mode = par::default_mode());

}  // namespace cauchylens
