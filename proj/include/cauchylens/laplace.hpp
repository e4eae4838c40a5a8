#pragma once

#include <functional>
#include <vector>

#include "cauchylens/common.hpp"
#include "cauchylens/geometry.hpp"
#include "cauchylens/parallel.hpp"
#include "cauchylens/quadrature.hpp"
#include "cauchylens/solver.hpp"

namespace cauchylens {

// ---------------------------------------------------------------------------
// Front-end for the classical ill-posed problem: harmonic u with Cauchy data
// (u, du/dn) on the interface.  g = u_x - i u_y is holomorphic wherever u is
// harmonic, so the pair is converted to interface values of g, the
// holomorphic pipeline continues g, and u is recovered by integrating
//   u(x) = u(p0) + Re integral_{p0 -> x} g dz
// along paths inside D; the anchor sample fixes the additive constant g
// cannot see.
// ---------------------------------------------------------------------------

struct ClassicalCauchyData {
  std::vector<double> u;      // u at the interface rule's nodes
  std::vector<double> dudn;   // outward-normal derivative at the same nodes
  cplx anchor;                // interface point whose value pins the constant
  double anchor_value = 0.0;  // u(anchor)
};

// Interface values of g = u_x - i u_y from the classical pair.  The
// tangential derivative comes from Lagrange differentiation of the samples
// in the chordal arc-length parameter over a sliding window of
// stencil_width nodes (one-sided at the interface endpoints); dividing the
// sample derivative by |dz/dsigma| from the same stencil cancels the
// parametrization distortion, and the gradient is assembled in the
// orthonormal frame (dz/dsigma direction, outward normal).  Returns data for
// the dbar pipeline: u0 = g samples, f = 0.
CauchyData to_holomorphic(const BoundaryRule& gamma_rule,
                          const ClassicalCauchyData& classical,
                          int stencil_width = 7);

using RealField = std::function<double(cplx)>;

struct HarmonicReconstruction {
  std::vector<cplx> grid;
  std::vector<double> u;
  double g_sup = 0.0;          // max |g| over the integration nodes
  double loop_residual = 0.0;  // max |closed-loop integral of g| over the
                               // sampled in-D triangles (holomorphy should
                               // make every loop vanish)
  bool has_reference = false;
  std::vector<double> reference;
  double sup_error = 0.0;
  double rms_error = 0.0;
};

// Path-integrate g from the anchor to every grid point.  The path leaves the
// interface by a short bridge toward the star-chart pivot, then runs either
// straight to the target or through the pivot (D is star-shaped about the
// pivot, so that waypoint route stays inside); every integration node is
// classified and PathEscapesDomain is thrown if neither route lies in D.
// Loop integrals over triangles spanned by the bridge point, the pivot, and
// a spread of grid points report the path-independence residual.
HarmonicReconstruction from_holomorphic(const DomainSpec& spec, const ScalarField& g,
                                        cplx anchor, double anchor_value,
                                        const std::vector<cplx>& grid,
                                        const RealField& reference = {},
                                        par::Mode mode = par::default_mode());

}  // namespace cauchylens
