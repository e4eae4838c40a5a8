#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cauchylens/common.hpp"
#include "cauchylens/geometry.hpp"
#include "cauchylens/laplace.hpp"
#include "cauchylens/quadrature.hpp"
#include "cauchylens/solver.hpp"

namespace cauchylens {

// ---------------------------------------------------------------------------
// Independent references the test suite checks the pipeline against:
// manufactured solutions with hand-coded derivatives, closed-form geometric
// quantities, finite-difference operators on uniform grids, and refinement
// studies.  Nothing here reuses the quadrature or series machinery it is
// meant to validate.
// ---------------------------------------------------------------------------

struct ManufacturedCase {
  std::string name;        // canonical spelling, e.g. "POLE_OUTSIDE(2)"
  bool solvable = true;    // does an L2(D) solution exist
  bool classical = false;  // harmonic case for the Laplace front-end
  std::string notes;
  DomainOptions domain;    // canonical domain the case is posed on

  // dbar problem fields (classical == false)
  ScalarField solution;          // exact u on D; null when none exists
  ScalarField trace;             // u0 on the interface
  ScalarField source;            // f; null means f = 0
  XScalarField trace_extended;   // closed-form trace at extended precision

  // classical fields (classical == true)
  RealField harmonic;            // exact real harmonic solution
  ScalarField harmonic_gradient; // u_x + i u_y
};

// Catalog: POLY2, ZBAR_RHS, POLE_OUTSIDE(a), POLE_IN_DPLUS(a), ANTIHOLO,
// HARMONIC_CUBIC.  The pole cases accept a real parameter in parentheses
// (defaults 2 and -0.5); anything else throws UnknownCase.
ManufacturedCase manufactured_case(const std::string& name);
std::vector<std::string> manufactured_catalog();

// ---------------------------------------------------------------------------
// Finite-difference operators on a uniform grid, second-order centred
// stencils, residual returned on the (nx-2) x (ny-2) interior points.
// ---------------------------------------------------------------------------

enum class FdOp { DBAR, LAPLACIAN, CURL };

struct FdGrid {
  cplx origin;     // lower-left grid point
  double h = 0.0;  // spacing, shared by both directions
  int nx = 0, ny = 0;
  cplx at(int i, int j) const { return origin + cplx(i * h, j * h); }
};

// samples[j * nx + i] = field(grid.at(i, j)).  For CURL the field packs the
// vector components as p + i q and the (real) residual dq/dx - dp/dy is
// returned in the real part.
std::vector<cplx> fd_operator(const FdGrid& grid, const std::vector<cplx>& samples,
                              FdOp op);

// ---------------------------------------------------------------------------
// Refinement study: least-squares slope of log(error) against log(h).
// Needs at least 3 levels; non-monotone error sequences are reported in the
// flag, not fatal.
// ---------------------------------------------------------------------------

struct RefinementStudy {
  std::vector<double> h;
  std::vector<double> error;
  double order = 0.0;
  bool monotone = true;
};

RefinementStudy refinement_study(const std::vector<double>& h,
                                 const std::function<double(double)>& error_at);

// Closed-form |D| for chord and circular-arc interfaces (circular segment
// and circle-circle lens); sampled arcs have no closed form and throw
// ConfigError.
double exact_domain_area(const DomainSpec& spec);

// Monte Carlo |D| estimate: `samples` uniform draws on the bounding square
// of Omega with a fixed-seed generator.  The only randomized routine in the
// library; everything else is deterministic.
double mc_area(const DomainSpec& spec, std::uint64_t seed, int samples);

// Expansion coefficients of 1/(z - a), |a| > R, in the doubly orthogonal
// disc basis: c_nu = -a^{-nu} sqrt(pi R^{2 nu} / nu), from the Taylor series
// about 0 rather than from any quadrature.
std::vector<cplx> taylor_pole_coefficients(cplx a, double R, int n);

// Relative weighted-L2 residual of the best polynomial fit of the given
// degree to boundary samples, via normal equations on centred and scaled
// monomials.  A trace admitting a holomorphic extension fits to near
// roundoff; the residual of a genuinely non-holomorphic trace stays bounded
// away from zero at moderate degree.
double polynomial_fit_residual(const BoundaryRule& rule,
                               const std::vector<cplx>& values, int degree);

}  // namespace cauchylens
