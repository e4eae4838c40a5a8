#pragma once

#include <string>
#include <vector>

#include "cauchylens/common.hpp"
#include "cauchylens/gauss.hpp"
#include "cauchylens/geometry.hpp"

namespace cauchylens {

// ---------------------------------------------------------------------------
// Boundary rules.  Nodes carry arc-length weights together with the unit
// tangent of the counterclockwise traversal of the boundary of D and the unit
// normal pointing out of D, so both ds- and dzeta-integrals read off directly:
//   contour integral of f dzeta  =  sum w_k * tangent_k * f(z_k)
//   integral of f ds             =  sum w_k * f(z_k)
// ---------------------------------------------------------------------------

enum class BoundaryPart { GAMMA, OUTER_ARC, FULL };

BoundaryPart parse_boundary_part(const std::string& name);  // throws UnknownPart

struct BoundaryNode {
  cplx z;
  double w;      // arc-length weight
  cplx tangent;  // unit, counterclockwise around D
  cplx normal;   // unit, outward from D
};

struct BoundaryRule {
  std::vector<BoundaryNode> nodes;
  double length = 0.0;  // sum of weights
};

// Composite Gauss panels (8 nodes each) with endpoint-clustered panel
// breakpoints, so corner neighbourhoods of the lens are well resolved.
// n_target is the approximate total node count.
BoundaryRule boundary_rule(const DomainSpec& spec, BoundaryPart part, int n_target);

// ---------------------------------------------------------------------------
// Area rule over D.  The star chart maps (phi, t) in [base, base+2pi) x [0,1]
// onto D via z = pivot + t * rho(phi) * e^{i phi}; the areal Jacobian is
// t * rho(phi)^2.  Cells are (phi, t) rectangles aligned with the chart's
// corner directions, each carrying a q x q tensor Gauss rule.  The cell
// structure is kept so that singular integrands can be re-integrated locally
// (see the potentials module).
// ---------------------------------------------------------------------------

struct WeightedNode {
  cplx z;
  double w;
};

struct AreaRule {
  std::vector<WeightedNode> nodes;  // cell-major; within a cell phi-major, q*q
  std::vector<double> phi_breaks;   // n_phi + 1 increasing values spanning 2pi
  std::vector<double> t_breaks;     // n_t + 1 values spanning [0, 1]
  int n_phi = 0, n_t = 0, q = 0;
  GaussRule1d cell_gauss;           // the q-point rule used in every cell
  double total_area = 0.0;

  int cell_index(int jphi, int it) const { return jphi * n_t + it; }
  std::size_t node_index(int cell, int a, int b) const {
    return std::size_t(cell) * q * q + std::size_t(a) * q + b;
  }
  // Chart coordinates of z (phi normalised into [phi_breaks.front(), +2pi)).
  void chart_coords(const DomainSpec& spec, cplx z, double& phi, double& t) const;
  int locate_cell(const DomainSpec& spec, cplx z) const;  // -1 if t > 1
};

AreaRule area_rule(const DomainSpec& spec, int resolution, int q = 3);

// Polar rule on the disc B(center, radius): Gauss in r (with the r dr weight
// folded in), uniform in the angle, exact for trigonometric degree n_theta - 1.
std::vector<WeightedNode> disc_quadrature(cplx center, double radius, int n_r,
                                          int n_theta);

}  // namespace cauchylens
