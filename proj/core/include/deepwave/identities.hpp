#pragma once

#include "deepwave/core_types.hpp"
#include "deepwave/harmonic_oracle.hpp"
#include "deepwave/surface_graph.hpp"

#include <functional>
#include <vector>

namespace deepwave::identities {

/// (-(|c|^2/g) dphi/dy + c . x + phi) grad phi
///   + (|c|^2/g)(|grad phi|^2 / 2 - c . grad phi) e_y
///   + ((|c|^2/g) dphi/dy - phi) c.
/// Its divergence is |grad phi|^2 for harmonic phi.
Vec field_A(double phi, const Vec& grad, const Point& x, const WaveParams& params);

/// The |c|^2/g part of field_A; divergence free for harmonic phi.
Vec field_C(const Vec& grad, const WaveParams& params);

/// |div_h A - |grad phi|^2| at x with centered differences of step h.
double divergence_residual_A(const HarmonicField& f, const Point& x, double h,
                             const WaveParams& params);

/// |div_h C| at x.
double divergence_residual_C(const HarmonicField& f, const Point& x, double h,
                             const WaveParams& params);

/// Quadrature of (c . x)(a . x) over the lower half of the unit sphere.
double hemisphere_quadratic_integral(const Vec& c, const Vec& a, int n, int order);

/// pi^{n/2} / (n Gamma(n/2)) (c . a), the value for horizontal c and a.
double hemisphere_quadratic_closed_form(const Vec& c, const Vec& a, int n);

/// Quadrature of x over the lower half of the unit sphere; equals
/// -angular_constant(n) e_y.
Vec hemisphere_position_integral(int n, int order);

/// Points, weights and unit normals on a sphere portion |x| = r.
struct ShellRule {
  std::vector<Point> points;
  std::vector<double> weights;
  std::vector<Vec> normals;   // x / r
};

/// Quadrature on dB_r intersected with the fluid {y < eta(x')}; the arc (2D)
/// or cap boundary (3D) is located by bisection against the surface.
ShellRule fluid_shell(const SurfaceGraph& eta, double r, int order);

/// Quadrature on dB_r intersected with {y < 0}.
ShellRule lower_shell(int n, double r, int order);

struct ShellSeries {
  std::vector<double> radii;
  std::vector<double> values;
  double limit_estimate = 0.0;  // least-squares fit of L + B / r
  double spread = 0.0;          // max - min over the largest three radii
};

/// Builds the series; radii must be strictly increasing.
ShellSeries make_shell_series(std::vector<double> radii, std::vector<double> values);

/// Flux of field_A through dB_r in the fluid, outward normal x / r.
double shell_flux_A(const HarmonicField& f, const SurfaceGraph& eta, double r,
                    const WaveParams& params, int order = 48);

/// Flux of field_C through dB_r in the fluid.
double shell_flux_C(const HarmonicField& f, const SurfaceGraph& eta, double r,
                    const WaveParams& params, int order = 48);

/// int over dB_r in {y < 0} of x cross grad phi. 2D: one component,
/// x_1 dphi/dy - y dphi/dx_1. 3D: the cross product.
Vec angular_momentum_shell(const HarmonicField& f, double r, int n, int order = 48);

/// angular_constant(n) (a cross e_y) in the same convention: a_1 in 2D.
Vec angular_momentum_limit(const Vec& a, int n);

struct VolumeOptions {
  int order = 16;
  double core_width = 1.0;    // width of the innermost horizontal panels
  double growth = 1.25;       // horizontal panel growth away from the origin
  int vertical_panels = 24;
  double vertical_ratio = 0.7;  // panel shrink ratio towards the surface
  int azimuths = 48;          // 3D only
};

/// 1/2 int over B_r in the fluid of |grad phi|^2.
double kinetic_energy_volume(const HarmonicField& f, const SurfaceGraph& eta, double r,
                             const VolumeOptions& options = {});

struct PatchNode {
  Vec x;            // horizontal position
  double weight;    // horizontal measure dx'
  Vec normal;       // unit surface normal
  double area;      // sqrt(1 + |grad eta|^2)
};

struct BoundaryNode {
  Vec x;            // horizontal position on the projected boundary
  Vec nu;           // outward horizontal normal
  double weight;    // ds (1 in 2D)
};

/// Quadrature on the surface inside B_r, projected to the horizontal plane:
/// nodes with |x'|^2 + eta^2 < r^2, plus the projected boundary.
struct SurfacePatchQuadrature {
  std::vector<PatchNode> nodes;
  std::vector<BoundaryNode> boundary;

  double area() const;
};

SurfacePatchQuadrature surface_patch(const SurfaceGraph& eta, double r, int order = 16,
                                     double panel_width = 1.0);

struct SurfaceEnergy {
  double value = 0.0;
  double remainder_estimate = 0.0;  // magnitude of the neglected far-field part
  bool window_too_small = false;
};

/// 1/2 int_S phi (c . n) dS over the window, using phi on the surface only.
SurfaceEnergy kinetic_energy_surface(const std::function<double(const Vec&)>& phi_surface,
                                     const SurfaceGraph& eta, const WaveParams& params,
                                     double window);

struct MassEstimate {
  double value = 0.0;
  double window_integral = 0.0;
  double remainder = 0.0;
  double uncertainty = 0.0;   // spread against the estimate on a 0.7x window
};

/// int eta dx' on |x'| < window plus remainder(window), the analytic tail
/// beyond it.
MassEstimate excess_mass(const SurfaceGraph& eta, double window,
                         const std::function<double(double)>& remainder);

/// int |eta| dx' over |x'| < window.
double absolute_mass(const SurfaceGraph& eta, double window);

struct BoundaryFlux {
  double capillary = 0.0;   // (|c|^2 sigma / g) int n . nu ds
  double advective = 0.0;   // int eta (c . x)(c . nu) ds
};

/// The two surface boundary terms on dB_r in S.
BoundaryFlux surface_boundary_flux(const SurfaceGraph& eta, const WaveParams& params,
                                   double r);

/// |KE + kinetic_constant(n) (c . a)| / max(KE, floor)
double verify_kinetic_identity(double kinetic_energy, const Vec& a, const Vec& c, int n);

/// a along c with a . c_hat = -KE / (kinetic_constant(n) |c|). In 3D the
/// transverse component is flagged unknown.
DipoleEstimate dipole_from_kinetic(double kinetic_energy, const Vec& c, int n);

}  // namespace deepwave::identities
