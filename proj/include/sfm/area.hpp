#pragma once

#include <functional>
#include <vector>

#include "sfm/convex_body.hpp"
#include "sfm/geometry.hpp"
#include "sfm/surfaces.hpp"

namespace sfm {

// An evaluable t-graph with its planar gradient. All built-in surfaces carry
// analytic gradients; numeric graphs may wrap a finite-difference gradient.
struct GraphFn {
  std::function<double(Vec2)> value;
  std::function<Vec2(Vec2)> grad;
};

GraphFn graph_of(const ConeSpec& spec);
GraphFn graph_of(const AlphaProfile& profile);

// Pointwise sub-Finsler area density of a t-graph:
//   || grad_u + (-y, x) ||_{K,*}.
double area_integrand(const ConvexBody& K, Vec2 grad_u, Vec2 xy);

// Closed disc of radius r0 around the origin with a list of polar angles at
// which the graph may lose smoothness (singular rays, seams). The angles
// become quadrature-cell boundaries so the integrand is smooth per cell.
struct DiscRegion {
  double r0 = 1.0;
  std::vector<double> split_angles;
};

DiscRegion disc_region(const ConeSpec& spec, double r0);
DiscRegion disc_region(const AlphaProfile& profile, double r0);

// Axis-aligned rectangle with optional interior split lines (for graphs
// whose seams are axis-parallel in the chosen frame).
struct RectRegion {
  double x0, x1, y0, y1;
  std::vector<double> x_splits;
  std::vector<double> y_splits;
};

struct AreaResult {
  double value;           // order-2n estimate
  double error_estimate;  // |order-2n - order-n|, conservative per-cell-smooth
  int order;              // base order n
};

// Tensor Gauss-Legendre quadrature in polar cells. The per-cell partial sums
// are accumulated by pairwise summation in a fixed order, so the result is
// bit-stable across thread counts.
AreaResult graph_area(const ConvexBody& K, const GraphFn& graph, const DiscRegion& region,
                      int order = 16, bool parallel = true);
AreaResult graph_area(const ConvexBody& K, const GraphFn& graph, const RectRegion& region,
                      int order = 16, bool parallel = true);

// A_D(u_k, r0) = (4 pi r0^3 / 3) (1 - cos(pi/k)) / ((pi/k) sin(pi/k)).
// Tends to 2 pi r0^3 / 3 as k grows. Throws std::domain_error for k < 3.
double disc_cone_area_closed_form(int k, double r0);

// Per-sector closed form for C_K over D(r0) with a general body: on each
// ruled piece the integrand direction is constant, so the integral reduces
// to support values at the ruling normals.
double cone_area_closed_form(const ConeSpec& spec, double r0);

// Same reduction for a constant-angle herringbone over a disc centered on
// the singular line.
double herringbone_area_closed_form(const AlphaProfile& profile, double r0);

// Compactly supported radial bump A (1 - s^2)^3, s = |z - center| / radius.
struct Bump {
  Vec2 center;
  double radius;

  double value(Vec2 z) const;
  Vec2 grad(Vec2 z) const;
};

// 8 centers on the half-radius ring x 3 scales; centers at angle 0 and pi
// sit on typical singular rays so perturbations cross the singular set.
std::vector<Bump> default_bump_family(double r0);

struct PerturbationRow {
  std::size_t bump_index;
  double eps;        // signed amplitude (absolute units of t)
  double delta;      // area(base + eps * bump) - area(base)
  double err_bound;  // combined quadrature error estimate
  bool negative;     // delta < -err_bound
};

struct PerturbationReport {
  double base_area = 0.0;
  double base_error = 0.0;
  std::vector<PerturbationRow> rows;
  bool any_negative = false;
  double worst_delta = 0.0;
};

// Evaluates area differences for base + eps*bump over all bumps and signed
// amplitudes. Amplitudes are given relative to r0^2 (the natural height
// scale of a cone patch). A minimizer must produce no row with
// delta < -err_bound; the harness is one-sided evidence, not a proof.
PerturbationReport perturbation_test(const ConvexBody& K, const GraphFn& base,
                                     const DiscRegion& region, const std::vector<Bump>& bumps,
                                     const std::vector<double>& relative_amplitudes,
                                     int order = 16, bool parallel = true);

}  // namespace sfm
