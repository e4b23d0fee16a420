#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "sfm/geometry.hpp"

namespace sfm {

// Thrown when a support function fails the positivity or strict-curvature
// gate (h > 0 and h + h'' > 0 on a dense angular grid).
struct BodyValidationError : std::domain_error {
  using std::domain_error::domain_error;
};

// Thrown by gauss_angle when the query point is not on the boundary.
struct NotOnBoundaryError : std::domain_error {
  using std::domain_error::domain_error;
};

// A planar convex body of class C^2_+ with 0 in its interior, represented by
// its support function h(theta) over outer-normal angles. The boundary point
// with outer normal (cos t, sin t) is
//
//   gamma(t) = h(t) (cos t, sin t) + h'(t) (-sin t, cos t),
//
// and h + h'' is the radius of curvature, so the C^2_+ condition is the
// pointwise inequality h + h'' > 0.
//
// Instances are immutable after construction; every member is a pure function
// and safe for unrestricted concurrent reads.
class ConvexBody {
 public:
  struct SupportValues {
    double h;    // support value
    double dh;   // first derivative in theta
    double ddh;  // second derivative in theta
  };

  // Built-in bodies.
  static ConvexBody disc();
  static ConvexBody ellipse(double a, double b);
  // Unit ball of the l^p norm, 1 < p < infinity. Note that for p != 2 the
  // radius of curvature degenerates to 0 or infinity at the four axis
  // normals; the validation grid is offset from those angles.
  static ConvexBody pball(double p);
  // Periodic cubic spline through uniformly spaced samples h(2*pi*j/N).
  static ConvexBody from_samples(const std::vector<double>& h_samples);

  // The same body translated by c (support function h + <c, n>). Requires
  // that 0 stays interior.
  ConvexBody translated(Vec2 c) const;

  SupportValues support_all(double theta) const;
  double support(double theta) const { return support_all(theta).h; }
  double curvature_radius(double theta) const {
    const auto s = support_all(theta);
    return s.h + s.ddh;
  }

  // N_K^{-1} in normal-angle form: boundary point with outer normal angle theta.
  Vec2 gauss_point(double theta) const;

  // Forward Gauss map: normal angle of a boundary point p. Throws
  // NotOnBoundaryError if |gauge(p) - 1| > boundary_tol.
  double gauss_angle(Vec2 p, double boundary_tol = 1e-8) const;

  // pi_K: boundary point whose outer normal has the direction of u. Throws
  // std::domain_error on the zero vector.
  Vec2 pi_K(Vec2 u) const;

  // Dual norm <u, pi_K(u)> = sup { <u,w> : w in K }; 0 at u = 0.
  double dual_norm(Vec2 u) const;

  // Minkowski gauge inf { s > 0 : u/s in K }; 0 at u = 0.
  double gauge_norm(Vec2 u) const;

  // Euclidean diameter of K (max width over normal directions).
  double diameter() const { return diameter_; }

  // Accumulated translation applied relative to the base body.
  Vec2 center_offset() const { return offset_; }

  // True if h(theta + pi) == h(theta) on the validation grid, i.e. the body
  // is centrally symmetric about the origin.
  bool centrally_symmetric(double tol = 1e-10) const;

  const std::string& name() const { return name_; }

 private:
  struct SupportRule;  // closed-form or spline evaluation backend

  ConvexBody(std::shared_ptr<const SupportRule> rule, Vec2 offset, std::string name);
  void validate();

  // Solves arg(gamma(theta)) = psi; arg(gamma) is a strictly increasing
  // degree-one circle map, so bisection applies.
  double boundary_angle_for_direction(double psi) const;

  std::shared_ptr<const SupportRule> rule_;
  Vec2 offset_;
  std::string name_;
  double diameter_ = 0.0;
};

}  // namespace sfm
