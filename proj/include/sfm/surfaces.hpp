#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sfm/convex_body.hpp"
#include "sfm/geometry.hpp"
#include "sfm/stationarity.hpp"

namespace sfm {

struct ConeSpecError : std::domain_error {
  using std::domain_error::domain_error;
};

// Singular-line data of a herringbone surface Sigma_{v,alpha}: the direction
// angle of v, the ruling angle alpha(lambda) in (0, pi) (non-increasing), and
// the matched angle beta(lambda) in (pi, 2*pi) solved through the matching
// condition -- or pinned to an explicit override to build deliberately
// non-stationary splices for negative controls.
class AlphaProfile {
 public:
  AlphaProfile(ConvexBody body, double v_angle, double alpha_constant);
  AlphaProfile(ConvexBody body, double v_angle, PiecewiseLinearProfile alpha);

  static AlphaProfile with_beta_override(ConvexBody body, double v_angle, double alpha_constant,
                                         double beta_override);

  double alpha(double lambda) const;
  double beta(double lambda) const;
  double v_angle() const { return v_angle_; }
  const ConvexBody& body() const { return body_; }
  bool constant_alpha() const { return !sampled_.has_value(); }
  bool has_override() const { return beta_override_.has_value(); }

 private:
  ConvexBody body_;
  double v_angle_;
  double alpha_const_ = 0.0;
  std::optional<PiecewiseLinearProfile> sampled_;
  std::optional<double> beta_const_;  // pre-solved for constant profiles
  std::optional<double> beta_override_;
};

// Parametrization of Sigma_{v,alpha}:
//   mu >= 0: ( lambda e^{i a0} + mu e^{i(a0 + alpha(lambda))}, -mu lambda sin alpha(lambda) )
//   mu <= 0: ( lambda e^{i a0} + |mu| e^{i(a0 + beta(lambda))}, -|mu| lambda sin beta(lambda) )
// Both branches agree at mu = 0 where the surface meets the lifted line R_v.
Vec3 psi(const AlphaProfile& profile, double lambda, double mu);

// Explicit t-graph of the constant-angle disc cone: -x y + cot(alpha) y |y|
// (singular line along the x-axis).
double u_alpha_disc(double alpha, double x, double y);

// Height of Sigma_{v,alpha} over (x, y): locates the ruling through the point
// (closed-form for constant alpha, monotone bisection in lambda otherwise)
// and returns -lambda * y' where y' is the coordinate across the singular
// line. Throws SolverError if no ruling covers the point.
double graph_eval(const AlphaProfile& profile, double x, double y);

// Planar gradient of the graph. Analytic for constant profiles; one-sided
// finite differences (never straddling the singular line) otherwise.
Vec2 graph_grad(const AlphaProfile& profile, double x, double y);

// The cone C_K(theta0, theta_1, ..., theta_k): k sectors whose splitting
// directions come from sector_split, each carrying a constant-angle
// herringbone patch. The height function is continuous, piecewise quadratic,
// C^1 across all rays, and 2-homogeneous under the parabolic dilation.
class ConeSpec {
 public:
  struct Sector {
    double u_prev_angle;  // seam ray bounding the sector clockwise
    double u_angle;       // seam ray bounding the sector counterclockwise
    double v_angle;       // singular ray inside the sector
    double alpha;         // ccw angle from v to u
    double beta_prime;    // ccw angle from u_prev to v
    Vec2 eta_plus;        // pi_K(J(u))
    Vec2 eta_minus;       // pi_K(J(u_prev))
    double split_residual;  // <eta_plus - eta_minus, J(v)>
  };

  static ConeSpec make(ConvexBody body, double theta0, std::vector<double> thetas);
  // C(k) on an arbitrary body: theta0 = pi/k, all sector angles 2*pi/k.
  static ConeSpec regular(ConvexBody body, int k);

  double eval(double x, double y) const;
  Vec2 grad(double x, double y) const;

  const std::vector<Sector>& sectors() const { return sectors_; }
  const ConvexBody& body() const { return body_; }
  double theta0() const { return theta0_; }
  const std::vector<double>& thetas() const { return thetas_; }
  int k() const { return static_cast<int>(thetas_.size()); }

  // Sector index containing polar angle phi.
  int locate(double phi) const;

 private:
  ConeSpec(ConvexBody body, double theta0, std::vector<double> thetas);

  ConvexBody body_;
  double theta0_;
  std::vector<double> thetas_;
  std::vector<double> cumulative_;  // partial sums of thetas
  std::vector<Sector> sectors_;
};

// Maximum one-sided planar-gradient jump of `graph` across the ray
// {base + r dir : r in r_samples}, measured with finite-difference step
// `step` normal to the ray. First-order small for C^1 graphs; bounded away
// from zero when the normal slope genuinely jumps.
double c1_gradient_jump(const std::function<double(Vec2)>& graph, Vec2 base, Vec2 dir,
                        const std::vector<double>& r_samples, double step);

// Same probe with second differences: estimates the jump of the second
// normal derivative across the ray (no quantitative acceptance bound; the
// graphs here are C^{1,1} but generally not C^2 across rays).
double c2_second_difference_jump(const std::function<double(Vec2)>& graph, Vec2 base, Vec2 dir,
                                 const std::vector<double>& r_samples, double step);

}  // namespace sfm
