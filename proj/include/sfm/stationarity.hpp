#pragma once

#include <stdexcept>
#include <vector>

#include "sfm/convex_body.hpp"
#include "sfm/geometry.hpp"

namespace sfm {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateSectorError : std::domain_error {
  using std::domain_error::domain_error;
};

// The matched angle pair at a singular line with direction v: the ruling
// leaving the line on one side makes angle alpha in (0, pi) with v, the one
// on the other side angle beta in (pi, 2*pi), and the contact points
//
//   eta_plus  = pi_K(J(v e^{i alpha})),
//   eta_minus = pi_K(J(v e^{i beta}))
//
// satisfy <eta_plus - eta_minus, J(v)> = 0, i.e. their difference is tangent
// to the singular line.
struct MatchingPair {
  double v_angle;
  double alpha;
  double beta;
  Vec2 eta_plus;
  Vec2 eta_minus;
  double residual;  // <eta_plus - eta_minus, J(v)> at the solved beta
};

// y-coordinate (in the frame where v is the positive x-axis) of the contact
// point eta(phi) = gauss_point(v_angle + pi/2 + phi). The matching condition
// is matching_y(beta) = matching_y(alpha). Strictly decreasing on (0, pi),
// strictly increasing on (pi, 2*pi).
double matching_y(const ConvexBody& K, double v_angle, double phi);

// Contact point for a ruling at relative angle phi from v.
Vec2 matching_eta(const ConvexBody& K, double v_angle, double phi);

// Solves the matching condition for the unique beta in (pi, 2*pi) by
// bisection on the monotone branch. Throws std::domain_error for
// alpha outside the open interval (0, pi) and SolverError if the bracket is
// invalid (which would indicate a violated body invariant).
MatchingPair beta_of_alpha(const ConvexBody& K, double v_angle, double alpha);

// d(beta)/d(alpha) through the implicit-function quotient
//   (dY/dalpha) / (dY/dbeta) = rho(theta0+alpha) sin(alpha) /
//                              (rho(theta0+beta) sin(beta)),
// with rho = h + h'' the curvature radius. Always negative.
double dbeta_dalpha(const ConvexBody& K, double v_angle, double alpha);

// <eta_plus - eta_minus, J(v)> for an arbitrary (alpha, beta) pair; vanishes
// exactly on matched pairs.
double stationarity_residual(const ConvexBody& K, double v_angle, double alpha, double beta);

// Direction v that splits the sector from u to w (counterclockwise) so that
// pi_K(J(u)) - pi_K(J(w)) is parallel to v, with v strictly inside the
// sector. Inputs must be unit vectors spanning a sector of positive angle.
Vec2 sector_split(const ConvexBody& K, Vec2 u, Vec2 w);

// Piecewise-linear profile lambda -> alpha(lambda) with strictly increasing
// nodes; evaluation clamps to the end values outside the node range.
class PiecewiseLinearProfile {
 public:
  PiecewiseLinearProfile(std::vector<double> lambdas, std::vector<double> alphas);

  double operator()(double lambda) const;
  const std::vector<double>& lambdas() const { return lambdas_; }
  const std::vector<double>& alphas() const { return alphas_; }

  // Validates alpha in (0, pi) and non-increasing in lambda.
  void require_admissible() const;

 private:
  std::vector<double> lambdas_;
  std::vector<double> alphas_;
};

// Convolution with the compactly supported bump C exp(-1/(1-(s/eps)^2)),
// normalized to unit mass. Preserves constants exactly, preserves
// monotonicity, reproduces affine segments where the stencil stays interior.
// Returns the smoothed profile sampled on `output_nodes` (or the input nodes
// when empty).
PiecewiseLinearProfile mollify_profile(const PiecewiseLinearProfile& profile, double eps,
                                       const std::vector<double>& output_nodes = {});

}  // namespace sfm
