#include "sfm/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sfm/numerics.hpp"

namespace sfm {

Vec2 matching_eta(const ConvexBody& K, double v_angle, double phi) {
  return K.gauss_point(v_angle + 0.5 * pi + phi);
}

double matching_y(const ConvexBody& K, double v_angle, double phi) {
  const Vec2 jv = Vec2::from_angle(v_angle + 0.5 * pi);
  return dot(matching_eta(K, v_angle, phi), jv);
}

double stationarity_residual(const ConvexBody& K, double v_angle, double alpha, double beta) {
  const Vec2 jv = Vec2::from_angle(v_angle + 0.5 * pi);
  const Vec2 ep = matching_eta(K, v_angle, alpha);
  const Vec2 em = matching_eta(K, v_angle, beta);
  return dot(ep - em, jv);
}

MatchingPair beta_of_alpha(const ConvexBody& K, double v_angle, double alpha) {
  if (!(alpha > 0.0) || !(alpha < pi))
    throw std::domain_error("alpha must lie strictly inside (0, pi)");

  const double target = matching_y(K, v_angle, alpha);

  // Y is strictly increasing on [pi, 2*pi]: its unique minimum over the
  // circle sits at phi = pi and the maximum at phi = 0 (mod 2*pi).
  double lo = pi, hi = two_pi;
  double y_lo = matching_y(K, v_angle, lo);
  double y_hi = matching_y(K, v_angle, hi);
  if (!(y_lo < target) || !(y_hi > target))
    throw SolverError("beta bracket does not straddle the matching value; "
                      "body invariants are violated");

  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon(); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double y_mid = matching_y(K, v_angle, mid);
    if (y_mid < target) {
      lo = mid;
      y_lo = y_mid;
    } else {
      hi = mid;
      y_hi = y_mid;
    }
  }
  const double beta = (std::abs(y_lo - target) <= std::abs(y_hi - target)) ? lo : hi;

  MatchingPair pair;
  pair.v_angle = v_angle;
  pair.alpha = alpha;
  pair.beta = beta;
  pair.eta_plus = matching_eta(K, v_angle, alpha);
  pair.eta_minus = matching_eta(K, v_angle, beta);
  pair.residual = dot(pair.eta_plus - pair.eta_minus, Vec2::from_angle(v_angle + 0.5 * pi));
  return pair;
}

double dbeta_dalpha(const ConvexBody& K, double v_angle, double alpha) {
  const MatchingPair pair = beta_of_alpha(K, v_angle, alpha);
  const double theta0 = v_angle + 0.5 * pi;
  const double rho_a = K.curvature_radius(theta0 + alpha);
  const double rho_b = K.curvature_radius(theta0 + pair.beta);
  return (rho_a * std::sin(alpha)) / (rho_b * std::sin(pair.beta));
}

Vec2 sector_split(const ConvexBody& K, Vec2 u, Vec2 w) {
  const double theta = ccw_angle(u.angle(), w.angle());
  const double tol = 1e-12;
  if (theta < tol) throw DegenerateSectorError("sector angle must be positive");

  const Vec2 eta_u = K.pi_K(rotate90(u));
  const Vec2 eta_w = K.pi_K(rotate90(w));
  const Vec2 chord = eta_u - eta_w;
  const double len = chord.norm();
  if (len < tol) throw DegenerateSectorError("contact points coincide; sector is degenerate");

  // The two boundary points with support line parallel to the chord have
  // normals perpendicular to it, and -J of those normals is +-chord/|chord|.
  const Vec2 cand[2] = {chord / len, -(chord / len)};

  const double phi_u = u.angle();
  const bool in0 = ccw_angle(phi_u, cand[0].angle()) > tol &&
                   ccw_angle(phi_u, cand[0].angle()) < theta - tol;
  const bool in1 = ccw_angle(phi_u, cand[1].angle()) > tol &&
                   ccw_angle(phi_u, cand[1].angle()) < theta - tol;
  if (in0 && in1) {
    // Possible only when the sector closes up (theta ~ 2*pi): keep the
    // candidate maximizing the minimal angular distance to u and w.
    auto min_dist = [&](const Vec2& c) {
      const double a = ccw_angle(phi_u, c.angle());
      return std::min(a, theta - a);
    };
    return min_dist(cand[0]) >= min_dist(cand[1]) ? cand[0] : cand[1];
  }
  if (in0) return cand[0];
  if (in1) return cand[1];
  throw SolverError("sector split produced no interior direction");
}

PiecewiseLinearProfile::PiecewiseLinearProfile(std::vector<double> lambdas,
                                               std::vector<double> alphas)
    : lambdas_(std::move(lambdas)), alphas_(std::move(alphas)) {
  if (lambdas_.size() != alphas_.size() || lambdas_.empty())
    throw std::invalid_argument("profile needs matching, nonempty node/value lists");
  for (std::size_t i = 1; i < lambdas_.size(); ++i)
    if (!(lambdas_[i] > lambdas_[i - 1]))
      throw std::invalid_argument("profile nodes must be strictly increasing");
}

double PiecewiseLinearProfile::operator()(double lambda) const {
  if (lambda <= lambdas_.front()) return alphas_.front();
  if (lambda >= lambdas_.back()) return alphas_.back();
  const auto it = std::upper_bound(lambdas_.begin(), lambdas_.end(), lambda);
  const std::size_t i = static_cast<std::size_t>(it - lambdas_.begin());
  const double t = (lambda - lambdas_[i - 1]) / (lambdas_[i] - lambdas_[i - 1]);
  return alphas_[i - 1] + t * (alphas_[i] - alphas_[i - 1]);
}

void PiecewiseLinearProfile::require_admissible() const {
  for (std::size_t i = 0; i < alphas_.size(); ++i) {
    if (!(alphas_[i] > 0.0) || !(alphas_[i] < pi))
      throw std::domain_error("profile values must lie in (0, pi)");
    if (i > 0 && alphas_[i] > alphas_[i - 1] + 1e-12)
      throw std::domain_error("profile must be non-increasing in lambda");
  }
}

PiecewiseLinearProfile mollify_profile(const PiecewiseLinearProfile& profile, double eps,
                                       const std::vector<double>& output_nodes) {
  if (!(eps > 0.0)) throw std::domain_error("mollifier width must be positive");

  const QuadratureRule& rule = gauss_legendre(64);
  const int n = static_cast<int>(rule.nodes.size());
  auto kernel = [](double s) {
    const double s2 = s * s;
    return s2 < 1.0 ? std::exp(-1.0 / (1.0 - s2)) : 0.0;
  };

  // Normalize the discrete kernel to exact unit mass so constants are
  // reproduced without quadrature bias.
  double mass = 0.0;
  for (int i = 0; i < n; ++i) mass += rule.weights[i] * kernel(rule.nodes[i]);

  const std::vector<double>& out = output_nodes.empty() ? profile.lambdas() : output_nodes;
  std::vector<double> smoothed(out.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      acc += rule.weights[i] * kernel(rule.nodes[i]) * profile(out[j] - eps * rule.nodes[i]);
    smoothed[j] = acc / mass;
  }
  return PiecewiseLinearProfile(out, std::move(smoothed));
}

}  // namespace sfm
