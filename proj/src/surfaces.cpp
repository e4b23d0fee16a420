#include "sfm/surfaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sfm {

AlphaProfile::AlphaProfile(ConvexBody body, double v_angle, double alpha_constant)
    : body_(std::move(body)), v_angle_(v_angle), alpha_const_(alpha_constant) {
  if (!(alpha_constant > 0.0) || !(alpha_constant < pi))
    throw std::domain_error("constant alpha must lie in (0, pi)");
  beta_const_ = beta_of_alpha(body_, v_angle_, alpha_const_).beta;
}

AlphaProfile::AlphaProfile(ConvexBody body, double v_angle, PiecewiseLinearProfile alpha)
    : body_(std::move(body)), v_angle_(v_angle), sampled_(std::move(alpha)) {
  sampled_->require_admissible();
}

AlphaProfile AlphaProfile::with_beta_override(ConvexBody body, double v_angle,
                                              double alpha_constant, double beta_override) {
  AlphaProfile p(std::move(body), v_angle, alpha_constant);
  if (!(beta_override > pi) || !(beta_override < two_pi))
    throw std::domain_error("beta override must lie in (pi, 2*pi)");
  p.beta_override_ = beta_override;
  return p;
}

double AlphaProfile::alpha(double lambda) const {
  return sampled_ ? (*sampled_)(lambda) : alpha_const_;
}

double AlphaProfile::beta(double lambda) const {
  if (beta_override_) return *beta_override_;
  if (beta_const_) return *beta_const_;
  return beta_of_alpha(body_, v_angle_, alpha(lambda)).beta;
}

Vec3 psi(const AlphaProfile& profile, double lambda, double mu) {
  const double a0 = profile.v_angle();
  const Vec2 base = lambda * Vec2::from_angle(a0);
  if (mu >= 0.0) {
    const double a = profile.alpha(lambda);
    const Vec2 p = base + mu * Vec2::from_angle(a0 + a);
    return {p.x, p.y, -mu * lambda * std::sin(a)};
  }
  const double b = profile.beta(lambda);
  const double m = -mu;
  const Vec2 p = base + m * Vec2::from_angle(a0 + b);
  return {p.x, p.y, -m * lambda * std::sin(b)};
}

double u_alpha_disc(double alpha, double x, double y) {
  if (!(alpha > 0.0) || !(alpha < pi)) throw std::domain_error("alpha must lie in (0, pi)");
  return -x * y + (std::cos(alpha) / std::sin(alpha)) * y * std::abs(y);
}

namespace {

// Ruling-location equation for a point (xp, yp) in the rotated frame: the
// point lies on the ray from (lambda, 0) with angle phi iff
// f = cos(phi) yp - sin(phi) (xp - lambda) vanishes.
double ray_indicator(double phi, double xp, double yp, double lambda) {
  return std::cos(phi) * yp - std::sin(phi) * (xp - lambda);
}

struct RulingHit {
  double lambda;
  double mu;      // signed: >= 0 on the alpha side, <= 0 on the beta side
  double angle;   // branch angle actually used (alpha or beta value)
};

RulingHit locate_ruling(const AlphaProfile& profile, double x, double y) {
  const double a0 = profile.v_angle();
  const Vec2 zp = rotate({x, y}, -a0);

  if (zp.y == 0.0) return {zp.x, 0.0, profile.alpha(zp.x)};

  const bool upper = zp.y > 0.0;
  auto branch_angle = [&](double lambda) {
    return upper ? profile.alpha(lambda) : profile.beta(lambda);
  };
  auto f = [&](double lambda) { return ray_indicator(branch_angle(lambda), zp.x, zp.y, lambda); };

  // f is strictly increasing in lambda on the upper branch and strictly
  // decreasing on the lower one; expand a bracket around x'.
  const double scale = std::max(1.0, std::abs(zp.x) + std::abs(zp.y));
  double d = scale;
  double lo = zp.x - d, hi = zp.x + d;
  double f_lo = f(lo), f_hi = f(hi);
  const double sgn = upper ? 1.0 : -1.0;
  int guard = 0;
  while ((sgn * f_lo > 0.0 || sgn * f_hi < 0.0) && guard++ < 60) {
    d *= 2.0;
    lo = zp.x - d;
    hi = zp.x + d;
    f_lo = f(lo);
    f_hi = f(hi);
  }
  if (sgn * f_lo > 0.0 || sgn * f_hi < 0.0)
    throw SolverError("rulings fail to cover the requested point; "
                      "profile is not admissible");

  for (int it = 0; it < 200 && hi - lo > 1e-13 * scale; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sgn * f(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double lambda = 0.5 * (lo + hi);
  const double phi = branch_angle(lambda);
  const double mu_abs = zp.y / std::sin(phi);  // sin(phi) has the sign of y'
  return {lambda, upper ? mu_abs : -mu_abs, phi};
}

}  // namespace

double graph_eval(const AlphaProfile& profile, double x, double y) {
  const double a0 = profile.v_angle();
  const Vec2 zp = rotate({x, y}, -a0);
  if (zp.y == 0.0) return 0.0;

  if (profile.constant_alpha()) {
    // Single closed form on each side: t = -x'y' + cot(angle) y'^2.
    const double phi = zp.y > 0.0 ? profile.alpha(0.0) : profile.beta(0.0);
    const double cot = std::cos(phi) / std::sin(phi);
    return -zp.x * zp.y + cot * zp.y * zp.y;
  }
  const RulingHit hit = locate_ruling(profile, x, y);
  return -hit.lambda * zp.y;
}

Vec2 graph_grad(const AlphaProfile& profile, double x, double y) {
  const double a0 = profile.v_angle();
  const Vec2 zp = rotate({x, y}, -a0);

  if (profile.constant_alpha()) {
    const double phi = zp.y >= 0.0 ? profile.alpha(0.0) : profile.beta(0.0);
    const double cot = std::cos(phi) / std::sin(phi);
    const Vec2 local{-zp.y, -zp.x + 2.0 * cot * zp.y};
    return rotate(local, a0);
  }

  // One-sided differences that never straddle the singular line y' = 0.
  const double scale = std::max(1.0, std::abs(zp.x) + std::abs(zp.y));
  const double step = 1e-6 * scale;
  auto value_local = [&](Vec2 local) {
    const Vec2 world = rotate(local, a0);
    return graph_eval(profile, world.x, world.y);
  };
  const double ux = (value_local({zp.x + step, zp.y}) - value_local({zp.x - step, zp.y})) /
                    (2.0 * step);
  double uy;
  if (std::abs(zp.y) > 2.0 * step) {
    uy = (value_local({zp.x, zp.y + step}) - value_local({zp.x, zp.y - step})) / (2.0 * step);
  } else {
    const double dir = zp.y >= 0.0 ? 1.0 : -1.0;
    const double f0 = value_local({zp.x, zp.y});
    const double f1 = value_local({zp.x, zp.y + dir * step});
    const double f2 = value_local({zp.x, zp.y + 2.0 * dir * step});
    uy = dir * (-1.5 * f0 + 2.0 * f1 - 0.5 * f2) / step;
  }
  return rotate({ux, uy}, a0);
}

ConeSpec::ConeSpec(ConvexBody body, double theta0, std::vector<double> thetas)
    : body_(std::move(body)), theta0_(theta0), thetas_(std::move(thetas)) {
  const int k = static_cast<int>(thetas_.size());
  if (k < 3) throw ConeSpecError("a cone needs at least 3 sectors");
  double sum = 0.0;
  for (double t : thetas_) {
    if (!(t > 0.0)) throw ConeSpecError("sector angles must be positive");
    sum += t;
  }
  if (std::abs(sum - two_pi) > 1e-12)
    throw ConeSpecError("sector angles must sum to 2*pi (got " + std::to_string(sum) + ")");

  cumulative_.resize(k);
  double acc = 0.0;
  for (int i = 0; i < k; ++i) {
    acc += thetas_[i];
    cumulative_[i] = acc;
  }

  sectors_.resize(k);
  for (int i = 0; i < k; ++i) {
    const double a_prev = theta0_ + (i == 0 ? 0.0 : cumulative_[i - 1]);
    const double a_cur = theta0_ + cumulative_[i];
    const Vec2 u_prev = Vec2::from_angle(a_prev);
    const Vec2 u_cur = Vec2::from_angle(a_cur);
    const Vec2 v = sector_split(body_, u_prev, u_cur);

    Sector& s = sectors_[i];
    s.u_prev_angle = wrap_angle(a_prev);
    s.u_angle = wrap_angle(a_cur);
    s.v_angle = v.angle();
    s.beta_prime = ccw_angle(a_prev, s.v_angle);
    s.alpha = ccw_angle(s.v_angle, a_cur);
    if (!(s.alpha > 0.0) || !(s.alpha < pi) || !(s.beta_prime > 0.0) || !(s.beta_prime < pi))
      throw ConeSpecError("sector split angles leave (0, pi); sector too wide for a graph");
    s.eta_plus = body_.pi_K(rotate90(u_cur));
    s.eta_minus = body_.pi_K(rotate90(u_prev));
    s.split_residual = dot(s.eta_plus - s.eta_minus, rotate90(v));
  }
}

ConeSpec ConeSpec::make(ConvexBody body, double theta0, std::vector<double> thetas) {
  return ConeSpec(std::move(body), theta0, std::move(thetas));
}

ConeSpec ConeSpec::regular(ConvexBody body, int k) {
  if (k < 3) throw ConeSpecError("k must be at least 3");
  // Exact closure: make the angles sum to 2*pi with no accumulated rounding.
  std::vector<double> thetas(k, two_pi / k);
  double sum = 0.0;
  for (int i = 0; i + 1 < k; ++i) sum += thetas[i];
  thetas[k - 1] = two_pi - sum;
  return ConeSpec(std::move(body), pi / k, std::move(thetas));
}

int ConeSpec::locate(double phi) const {
  const double d = ccw_angle(theta0_, phi);
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), d);
  int i = static_cast<int>(it - cumulative_.begin());
  if (i >= k()) i = k() - 1;
  return i;
}

double ConeSpec::eval(double x, double y) const {
  if (x == 0.0 && y == 0.0) return 0.0;
  const Sector& s = sectors_[locate(std::atan2(y, x))];
  const Vec2 zp = rotate({x, y}, -s.v_angle);
  const double phi = zp.y >= 0.0 ? s.alpha : (two_pi - s.beta_prime);
  const double cot = std::cos(phi) / std::sin(phi);
  return -zp.x * zp.y + cot * zp.y * zp.y;
}

Vec2 ConeSpec::grad(double x, double y) const {
  if (x == 0.0 && y == 0.0) return {0.0, 0.0};
  const Sector& s = sectors_[locate(std::atan2(y, x))];
  const Vec2 zp = rotate({x, y}, -s.v_angle);
  const double phi = zp.y >= 0.0 ? s.alpha : (two_pi - s.beta_prime);
  const double cot = std::cos(phi) / std::sin(phi);
  const Vec2 local{-zp.y, -zp.x + 2.0 * cot * zp.y};
  return rotate(local, s.v_angle);
}

double c1_gradient_jump(const std::function<double(Vec2)>& graph, Vec2 base, Vec2 dir,
                        const std::vector<double>& r_samples, double step) {
  const Vec2 n = rotate90(dir);
  double worst = 0.0;
  for (double r : r_samples) {
    const Vec2 p = base + r * dir;
    const double u0 = graph(p);
    const double d_plus = (graph(p + step * n) - u0) / step;
    const double d_minus = (u0 - graph(p - step * n)) / step;
    // The tangential derivative is continuous along the shared ray, so the
    // planar gradient jump reduces to the jump of the normal slope.
    worst = std::max(worst, std::abs(d_plus - d_minus));
  }
  return worst;
}

double c2_second_difference_jump(const std::function<double(Vec2)>& graph, Vec2 base, Vec2 dir,
                                 const std::vector<double>& r_samples, double step) {
  const Vec2 n = rotate90(dir);
  double worst = 0.0;
  for (double r : r_samples) {
    const Vec2 p = base + r * dir;
    const double u0 = graph(p);
    const double s_plus =
        (graph(p + 2.0 * step * n) - 2.0 * graph(p + step * n) + u0) / (step * step);
    const double s_minus =
        (graph(p - 2.0 * step * n) - 2.0 * graph(p - step * n) + u0) / (step * step);
    worst = std::max(worst, std::abs(s_plus - s_minus));
  }
  return worst;
}

}  // namespace sfm
