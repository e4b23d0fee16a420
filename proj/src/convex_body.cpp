#include "sfm/convex_body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace sfm {

namespace {

constexpr int kValidationGrid = 4096;

// Periodic cubic spline on a uniform grid over [0, 2*pi). Second derivatives
// at the nodes come from the cyclic tridiagonal system (Sherman-Morrison).
class PeriodicSpline {
 public:
  explicit PeriodicSpline(std::vector<double> values) : y_(std::move(values)) {
    const int n = static_cast<int>(y_.size());
    h_ = two_pi / n;
    m_.assign(n, 0.0);

    // Solve A m = r with A cyclic tridiagonal [1, 4, 1] (scaled), where
    // r_i = 6 (y_{i-1} - 2 y_i + y_{i+1}) / h^2.
    std::vector<double> r(n);
    for (int i = 0; i < n; ++i) {
      const double ym = y_[(i + n - 1) % n];
      const double yp = y_[(i + 1) % n];
      r[i] = 6.0 * (ym - 2.0 * y_[i] + yp) / (h_ * h_);
    }
    m_ = solve_cyclic(n, r);
  }

  void eval(double theta, double& v, double& dv, double& ddv) const {
    const int n = static_cast<int>(y_.size());
    double t = wrap_angle(theta);
    int i = static_cast<int>(t / h_);
    if (i >= n) i = n - 1;
    const double x = t - i * h_;
    const int j = (i + 1) % n;

    const double a = (h_ - x) / h_;
    const double b = x / h_;
    v = a * y_[i] + b * y_[j] +
        ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[j]) * (h_ * h_) / 6.0;
    dv = (y_[j] - y_[i]) / h_ -
         (3.0 * a * a - 1.0) / 6.0 * h_ * m_[i] + (3.0 * b * b - 1.0) / 6.0 * h_ * m_[j];
    ddv = a * m_[i] + b * m_[j];
  }

 private:
  static std::vector<double> solve_cyclic(int n, const std::vector<double>& r) {
    // Tridiagonal system with diag 4, off-diag 1 (after scaling by 6/h^2 the
    // standard not-a-knot-free periodic formulation reduces to this), plus
    // cyclic corners handled via Sherman-Morrison.
    std::vector<double> diag(n, 4.0), rhs = r;
    if (n == 1) return {r[0] / 6.0};
    if (n == 2) {
      // degenerate: both off-diagonals hit the same entry twice
      std::vector<double> m(2);
      const double a = 4.0, b = 2.0;
      const double det = a * a - b * b;
      m[0] = (a * rhs[0] - b * rhs[1]) / det;
      m[1] = (a * rhs[1] - b * rhs[0]) / det;
      return m;
    }

    auto solve_tri = [&](std::vector<double> d, std::vector<double> b) {
      std::vector<double> c(n, 1.0);
      for (int i = 1; i < n; ++i) {
        const double w = 1.0 / d[i - 1];
        d[i] -= w;
        b[i] -= w * b[i - 1];
      }
      std::vector<double> x(n);
      x[n - 1] = b[n - 1] / d[n - 1];
      for (int i = n - 2; i >= 0; --i) x[i] = (b[i] - c[i] * x[i + 1]) / d[i];
      return x;
    };

    const double gamma = -4.0;
    std::vector<double> d(n, 4.0);
    d[0] -= gamma;
    d[n - 1] -= 1.0 / gamma;
    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = 1.0;

    const auto y = solve_tri(d, rhs);
    const auto z = solve_tri(d, u);
    const double fact = (y[0] + y[n - 1] / gamma) / (1.0 + z[0] + z[n - 1] / gamma);
    std::vector<double> m(n);
    for (int i = 0; i < n; ++i) m[i] = y[i] - fact * z[i];
    return m;
  }

  std::vector<double> y_;
  std::vector<double> m_;
  double h_ = 0.0;
};

}  // namespace

struct ConvexBody::SupportRule {
  enum class Kind { Disc, Ellipse, PBall, Spline } kind;
  double a = 1.0, b = 1.0;  // ellipse semi-axes
  double q = 2.0;           // dual exponent for p-balls
  std::shared_ptr<PeriodicSpline> spline;

  void eval(double theta, double& h, double& dh, double& ddh) const {
    switch (kind) {
      case Kind::Disc:
        h = 1.0;
        dh = 0.0;
        ddh = 0.0;
        return;
      case Kind::Ellipse: {
        const double c = std::cos(theta), s = std::sin(theta);
        const double S = a * a * c * c + b * b * s * s;
        const double Sp = (b * b - a * a) * 2.0 * s * c;           // dS/dtheta
        const double Spp = (b * b - a * a) * 2.0 * std::cos(2.0 * theta);
        h = std::sqrt(S);
        dh = 0.5 * Sp / h;
        ddh = 0.5 * Spp / h - 0.25 * Sp * Sp / (S * h);
        return;
      }
      case Kind::PBall: {
        // h(theta) = ||(cos,sin)||_q, the dual norm of the l^p gauge.
        const double c = std::cos(theta), s = std::sin(theta);
        const double ac = std::abs(c), as = std::abs(s);
        const double S = std::pow(ac, q) + std::pow(as, q);
        const double A = std::pow(ac, q - 1.0) * (c >= 0.0 ? 1.0 : -1.0);
        const double B = std::pow(as, q - 1.0) * (s >= 0.0 ? 1.0 : -1.0);
        const double Sp = q * (c * B - s * A);
        // d(cB - sA)/dtheta = -(sB + cA) + (q-1)(c^2 |s|^{q-2} + s^2 |c|^{q-2})
        // and sB + cA = S.
        const double cs_term =
            (q - 1.0) * (c * c * std::pow(as, q - 2.0) + s * s * std::pow(ac, q - 2.0));
        const double Spp = q * (-S + cs_term);
        const double e = 1.0 / q;
        h = std::pow(S, e);
        dh = e * std::pow(S, e - 1.0) * Sp;
        ddh = e * (e - 1.0) * std::pow(S, e - 2.0) * Sp * Sp + e * std::pow(S, e - 1.0) * Spp;
        return;
      }
      case Kind::Spline:
        spline->eval(theta, h, dh, ddh);
        return;
    }
    h = dh = ddh = 0.0;
  }
};

ConvexBody::ConvexBody(std::shared_ptr<const SupportRule> rule, Vec2 offset, std::string name)
    : rule_(std::move(rule)), offset_(offset), name_(std::move(name)) {
  validate();
}

ConvexBody ConvexBody::disc() {
  auto rule = std::make_shared<SupportRule>();
  rule->kind = SupportRule::Kind::Disc;
  return ConvexBody(rule, Vec2{}, "disc");
}

ConvexBody ConvexBody::ellipse(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw BodyValidationError("ellipse semi-axes must be positive");
  auto rule = std::make_shared<SupportRule>();
  rule->kind = SupportRule::Kind::Ellipse;
  rule->a = a;
  rule->b = b;
  return ConvexBody(rule, Vec2{}, "ellipse(" + std::to_string(a) + "," + std::to_string(b) + ")");
}

ConvexBody ConvexBody::pball(double p) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw BodyValidationError("p-ball exponent must satisfy 1 < p < infinity");
  auto rule = std::make_shared<SupportRule>();
  rule->kind = SupportRule::Kind::PBall;
  rule->q = p / (p - 1.0);
  return ConvexBody(rule, Vec2{}, "pball(" + std::to_string(p) + ")");
}

ConvexBody ConvexBody::from_samples(const std::vector<double>& h_samples) {
  if (h_samples.size() < 16)
    throw BodyValidationError("sampled support function needs at least 16 uniform nodes");
  auto rule = std::make_shared<SupportRule>();
  rule->kind = SupportRule::Kind::Spline;
  rule->spline = std::make_shared<PeriodicSpline>(h_samples);
  return ConvexBody(rule, Vec2{}, "samples(" + std::to_string(h_samples.size()) + ")");
}

ConvexBody ConvexBody::translated(Vec2 c) const {
  return ConvexBody(rule_, offset_ + c, name_ + "+t");
}

ConvexBody::SupportValues ConvexBody::support_all(double theta) const {
  double h, dh, ddh;
  rule_->eval(theta, h, dh, ddh);
  // Translation by c adds <c, n(theta)>, which cancels from h + h''.
  const double ct = std::cos(theta), st = std::sin(theta);
  h += offset_.x * ct + offset_.y * st;
  dh += -offset_.x * st + offset_.y * ct;
  ddh += -(offset_.x * ct + offset_.y * st);
  return {h, dh, ddh};
}

void ConvexBody::validate() {
  // Midpoint grid: avoids the isolated degenerate normals of p-balls while
  // still rejecting genuinely non-convex or 0-excluding data.
  double min_h = std::numeric_limits<double>::infinity();
  double min_rho = std::numeric_limits<double>::infinity();
  double max_width = 0.0;
  for (int j = 0; j < kValidationGrid; ++j) {
    const double theta = (j + 0.5) * two_pi / kValidationGrid;
    const auto s = support_all(theta);
    min_h = std::min(min_h, s.h);
    min_rho = std::min(min_rho, s.h + s.ddh);
    const auto s2 = support_all(theta + pi);
    max_width = std::max(max_width, s.h + s2.h);
  }
  if (!(min_h > 0.0))
    throw BodyValidationError("support function not strictly positive: 0 must be interior");
  if (!(min_rho > 0.0))
    throw BodyValidationError("curvature condition h + h'' > 0 violated: body is not C^2_+");
  diameter_ = max_width;
}

Vec2 ConvexBody::gauss_point(double theta) const {
  const auto s = support_all(theta);
  const double c = std::cos(theta), sn = std::sin(theta);
  return {s.h * c - s.dh * sn, s.h * sn + s.dh * c};
}

double ConvexBody::boundary_angle_for_direction(double psi) const {
  psi = wrap_angle(psi);
  // arg(gamma(theta)) - psi, reduced to (-pi, pi]. arg(gamma) is strictly
  // increasing with winding number one, so there is exactly one zero away
  // from the branch jump.
  auto f = [&](double theta) { return wrap_signed(gauss_point(theta).angle() - psi); };

  // arg(gamma) is increasing, so f passes 0 upward exactly once per period;
  // the wrap discontinuity drops from +pi to -pi and never matches the test.
  const int coarse = 512;
  double lo = psi, hi = psi;  // fallbacks, overwritten below
  bool found = false;
  double prev_theta = psi - pi;
  double prev_val = f(prev_theta);
  for (int j = 1; j <= coarse && !found; ++j) {
    const double theta = psi - pi + two_pi * j / coarse;
    const double val = f(theta);
    if (prev_val <= 0.0 && val >= 0.0 && val - prev_val < pi) {
      lo = prev_theta;
      hi = theta;
      found = true;
    }
    prev_theta = theta;
    prev_val = val;
  }
  if (!found) throw BodyValidationError("direction bisection failed to bracket");

  for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return wrap_angle(0.5 * (lo + hi));
}

double ConvexBody::gauss_angle(Vec2 p, double boundary_tol) const {
  if (p.norm() == 0.0) throw NotOnBoundaryError("origin is interior, not on the boundary");
  const double g = gauge_norm(p);
  if (std::abs(g - 1.0) > boundary_tol)
    throw NotOnBoundaryError("point is not on the boundary: gauge deviates from 1 by " +
                             std::to_string(std::abs(g - 1.0)));
  const double theta = boundary_angle_for_direction(p.angle());
  return theta;
}

Vec2 ConvexBody::pi_K(Vec2 u) const {
  if (u.norm() == 0.0) throw std::domain_error("pi_K is undefined on the zero vector");
  return gauss_point(u.angle());
}

double ConvexBody::dual_norm(Vec2 u) const {
  const double n = u.norm();
  if (n == 0.0) return 0.0;
  return n * support(u.angle());
}

double ConvexBody::gauge_norm(Vec2 u) const {
  const double n = u.norm();
  if (n == 0.0) return 0.0;
  const double theta = boundary_angle_for_direction(u.angle());
  const double bn = gauss_point(theta).norm();
  return n / bn;
}

bool ConvexBody::centrally_symmetric(double tol) const {
  if (offset_.norm() > tol) return false;
  for (int j = 0; j < 512; ++j) {
    const double theta = (j + 0.5) * two_pi / 512;
    if (std::abs(support(theta) - support(theta + pi)) > tol) return false;
  }
  return true;
}

}  // namespace sfm
