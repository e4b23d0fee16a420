#pragma once

#include <cmath>
#include <numbers>

namespace sfm {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Canonical angle reduction to [0, 2*pi). Every angle comparison in the
// library goes through this single helper so interval bookkeeping stays
// consistent.
inline double wrap_angle(double a) {
  double r = std::fmod(a, two_pi);
  if (r < 0.0) r += two_pi;
  // fmod can return two_pi - eps rounding to two_pi after the add
  if (r >= two_pi) r = 0.0;
  return r;
}

// Signed representative in (-pi, pi].
inline double wrap_signed(double a) {
  double r = wrap_angle(a);
  if (r > pi) r -= two_pi;
  return r;
}

// Counterclockwise angle from `from` to `to`, in [0, 2*pi).
inline double ccw_angle(double from, double to) { return wrap_angle(to - from); }

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }

  double norm2() const { return x * x + y * y; }
  double norm() const { return std::hypot(x, y); }
  double angle() const { return wrap_angle(std::atan2(y, x)); }

  static Vec2 from_angle(double a) { return {std::cos(a), std::sin(a)}; }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

// The complex structure J of the horizontal frame: J(X)=Y, J(Y)=-X,
// i.e. rotation by +90 degrees on coefficient vectors.
inline Vec2 rotate90(Vec2 u) { return {-u.y, u.x}; }

// Rotate by an arbitrary angle.
inline Vec2 rotate(Vec2 u, double a) {
  const double c = std::cos(a), s = std::sin(a);
  return {c * u.x - s * u.y, s * u.x + c * u.y};
}

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;

  Vec3() = default;
  Vec3(double x_, double y_, double t_) : x(x_), y(y_), t(t_) {}

  Vec2 xy() const { return {x, y}; }
};

// Group product of H^1: (x,y,t)*(X,Y,T) = (x+X, y+Y, t+T+Xy-xY).
inline Vec3 heis_product(Vec3 p, Vec3 q) {
  return {p.x + q.x, p.y + q.y, p.t + q.t + q.x * p.y - p.x * q.y};
}

// Horizontal lift of the line s -> base + s*dir starting at height t0.
// The t-slope is constant along a straight line, so the lift is itself a line.
inline double lift_slope(Vec2 base, Vec2 dir) {
  return base.y * dir.x - base.x * dir.y;
}

inline Vec3 lift_halfline(Vec2 base, Vec2 dir, double t0, double s) {
  return {base.x + s * dir.x, base.y + s * dir.y, t0 + s * lift_slope(base, dir)};
}

// Residual of the contact form omega = dt - y dx + x dy along the segment
// from a to b, evaluated with midpoint coefficients. Zero (to roundoff) for
// chords of horizontal lines.
inline double contact_form_residual(Vec3 a, Vec3 b) {
  const double xm = 0.5 * (a.x + b.x);
  const double ym = 0.5 * (a.y + b.y);
  return (b.t - a.t) - ym * (b.x - a.x) + xm * (b.y - a.y);
}

}  // namespace sfm
