#include <doctest.h>

#include <initializer_list>
#include <cmath>
#include "sfm/geometry.hpp"

using namespace sfm;

TEST_CASE("rotate90 is the complex structure J") {
  auto j1 = rotate90({1, 0});
  CHECK(j1.x == doctest::Approx(0.0));
  CHECK(j1.y == doctest::Approx(1.0));
  auto j2 = rotate90({0, 1});
  CHECK(j2.x == doctest::Approx(-1.0));
  CHECK(j2.y == doctest::Approx(0.0));
  auto j0 = rotate90({0, 0});
  CHECK(j0.x == 0.0);
  CHECK(j0.y == 0.0);

  // J^4 = id
  Vec2 u{0.3, -1.7};
  Vec2 r = rotate90(rotate90(rotate90(rotate90(u))));
  CHECK(r.x == doctest::Approx(u.x));
  CHECK(r.y == doctest::Approx(u.y));
}

TEST_CASE("angle wrapping is canonical") {
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(two_pi) == 0.0);
  CHECK(wrap_angle(-1e-9) == doctest::Approx(two_pi - 1e-9));
  CHECK(wrap_angle(7.0 * pi) == doctest::Approx(pi));
  CHECK(ccw_angle(0.1, 0.3) == doctest::Approx(0.2));
  CHECK(ccw_angle(0.3, 0.1) == doctest::Approx(two_pi - 0.2));
}

TEST_CASE("group product and left translation") {
  // identity and vertical center
  Vec3 q{0.4, -0.2, 1.1};
  Vec3 r = heis_product({0, 0, 0}, q);
  CHECK(r.x == q.x);
  CHECK(r.y == q.y);
  CHECK(r.t == q.t);
  Vec3 s = heis_product({0, 0, 2.5}, q);
  CHECK(s.t == doctest::Approx(q.t + 2.5));

  // (x,y,t)*(X,Y,T) = (x+X, y+Y, t+T+Xy-xY)
  Vec3 lp = heis_product({1, 0, 0}, {0, 1, 0});
  CHECK(lp.x == doctest::Approx(1.0));
  CHECK(lp.y == doctest::Approx(1.0));
  CHECK(lp.t == doctest::Approx(-1.0));

  // associativity spot check
  Vec3 a{0.5, 1.0, -0.3}, b{-1.2, 0.4, 2.0}, c{0.7, -0.9, 0.1};
  Vec3 lhs = heis_product(heis_product(a, b), c);
  Vec3 rhs = heis_product(a, heis_product(b, c));
  CHECK(lhs.x == doctest::Approx(rhs.x));
  CHECK(lhs.y == doctest::Approx(rhs.y));
  CHECK(lhs.t == doctest::Approx(rhs.t));
}

TEST_CASE("horizontal lifts annihilate the contact form") {
  // through the axis: t stays constant
  for (double s : {-2.0, 0.5, 3.0}) {
    Vec3 p = lift_halfline({0, 0}, Vec2::from_angle(1.234), 0.7, s);
    CHECK(p.t == doctest::Approx(0.7));
  }
  // from (lambda, 0) with angle alpha: t(s) = -s lambda sin(alpha)
  const double lambda = 1.7, alpha = 0.9;
  Vec3 p = lift_halfline({lambda, 0}, Vec2::from_angle(alpha), 0.0, 2.0);
  CHECK(p.t == doctest::Approx(-2.0 * lambda * std::sin(alpha)));
  // p = (0,1), w = (1,0): t(s) = t0 + s
  Vec3 q = lift_halfline({0, 1}, {1, 0}, 0.3, 1.6);
  CHECK(q.t == doctest::Approx(0.3 + 1.6));

  // omega residual vanishes along chords of any lift
  Vec2 base{0.8, -1.1};
  Vec2 dir = Vec2::from_angle(2.7);
  for (double s = -1.0; s < 1.0; s += 0.25) {
    Vec3 a = lift_halfline(base, dir, 0.2, s);
    Vec3 b = lift_halfline(base, dir, 0.2, s + 0.25);
    CHECK(std::abs(contact_form_residual(a, b)) < 1e-14);
  }
}
