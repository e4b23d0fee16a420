#include <doctest.h>

#include <cmath>
#include <random>

#include "sfm/area.hpp"

using namespace sfm;

TEST_CASE("area integrand: disc herringbone density and pointwise values") {
  auto D = ConvexBody::disc();
  // for u_alpha on the disc the density is 2|y|/sin(alpha)
  for (double alpha : {pi / 6, pi / 4, pi / 2}) {
    AlphaProfile prof(D, 0.0, alpha);
    for (double y : {0.3, -1.2}) {
      const Vec2 z{0.7, y};
      const double got = area_integrand(D, graph_grad(prof, z.x, z.y), z);
      CHECK(got == doctest::Approx(2.0 * std::abs(y) / std::sin(alpha)).epsilon(1e-12));
    }
  }
  // a field with grad_u = (y, -x) zeroes the density
  CHECK(area_integrand(D, {0.5, -0.2}, {0.2, 0.5}) == doctest::Approx(0.0));
  // ellipse norm at the origin-gradient point (0,1): dual of (-1, 0) is 2
  auto E = ConvexBody::ellipse(2, 1);
  CHECK(area_integrand(E, {0, 0}, {0, 1}) == doctest::Approx(2.0));
}

TEST_CASE("graph_area: u_{pi/2} over D(1) equals 8/3 (quadrature + Monte Carlo)") {
  auto D = ConvexBody::disc();
  AlphaProfile prof(D, 0.0, pi / 2);
  const auto res = graph_area(D, graph_of(prof), disc_region(prof, 1.0), 16, false);
  CHECK(res.value == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
  CHECK(std::abs(res.value - 8.0 / 3.0) <= res.error_estimate + 1e-12);

  // independent Monte Carlo oracle on the same integrand
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  double acc = 0.0;
  std::size_t hits = 0, total = 1000000;
  auto g = graph_of(prof);
  for (std::size_t i = 0; i < total; ++i) {
    const Vec2 z{coord(rng), coord(rng)};
    if (z.norm2() > 1.0) continue;
    ++hits;
    acc += area_integrand(D, g.grad(z), z);
  }
  const double mc = acc / hits * pi;  // mean over the disc times its area
  CHECK(res.value == doctest::Approx(mc).epsilon(4e-3));
}

TEST_CASE("graph_area over a rectangle with an aligned seam") {
  auto D = ConvexBody::disc();
  AlphaProfile prof(D, 0.0, pi / 2);
  // integrand of u_{pi/2} is 2|y|: over [-1,1]^2 the integral is 4
  RectRegion region{-1.0, 1.0, -1.0, 1.0, {}, {0.0}};
  const auto res = graph_area(D, graph_of(prof), region, 8, false);
  CHECK(res.value == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_THROWS_AS(graph_area(D, graph_of(prof), RectRegion{1, -1, 0, 1, {}, {}}, 8, false),
                  std::invalid_argument);
}

TEST_CASE("graph_area: zero integrand and empty region") {
  auto D = ConvexBody::disc();
  GraphFn zero_field{[](Vec2) { return 0.0; }, [](Vec2 z) { return Vec2{z.y, -z.x}; }};
  CHECK(graph_area(D, zero_field, DiscRegion{1.0, {}}, 8, false).value == doctest::Approx(0.0));
  AlphaProfile prof(D, 0.0, pi / 2);
  CHECK(graph_area(D, graph_of(prof), DiscRegion{0.0, {}}, 8, false).value == 0.0);
}

TEST_CASE("disc cone closed form: values, limit, domain") {
  CHECK(disc_cone_area_closed_form(4, 1.0) == doctest::Approx(2.20914).epsilon(1e-5));
  CHECK(disc_cone_area_closed_form(4, 0.0) == 0.0);
  CHECK_THROWS_AS(disc_cone_area_closed_form(2, 1.0), std::domain_error);
  CHECK(std::abs(disc_cone_area_closed_form(1024, 1.0) - two_pi / 3.0) < 1e-5);
  // r0^3 scaling built into the formula
  CHECK(disc_cone_area_closed_form(7, 2.0) ==
        doctest::Approx(8.0 * disc_cone_area_closed_form(7, 1.0)).epsilon(1e-14));
}

TEST_CASE("C(4) quadrature area matches the closed form") {
  auto c4 = ConeSpec::regular(ConvexBody::disc(), 4);
  const auto res = graph_area(c4.body(), graph_of(c4), disc_region(c4, 1.0), 16, false);
  CHECK(res.value == doctest::Approx(2.20914).epsilon(1e-4));
  CHECK(res.value == doctest::Approx(disc_cone_area_closed_form(4, 1.0)).epsilon(1e-12));
  CHECK(std::abs(res.value - disc_cone_area_closed_form(4, 1.0)) <= res.error_estimate + 1e-13);
  // the general-body reduction agrees on the disc
  CHECK(cone_area_closed_form(c4, 1.0) ==
        doctest::Approx(disc_cone_area_closed_form(4, 1.0)).epsilon(1e-13));
}

TEST_CASE("general-body cone and herringbone areas: two independent routes") {
  auto ce = ConeSpec::make(ConvexBody::ellipse(2, 1), 0.9, {pi, pi / 2, pi / 2});
  const auto r1 = graph_area(ce.body(), graph_of(ce), disc_region(ce, 1.0), 16, false);
  CHECK(r1.value == doctest::Approx(cone_area_closed_form(ce, 1.0)).epsilon(1e-11));

  auto P = ConvexBody::pball(1.5);
  AlphaProfile hb(P, pi / 3, pi / 6);
  const auto r2 = graph_area(P, graph_of(hb), disc_region(hb, 1.0), 16, false);
  CHECK(r2.value == doctest::Approx(herringbone_area_closed_form(hb, 1.0)).epsilon(1e-11));
}

TEST_CASE("area scaling law: cones scale as r0^3") {
  auto c5 = ConeSpec::regular(ConvexBody::disc(), 5);
  const double a1 = graph_area(c5.body(), graph_of(c5), disc_region(c5, 1.0), 16, false).value;
  for (double r : {0.5, 2.0}) {
    const double ar = graph_area(c5.body(), graph_of(c5), disc_region(c5, r), 16, false).value;
    CHECK(ar == doctest::Approx(r * r * r * a1).epsilon(1e-6));
  }
}

TEST_CASE("rotational invariance of the disc area under 2*pi/k rotation") {
  auto c4 = ConeSpec::regular(ConvexBody::disc(), 4);
  const double base = graph_area(c4.body(), graph_of(c4), disc_region(c4, 1.0), 16, false).value;
  // rotate the graph by 2*pi/4 and shift the cell boundaries accordingly
  GraphFn rotated{[&c4](Vec2 z) {
                    const Vec2 w = rotate(z, -two_pi / 4);
                    return c4.eval(w.x, w.y);
                  },
                  [&c4](Vec2 z) {
                    const Vec2 w = rotate(z, -two_pi / 4);
                    return rotate(c4.grad(w.x, w.y), two_pi / 4);
                  }};
  DiscRegion region = disc_region(c4, 1.0);
  for (double& a : region.split_angles) a = wrap_angle(a + two_pi / 4);
  const double rot = graph_area(c4.body(), rotated, region, 16, false).value;
  CHECK(rot == doctest::Approx(base).epsilon(1e-10));
}

TEST_CASE("norm monotonicity: disc inside ellipse(2,1) orders the areas") {
  auto D = ConvexBody::disc();
  auto E = ConvexBody::ellipse(2, 1);
  AlphaProfile prof(D, 0.0, pi / 2);
  const auto g = graph_of(prof);
  const auto region = disc_region(prof, 1.0);
  const double a_disc = graph_area(D, g, region, 16, false).value;
  const double a_ell = graph_area(E, g, region, 16, false).value;
  CHECK(a_disc < a_ell);
}

TEST_CASE("quadrature error estimates hold on closed-form cases") {
  for (int k : {3, 5, 9}) {
    auto c = ConeSpec::regular(ConvexBody::disc(), k);
    for (int order : {8, 12}) {
      const auto res = graph_area(c.body(), graph_of(c), disc_region(c, 1.0), order, false);
      CHECK(std::abs(res.value - disc_cone_area_closed_form(k, 1.0)) <=
            res.error_estimate + 1e-13);
    }
  }
}

TEST_CASE("perturbation harness: minimizers show no trusted decrease") {
  auto D = ConvexBody::disc();
  AlphaProfile base(D, 0.0, pi / 2);
  auto report = perturbation_test(D, graph_of(base), disc_region(base, 1.0),
                                  default_bump_family(1.0), {0.05, 0.1, 0.2}, 12, false);
  CHECK(report.rows.size() == 24 * 3 * 2);
  CHECK_FALSE(report.any_negative);

  // eps = 0 is an exact no-op
  auto flat = perturbation_test(D, graph_of(base), disc_region(base, 1.0),
                                {default_bump_family(1.0)[0]}, {0.0}, 8, false);
  for (const auto& row : flat.rows) CHECK(row.delta == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("perturbation harness flags the mismatched splice") {
  auto D = ConvexBody::disc();
  AlphaProfile bad = AlphaProfile::with_beta_override(D, 0.0, pi / 4, pi + 0.2);
  auto report = perturbation_test(D, graph_of(bad), disc_region(bad, 1.0),
                                  default_bump_family(1.0), {0.05, 0.1, 0.2}, 12, false);
  CHECK(report.any_negative);
  CHECK(report.worst_delta < -1e-3);
}

TEST_CASE("first variation vanishes at matched seams") {
  auto D = ConvexBody::disc();
  AlphaProfile base(D, 0.0, pi / 3);
  const auto g = graph_of(base);
  const auto region = disc_region(base, 1.0);
  // bump centered on the singular line
  const Bump bump{{0.5, 0.0}, 0.3};
  const double eps = 0.01;
  auto perturbed = [&](double e) {
    GraphFn p{[&, e](Vec2 z) { return g.value(z) + e * bump.value(z); },
              [&, e](Vec2 z) { return g.grad(z) + e * bump.grad(z); }};
    return graph_area(D, p, region, 16, false).value;
  };
  const double derivative = (perturbed(eps) - perturbed(-eps)) / (2 * eps);
  CHECK(std::abs(derivative) < 1e-6);

  // the mismatched splice has a genuinely nonzero first variation
  AlphaProfile bad = AlphaProfile::with_beta_override(D, 0.0, pi / 4, pi + 0.2);
  const auto gb = graph_of(bad);
  auto perturbed_bad = [&](double e) {
    GraphFn p{[&, e](Vec2 z) { return gb.value(z) + e * bump.value(z); },
              [&, e](Vec2 z) { return gb.grad(z) + e * bump.grad(z); }};
    return graph_area(D, p, disc_region(bad, 1.0), 16, false).value;
  };
  const double derivative_bad = (perturbed_bad(eps) - perturbed_bad(-eps)) / (2 * eps);
  CHECK(std::abs(derivative_bad) > 0.05);
}
