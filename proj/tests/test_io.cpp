#include <doctest.h>

#include <cmath>
#include <iomanip>
#include <sstream>

#include "sfm/io.hpp"

using namespace sfm;

TEST_CASE("body files compose top-down") {
  std::istringstream in(
      "# test body\n"
      "ellipse 2 1\n"
      "translate 0.3 -0.2\n");
  auto K = parse_body(in);
  CHECK(K.center_offset().x == doctest::Approx(0.3));
  CHECK(K.center_offset().y == doctest::Approx(-0.2));
  CHECK(K.support(0.0) == doctest::Approx(2.0 + 0.3));

  std::istringstream two_bases("disc\nellipse 2 1\n");
  CHECK_THROWS_AS(parse_body(two_bases), ParseError);
  std::istringstream orphan_translate("translate 1 0\n");
  CHECK_THROWS_AS(parse_body(orphan_translate), ParseError);
  std::istringstream junk("dodecahedron\n");
  CHECK_THROWS_AS(parse_body(junk), ParseError);
  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(parse_body(empty), ParseError);
}

TEST_CASE("sampled body files: uniform grid enforced, curvature gate applies") {
  const int n = 64;
  std::ostringstream good;
  good << std::setprecision(17) << "samples\n";
  for (int j = 0; j < n; ++j) {
    const double th = j * two_pi / n;
    good << th << ' ' << std::sqrt(4 * std::cos(th) * std::cos(th) + std::sin(th) * std::sin(th))
         << '\n';
  }
  std::istringstream gin(good.str());
  auto K = parse_body(gin);
  CHECK(K.support(0.9) == doctest::Approx(ConvexBody::ellipse(2, 1).support(0.9)).epsilon(1e-3));

  std::ostringstream skewed;
  skewed << "samples\n";
  for (int j = 0; j < n; ++j) skewed << (j * j * 0.001) << ' ' << 1.0 << '\n';
  std::istringstream sin_(skewed.str());
  CHECK_THROWS_AS(parse_body(sin_), ParseError);

  // peanut support function: rejected by the C^2_+ gate at construction
  std::ostringstream peanut;
  peanut << std::setprecision(17) << "samples\n";
  for (int j = 0; j < 512; ++j) {
    const double th = j * two_pi / 512;
    peanut << th << ' ' << 1.0 + 0.5 * std::cos(2 * th) << '\n';
  }
  std::istringstream pin(peanut.str());
  CHECK_THROWS_AS(parse_body(pin), BodyValidationError);
}

TEST_CASE("resolve_body names") {
  CHECK(resolve_body("disc").support(1.0) == doctest::Approx(1.0));
  CHECK(resolve_body("ellipse:2,1").support(0.0) == doctest::Approx(2.0));
  CHECK(resolve_body("pball:1.5").support(0.0) == doctest::Approx(1.0));
  auto T = resolve_body("ellipse:2,1+translate:0.3,-0.2");
  CHECK(T.center_offset().x == doctest::Approx(0.3));
  CHECK_THROWS(resolve_body("ellipse:2"));
  CHECK_THROWS(resolve_body("/nonexistent/file"));
}

TEST_CASE("profile files parse and validate") {
  std::istringstream in(
      "# lambda alpha\n"
      "-1.0 2.0\n"
      "0.0 1.5\n"
      "2.0 1.5\n");
  auto p = parse_profile(in);
  CHECK(p(-1.0) == doctest::Approx(2.0));
  CHECK(p(-0.5) == doctest::Approx(1.75));

  std::istringstream nonmono("0 1.0\n1 1.5\n");
  CHECK_THROWS_AS(parse_profile(nonmono), std::domain_error);
  std::istringstream badnodes("1 1.0\n1 0.9\n");
  CHECK_THROWS_AS(parse_profile(badnodes), std::invalid_argument);
  std::istringstream empty("#\n");
  CHECK_THROWS_AS(parse_profile(empty), ParseError);
}
