#include "sfm/io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace sfm {

namespace {

bool skippable(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

ConvexBody parse_body(std::istream& in) {
  std::optional<ConvexBody> body;
  std::string line;
  bool in_samples = false;
  std::vector<double> thetas, hs;

  while (std::getline(in, line)) {
    if (skippable(line)) continue;
    std::istringstream ss(line);
    if (in_samples) {
      double theta, h;
      if (!(ss >> theta >> h)) throw ParseError("samples: expected 'theta h', got: " + line);
      thetas.push_back(theta);
      hs.push_back(h);
      continue;
    }
    std::string word;
    ss >> word;
    if (word == "disc") {
      if (body) throw ParseError("base body declared twice");
      body = ConvexBody::disc();
    } else if (word == "ellipse") {
      double a, b;
      if (!(ss >> a >> b)) throw ParseError("ellipse needs two semi-axes");
      if (body) throw ParseError("base body declared twice");
      body = ConvexBody::ellipse(a, b);
    } else if (word == "pball") {
      double p;
      if (!(ss >> p)) throw ParseError("pball needs an exponent");
      if (body) throw ParseError("base body declared twice");
      body = ConvexBody::pball(p);
    } else if (word == "translate") {
      double cx, cy;
      if (!(ss >> cx >> cy)) throw ParseError("translate needs two coordinates");
      if (!body) throw ParseError("translate before a base body");
      body = body->translated({cx, cy});
    } else if (word == "samples") {
      if (body) throw ParseError("base body declared twice");
      in_samples = true;
    } else {
      throw ParseError("unknown body directive: " + word);
    }
  }

  if (in_samples) {
    const std::size_t n = thetas.size();
    if (n < 16) throw ParseError("samples: need at least 16 nodes");
    for (std::size_t j = 0; j < n; ++j) {
      const double expect = two_pi * j / n;
      if (std::abs(thetas[j] - expect) > 1e-6)
        throw ParseError("samples: nodes must be uniform over [0, 2*pi) starting at 0");
    }
    body = ConvexBody::from_samples(hs);
  }
  if (!body) throw ParseError("empty body description");
  return *body;
}

ConvexBody load_body_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open body file: " + path);
  return parse_body(f);
}

ConvexBody resolve_body(const std::string& name_or_path) {
  std::string spec = name_or_path;
  std::optional<Vec2> shift;
  if (const auto plus = spec.find("+translate:"); plus != std::string::npos) {
    const std::string tail = spec.substr(plus + 11);
    spec = spec.substr(0, plus);
    double cx, cy;
    char comma;
    std::istringstream ss(tail);
    if (!(ss >> cx >> comma >> cy) || comma != ',')
      throw ParseError("translate suffix must be +translate:cx,cy");
    shift = Vec2{cx, cy};
  }

  std::optional<ConvexBody> body;
  if (spec == "disc") {
    body = ConvexBody::disc();
  } else if (spec.rfind("ellipse:", 0) == 0) {
    double a, b;
    char comma;
    std::istringstream ss(spec.substr(8));
    if (!(ss >> a >> comma >> b) || comma != ',') throw ParseError("expected ellipse:a,b");
    body = ConvexBody::ellipse(a, b);
  } else if (spec.rfind("pball:", 0) == 0) {
    double p;
    std::istringstream ss(spec.substr(6));
    if (!(ss >> p)) throw ParseError("expected pball:p");
    body = ConvexBody::pball(p);
  } else {
    body = load_body_file(spec);
  }
  if (shift) body = body->translated(*shift);
  return *body;
}

PiecewiseLinearProfile parse_profile(std::istream& in) {
  std::vector<double> lambdas, alphas;
  std::string line;
  while (std::getline(in, line)) {
    if (skippable(line)) continue;
    std::istringstream ss(line);
    double l, a;
    if (!(ss >> l >> a)) throw ParseError("profile: expected 'lambda alpha', got: " + line);
    lambdas.push_back(l);
    alphas.push_back(a);
  }
  if (lambdas.empty()) throw ParseError("empty profile");
  PiecewiseLinearProfile profile(std::move(lambdas), std::move(alphas));
  profile.require_admissible();
  return profile;
}

PiecewiseLinearProfile load_profile_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open profile file: " + path);
  return parse_profile(f);
}

}  // namespace sfm
