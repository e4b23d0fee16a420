#pragma once

#include <iosfwd>
#include <string>

#include "sfm/convex_body.hpp"
#include "sfm/stationarity.hpp"

namespace sfm {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Body description, line oriented, composed top-down:
//   disc
//   ellipse a b
//   pball p
//   translate cx cy
// or a sampled support function:
//   samples
//   theta h     (N uniform nodes theta_j = 2*pi*j/N ascending from 0)
// Blank lines and lines starting with '#' are ignored.
ConvexBody parse_body(std::istream& in);
ConvexBody load_body_file(const std::string& path);

// Resolves either a built-in name (disc | ellipse:a,b | pball:p, optionally
// followed by +translate:cx,cy) or a path to a description file.
ConvexBody resolve_body(const std::string& name_or_path);

// Profile file: lines "lambda alpha" with strictly increasing lambda;
// validated non-increasing with alpha in (0, pi).
PiecewiseLinearProfile parse_profile(std::istream& in);
PiecewiseLinearProfile load_profile_file(const std::string& path);

}  // namespace sfm
