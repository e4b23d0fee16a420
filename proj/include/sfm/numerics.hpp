#pragma once

#include <span>
#include <vector>

namespace sfm {

struct QuadratureRule {
  std::vector<double> nodes;    // on (-1, 1)
  std::vector<double> weights;  // sum to 2
};

// Gauss-Legendre rule of the given order; cached, thread-safe.
const QuadratureRule& gauss_legendre(int order);

}  // namespace sfm
