#pragma once

#include <vector>

namespace boltzmann {

/// Gauss-Legendre rule on [-1, 1]: nodes are the roots of P_K, weights
/// 2 / ((1 - x^2) P_K'(x)^2). Nodes ascend.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(int order);

}  // namespace boltzmann
