#pragma once

#include <vector>

namespace ddv {

struct GaussRule {
  std::vector<double> nodes;    // on [0, 1]
  std::vector<double> weights;  // sum to 1
};

/// n-point Gauss-Legendre rule mapped to [0, 1] (Newton on P_n).
GaussRule gauss_legendre(int n);

}  // namespace ddv
