#pragma once

#include <vector>

namespace zlab {

struct GaussLegendre {
  std::vector<double> x;  // nodes in (-1, 1)
  std::vector<double> w;  // weights, sum to 2
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton on Legendre polynomials).
const GaussLegendre& gauss_legendre(int n);

}  // namespace zlab
