#pragma once

#include <vector>

namespace maxpoly {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Jacobi rule for the weight (1-t)^a (1+t)^b on [-1, 1], a, b > -1.
/// Nodes ascending. Computed by Golub-Welsch on the Jacobi matrix.
QuadratureRule gauss_jacobi(int n, double a, double b);

inline QuadratureRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

}  // namespace maxpoly
