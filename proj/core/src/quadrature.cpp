#include "maxpoly/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

#include "maxpoly/error.hpp"

namespace maxpoly {

QuadratureRule gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw InvalidArgument("gauss_jacobi: need at least one node");
  if (!(a > -1.0) || !(b > -1.0)) throw InvalidArgument("gauss_jacobi: exponents must exceed -1");

  // Three-term recurrence coefficients of the monic Jacobi polynomials.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  const double ab = a + b;
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * k + ab;
    double diag;
    if (k == 0) {
      diag = (b - a) / (ab + 2.0);
    } else {
      diag = (b * b - a * a) / (t * (t + 2.0));
    }
    J(k, k) = diag;
    if (k + 1 < n) {
      const double kk = k + 1.0;
      const double s = 2.0 * kk + ab;
      double off2 = 4.0 * kk * (kk + a) * (kk + b) * (kk + ab) / (s * s * (s + 1.0) * (s - 1.0));
      if (kk == 1.0) off2 = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
      const double off = std::sqrt(off2);
      J(k, k + 1) = off;
      J(k + 1, k) = off;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(J);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("quadrature", "gauss_jacobi: eigen decomposition failed");
  }
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                              std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));

  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double v = solver.eigenvectors()(0, k);
    rule.nodes[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
    rule.weights[static_cast<std::size_t>(k)] = mu0 * v * v;
  }
  return rule;
}

}  // namespace maxpoly
