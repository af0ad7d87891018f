#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "maxpoly/weights.hpp"

namespace maxpoly {

/// Strictly increasing sample points -1 = x_0 < ... < x_M = 1 with cached
/// angles theta_m = arccos(-x_m), so theta_0 = 0 and theta_M = pi.
class NodeSet {
 public:
  /// Validates ordering and pins the endpoints; throws InvalidArgument otherwise.
  static NodeSet from_points(std::vector<double> points);
  /// Nodes equidistributed with respect to `w`: cdf(x_m) = m / M.
  static NodeSet from_weight(const WeightSpec& w, int M);

  int M() const noexcept { return static_cast<int>(points_.size()) - 1; }
  std::size_t size() const noexcept { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  std::span<const double> points() const noexcept { return points_; }
  std::span<const double> angles() const noexcept { return angles_; }
  /// Present when the nodes were generated from a weight.
  const std::optional<WeightSpec>& weight() const noexcept { return weight_; }

  /// x_m == -x_{M-m} for all m, within `tol`.
  bool symmetric(double tol = 1e-14) const;
  /// Index m with x_m <= x < x_{m+1}; M-1 for x == 1.
  int bracket(double x) const;

 private:
  NodeSet(std::vector<double> points, std::optional<WeightSpec> w);

  std::vector<double> points_;
  std::vector<double> angles_;
  std::optional<WeightSpec> weight_;
};

inline NodeSet generate_nodes(const WeightSpec& w, int M) { return NodeSet::from_weight(w, M); }

/// Solves cdf(x) = target for x in [-1, 1]: bisection down to width 1e-3,
/// then Newton on the density with the bracket as safeguard.
double invert_cdf(const WeightSpec& w, double target);

}  // namespace maxpoly
