#include "maxpoly/nodes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "maxpoly/error.hpp"

namespace maxpoly {

namespace {

constexpr double kCdfTolerance = 1e-13;
constexpr double kBisectWidth = 1e-3;
constexpr int kMaxSteps = 400;

// Finds x in [lo, hi] with f(x) = 0 for increasing f; `slope` is f'.
double safeguarded_root(const auto& f, const auto& slope, double lo, double hi, double target_tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo > target_tol || fhi < -target_tol) {
    throw NumericalError("cdf_inversion", "cdf inversion failed to bracket the target",
                         {{"lo", lo}, {"hi", hi}, {"f_lo", flo}, {"f_hi", fhi}});
  }
  if (std::abs(flo) <= target_tol) return lo;
  if (std::abs(fhi) <= target_tol) return hi;

  int steps = 0;
  while (hi - lo > kBisectWidth && steps++ < kMaxSteps) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::abs(fm) <= target_tol) return mid;
    (fm < 0.0 ? lo : hi) = mid;
  }

  double x = 0.5 * (lo + hi);
  for (; steps < kMaxSteps; ++steps) {
    const double fx = f(x);
    if (std::abs(fx) <= target_tol) return x;
    (fx < 0.0 ? lo : hi) = x;
    const double next_mid = 0.5 * (lo + hi);
    if (next_mid <= lo || next_mid >= hi) return x;  // bracket at machine resolution
    const double d = slope(x);
    double next = x - fx / d;
    // Reject Newton steps that leave the bracket or are not finite.
    if (!std::isfinite(next) || !(d > 0.0) || next <= lo || next >= hi) next = next_mid;
    x = next;
  }
  return x;
}

}  // namespace

NodeSet::NodeSet(std::vector<double> points, std::optional<WeightSpec> w)
    : points_(std::move(points)), weight_(std::move(w)) {
  angles_.resize(points_.size());
  for (std::size_t m = 0; m < points_.size(); ++m) angles_[m] = std::acos(-points_[m]);
  angles_.front() = 0.0;
  angles_.back() = std::numbers::pi;
}

NodeSet NodeSet::from_points(std::vector<double> points) {
  if (points.size() < 2) throw InvalidArgument("node set: need at least two points");
  if (points.front() != -1.0 || points.back() != 1.0) {
    throw InvalidArgument("node set: endpoints must be exactly -1 and 1");
  }
  for (std::size_t m = 0; m + 1 < points.size(); ++m) {
    if (!(points[m] < points[m + 1])) {
      throw InvalidArgument("node set: points must be strictly increasing (index " + std::to_string(m) + ")");
    }
  }
  return NodeSet(std::move(points), std::nullopt);
}

double invert_cdf(const WeightSpec& w, double target) {
  if (!(target >= 0.0 && target <= 1.0)) throw InvalidArgument("invert_cdf: target outside [0, 1]");
  if (target == 0.0) return -1.0;
  if (target == 1.0) return 1.0;
  const auto slope = [&w](double x) { return w.density(x); };
  if (target <= 0.5) {
    const auto f = [&](double x) { return w.cdf(x) - target; };
    return safeguarded_root(f, slope, -1.0, 1.0, kCdfTolerance);
  }
  // Work with the tail near +1 so the residual keeps full relative precision.
  const double tail_target = 1.0 - target;
  const auto f = [&](double x) { return tail_target - w.tail(x); };
  return safeguarded_root(f, slope, -1.0, 1.0, kCdfTolerance);
}

NodeSet NodeSet::from_weight(const WeightSpec& w, int M) {
  if (M < 1) throw InvalidArgument("generate_nodes: M must be at least 1");
  std::vector<double> x(static_cast<std::size_t>(M) + 1);
  x.front() = -1.0;
  x.back() = 1.0;
  const bool mirror = w.symmetric();
  for (int m = 1; m < M; ++m) {
    if (mirror && 2 * m > M) {
      x[static_cast<std::size_t>(m)] = -x[static_cast<std::size_t>(M - m)];
      continue;
    }
    if (mirror && 2 * m == M) {
      x[static_cast<std::size_t>(m)] = 0.0;
      continue;
    }
    const double target = static_cast<double>(m) / M;
    // Tail targets are formed exactly as (M - m) / M.
    if (2 * m > M) {
      const double tail_target = static_cast<double>(M - m) / M;
      const auto f = [&](double t) { return tail_target - w.tail(t); };
      x[static_cast<std::size_t>(m)] =
          safeguarded_root(f, [&w](double t) { return w.density(t); }, -1.0, 1.0, kCdfTolerance);
    } else {
      x[static_cast<std::size_t>(m)] = invert_cdf(w, target);
    }
  }
  for (int m = 0; m < M; ++m) {
    if (!(x[static_cast<std::size_t>(m)] < x[static_cast<std::size_t>(m) + 1])) {
      throw NumericalError("cdf_inversion", "generated nodes are not strictly increasing",
                           {{"m", static_cast<double>(m)}, {"M", static_cast<double>(M)}});
    }
  }
  return NodeSet(std::move(x), w);
}

bool NodeSet::symmetric(double tol) const {
  const std::size_t n = points_.size();
  for (std::size_t m = 0; m < n; ++m) {
    if (std::abs(points_[m] + points_[n - 1 - m]) > tol) return false;
  }
  return true;
}

int NodeSet::bracket(double x) const {
  if (!(x >= -1.0 && x <= 1.0)) throw InvalidArgument("bracket: x outside [-1, 1]");
  auto it = std::upper_bound(points_.begin(), points_.end(), x);
  int m = static_cast<int>(it - points_.begin()) - 1;
  return std::clamp(m, 0, M() - 1);
}

}  // namespace maxpoly
