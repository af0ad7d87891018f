#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "maxpoly/error.hpp"
#include "maxpoly/nodes.hpp"
#include "maxpoly/polycore.hpp"

namespace maxpoly {

/// N+1 node indices containing the anchor pair (anchor, anchor+1).
struct ReferenceSet {
  std::vector<int> indices;
  int anchor = 0;
  int n_anchor = 0;  // position of `anchor` within `indices`
  std::vector<double> bary;
};

struct RemezTrace {
  int iterations = 0;
  /// p evaluated at the subinterval midpoint after each exchange step;
  /// this is L_Y at the probe, which each exchange strictly lowers.
  std::vector<double> lvalues;
  /// max_j |p(x_j)| per iteration.
  std::vector<double> violations;
  /// (removed index, inserted index) pairs per iteration.
  std::vector<std::vector<std::pair<int, int>>> exchanges;
  bool converged = false;
  std::optional<std::string> failure_reason;
};

/// NumericalError raised by the exchange iteration, carrying its trace.
class RemezFailure : public NumericalError {
 public:
  RemezFailure(std::string kind, const std::string& what, std::vector<Detail> details, RemezTrace trace)
      : NumericalError(std::move(kind), what, std::move(details)), trace_(std::move(trace)) {}
  const RemezTrace& trace() const noexcept { return trace_; }

 private:
  RemezTrace trace_;
};

enum class Variant { first, second };

struct RemezOptions {
  Variant variant = Variant::second;
  double tol_exchange = 1e-9;
  int max_iters = 10000;
  /// Reference sets whose Lebesgue function exceeds this on the grid are rejected.
  double max_lebesgue = 1e15;
  /// Random initial reference set instead of the mock-Chebyshev one.
  bool random_init = false;
  std::uint64_t seed = 0;
};

struct SubintervalSolution {
  BaryPoly poly;  // equals B(M,N,.) on [x_m, x_{m+1}]
  ReferenceSet reference;
  RemezTrace trace;
};

/// Reference set whose points are the nodes closest to the N+1 Chebyshev
/// points of the second kind, adjusted to contain x_m and x_{m+1}.
ReferenceSet initial_reference(const NodeSet& nodes, int N, int m);
ReferenceSet random_reference(const NodeSet& nodes, int N, int m, std::uint64_t seed);
/// Replace the anchor pair of `ref` by (m, m+1), swapping out the nearest members.
ReferenceSet reanchor(const NodeSet& nodes, const ReferenceSet& ref, int m);

/// Exchange iteration for B(M,N,.) on [x_m, x_{m+1}]. Throws NumericalError
/// on conditioning failure or when max_iters is exhausted.
SubintervalSolution solve_subinterval(const NodeSet& nodes, int N, int m, const RemezOptions& options = {},
                                      std::optional<ReferenceSet> init = std::nullopt);

/// B(M,N,x); 1 at nodes and for N = 0. A failed second-variant solve is
/// retried from scratch with the first variant.
double compute_B_point(const NodeSet& nodes, int N, double x, const RemezOptions& options = {});

struct IntervalResult {
  int m = 0;
  double local_max = 0.0;
  double argmax = 0.0;
  ReferenceSet reference;
  RemezTrace trace;
  std::optional<std::string> failure;
};

struct MaximalResult {
  double B = 1.0;
  double log10_B = 0.0;
  double argmax_x = -1.0;
  int argmax_interval = 0;
  std::vector<IntervalResult> per_interval;  // ordered by m
  BaryPoly polynomial;
  bool partial = false;     // some subinterval failed
  bool stopped_early = false;  // stop_above threshold was exceeded
};

struct BOptions {
  RemezOptions remez;
  bool symmetry = true;
  bool warm_start = true;
  int threads = 1;
  /// Abandon the sweep once some local maximum exceeds this value.
  std::optional<double> stop_above;
};

/// Sweeps every subinterval (half of them for symmetric nodes), with the same
/// first-variant retry as compute_B_point.
MaximalResult compute_B(const NodeSet& nodes, int N, const BOptions& options = {});

/// Smallest M >= N with B(M,N) <= threshold for nodes drawn from `w`;
/// exponential bracketing then bisection, with a downward linear check of
/// the bisection result.
int smallest_M_for_bounded_B(const WeightSpec& w, int N, double threshold = 10.0, const BOptions& options = {},
                             int max_M = 200000);

}  // namespace maxpoly
