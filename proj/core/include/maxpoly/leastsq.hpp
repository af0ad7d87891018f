#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>

#include "maxpoly/nodes.hpp"
#include "maxpoly/polycore.hpp"
#include "maxpoly/remez.hpp"

namespace maxpoly {

/// Discrete least-squares fit F_{M,N}(f) in the Chebyshev basis.
struct LsqFit {
  int degree = 0;
  int M = 0;
  ChebPoly poly;
  /// ||f - p||_{M,2} with the 2/(M+1)-weighted discrete semi-norm.
  double residual_discrete = 0.0;

  double operator()(double x) const { return poly(x); }
};

/// Householder QR of the Chebyshev design matrix; never forms normal equations.
LsqFit fit(const NodeSet& nodes, int N, std::span<const double> samples);
LsqFit fit(const NodeSet& nodes, int N, const std::function<double(double)>& f);

/// Discrete semi-norm sqrt(2/(M+1) sum v_m^2).
double discrete_norm(std::span<const double> values);

struct ConditionEstimate {
  double kappa_inf = 1.0;  // sampled lower estimate of the operator norm
  double argmax = 0.0;
  int grid_resolution = 0;
  /// (B(M,N), sqrt(M+1) B(M,N)) when requested.
  std::optional<std::pair<double, double>> bracket;
};

struct ConditionOptions {
  int probe_grid_size = 0;  // 0: 20 * M Chebyshev-distributed probes
  int refine_candidates = 5;
  bool with_bracket = false;
  BOptions b_options;
};

/// sup_x sum_j |r_j(x)| where r_j is the fit of the j-th unit impulse;
/// one factorisation serves all M+1 right-hand sides.
ConditionEstimate condition_number_inf(const NodeSet& nodes, int N, const ConditionOptions& options = {});

/// N = max(1, round(c M^{1/(2(gamma+1))})), capped at M.
int stable_degree(const WeightSpec& w, int M, double c = 3.0);

/// max |f - p| over `samples` Chebyshev-distributed points plus the nodes.
double sup_error(const LsqFit& p, const NodeSet& nodes, const std::function<double(double)>& f, int samples = 4000);

}  // namespace maxpoly
