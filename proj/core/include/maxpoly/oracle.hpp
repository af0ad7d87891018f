#pragma once

#include <vector>

#include "maxpoly/nodes.hpp"

namespace maxpoly::oracle {

/// Enumeration limit on C(M-1, N-1) candidate reference sets.
inline constexpr double kMaxSubsets = 1e6;

struct PointValue {
  double value = 1.0;
  std::vector<int> reference;  // minimising subset (node indices)
};

/// min over all (N+1)-subsets Y containing the bracketing pair of L_Y(x),
/// with L_Y evaluated in product form. x must lie strictly inside a
/// subinterval, or on a node (value 1).
PointValue B_point(const NodeSet& nodes, int N, double x);

/// max over x of B_point: dense sampling per subinterval, then golden-section
/// refinement of the best samples.
double B(const NodeSet& nodes, int N);

/// Independent cross-check for small N: max p(x) subject to |p(x_j)| <= 1,
/// by enumerating vertices of the feasible polytope (N+1 active constraints
/// with signs) in the monomial basis.
double lp_vertex_B_point(const NodeSet& nodes, int N, double x);

}  // namespace maxpoly::oracle
