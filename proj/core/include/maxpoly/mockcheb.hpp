#pragma once

#include <optional>
#include <vector>

#include "maxpoly/nodes.hpp"

namespace maxpoly {

/// N nodes x*_1 < ... < x*_N interlacing the second-kind Chebyshev points:
/// z_{n-1} < x*_n < z_n.
struct MockChebSubset {
  int N = 0;
  std::vector<int> indices;
  std::vector<double> points;
  std::vector<double> z;  // z_0 .. z_N
};

/// Greedy angle construction: x*_n is the node with the largest angle below
/// n pi / N. Exists whenever N zeta < pi (checked with a 1e-12 margin).
std::optional<MockChebSubset> mock_chebyshev_subset(const NodeSet& nodes, int N);

}  // namespace maxpoly
