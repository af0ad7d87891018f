#include "maxpoly/mockcheb.hpp"

#include <algorithm>
#include <numbers>
#include <stdexcept>

#include "maxpoly/bounds.hpp"
#include "maxpoly/error.hpp"
#include "maxpoly/polycore.hpp"

namespace maxpoly {

std::optional<MockChebSubset> mock_chebyshev_subset(const NodeSet& nodes, int N) {
  if (N < 1) throw InvalidArgument("mock_chebyshev_subset: N must be at least 1");
  constexpr double pi = std::numbers::pi;
  if (!(N * zeta(nodes) < pi - 1e-12)) return std::nullopt;

  const auto theta = nodes.angles();
  MockChebSubset out;
  out.N = N;
  out.z = chebyshev_second_kind_points(N);
  for (int n = 1; n <= N; ++n) {
    const double cut = n * pi / N;
    const auto it = std::lower_bound(theta.begin(), theta.end(), cut - 1e-13);
    const int m = static_cast<int>(it - theta.begin()) - 1;
    out.indices.push_back(m);
    out.points.push_back(nodes[static_cast<std::size_t>(m)]);
  }

  for (int n = 1; n <= N; ++n) {
    const double x = out.points[static_cast<std::size_t>(n) - 1];
    if (!(out.z[static_cast<std::size_t>(n) - 1] < x && x < out.z[static_cast<std::size_t>(n)])) {
      throw std::logic_error("mock_chebyshev_subset: interlacing violated");
    }
  }
  return out;
}

}  // namespace maxpoly
