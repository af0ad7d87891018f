#include "maxpoly/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "maxpoly/error.hpp"

namespace maxpoly::oracle {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double product_lebesgue(const std::vector<double>& Y, double x) {
  double sum = 0.0;
  for (std::size_t n = 0; n < Y.size(); ++n) {
    double l = 1.0;
    for (std::size_t k = 0; k < Y.size(); ++k) {
      if (k != n) l *= (x - Y[k]) / (Y[n] - Y[k]);
    }
    sum += std::abs(l);
  }
  return sum;
}

// Visits every sorted k-subset of `pool`.
template <typename Visit>
void for_each_subset(const std::vector<int>& pool, int k, Visit&& visit) {
  std::vector<int> pick(static_cast<std::size_t>(k));
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<int> chosen(static_cast<std::size_t>(k));
  const int n = static_cast<int>(pool.size());
  if (k > n) return;
  for (;;) {
    for (int i = 0; i < k; ++i) chosen[static_cast<std::size_t>(i)] = pool[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
    visit(chosen);
    int i = k - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j) - 1] + 1;
  }
}

void guard(const NodeSet& nodes, int N) {
  if (N < 0 || N > nodes.M()) throw InvalidArgument("oracle: need 0 <= N <= M");
  if (N >= 1 && binomial(nodes.M() - 1, N - 1) > kMaxSubsets) {
    throw InvalidArgument("oracle: enumeration too large (C(M-1, N-1) > 1e6)");
  }
}

}  // namespace

PointValue B_point(const NodeSet& nodes, int N, double x) {
  guard(nodes, N);
  const auto pts = nodes.points();
  if (N == 0 || std::binary_search(pts.begin(), pts.end(), x)) return {};
  const int m = nodes.bracket(x);
  std::vector<int> pool;
  for (int i = 0; i <= nodes.M(); ++i) {
    if (i != m && i != m + 1) pool.push_back(i);
  }
  PointValue best{std::numeric_limits<double>::infinity(), {}};
  std::vector<double> Y(static_cast<std::size_t>(N) + 1);
  for_each_subset(pool, N - 1, [&](const std::vector<int>& others) {
    std::vector<int> idx = others;
    idx.push_back(m);
    idx.push_back(m + 1);
    std::sort(idx.begin(), idx.end());
    for (std::size_t k = 0; k < idx.size(); ++k) Y[k] = pts[static_cast<std::size_t>(idx[k])];
    const double v = product_lebesgue(Y, x);
    if (v < best.value) best = {v, idx};
  });
  return best;
}

double B(const NodeSet& nodes, int N) {
  guard(nodes, N);
  if (N == 0) return 1.0;
  const auto pts = nodes.points();
  const auto f = [&](double x) { return B_point(nodes, N, x).value; };
  constexpr int kSamples = 200;
  double best = 1.0;
  for (int m = 0; m < nodes.M(); ++m) {
    const double a = pts[static_cast<std::size_t>(m)];
    const double b = pts[static_cast<std::size_t>(m) + 1];
    const double h = (b - a) / (kSamples + 1);
    int arg = 1;
    double top = -1.0;
    for (int s = 1; s <= kSamples; ++s) {
      const double v = f(a + s * h);
      if (v > top) {
        top = v;
        arg = s;
      }
    }
    // Golden section on the bracketing samples.
    double lo = a + (arg - 1) * h;
    double hi = a + (arg + 1) * h;
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - r * (hi - lo);
    double d = lo + r * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    while (hi - lo > 1e-13 * (b - a)) {
      if (fc >= fd) {
        hi = d;
        d = c;
        fd = fc;
        c = hi - r * (hi - lo);
        fc = f(c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + r * (hi - lo);
        fd = f(d);
      }
    }
    best = std::max({best, top, f(0.5 * (lo + hi))});
  }
  return best;
}

double lp_vertex_B_point(const NodeSet& nodes, int N, double x) {
  if (N < 0 || N > 5) throw InvalidArgument("lp_vertex_B_point: only for N <= 5");
  if (N == 0) return 1.0;
  const auto pts = nodes.points();
  const int M = nodes.M();
  std::vector<int> all(static_cast<std::size_t>(M) + 1);
  std::iota(all.begin(), all.end(), 0);

  // Monomials scaled to [-1, 1] are adequately conditioned for N <= 5.
  const auto row = [N](double t) {
    Eigen::RowVectorXd r(N + 1);
    double v = 1.0;
    for (int k = 0; k <= N; ++k) {
      r(k) = v;
      v *= t;
    }
    return r;
  };
  const Eigen::RowVectorXd target = row(x);
  Eigen::MatrixXd grid(M + 1, N + 1);
  for (int j = 0; j <= M; ++j) grid.row(j) = row(pts[static_cast<std::size_t>(j)]);

  double best = -std::numeric_limits<double>::infinity();
  for_each_subset(all, N + 1, [&](const std::vector<int>& active) {
    Eigen::MatrixXd A(N + 1, N + 1);
    for (int k = 0; k <= N; ++k) A.row(k) = grid.row(active[static_cast<std::size_t>(k)]);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    for (unsigned mask = 0; mask < (1u << (N + 1)); ++mask) {
      Eigen::VectorXd rhs(N + 1);
      for (int k = 0; k <= N; ++k) rhs(k) = (mask >> k) & 1u ? 1.0 : -1.0;
      const Eigen::VectorXd c = lu.solve(rhs);
      const Eigen::VectorXd vals = grid * c;
      if (vals.cwiseAbs().maxCoeff() > 1.0 + 1e-10) continue;
      best = std::max(best, static_cast<double>(target * c));
    }
  });
  return best;
}

}  // namespace maxpoly::oracle
