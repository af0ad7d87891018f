#include "maxpoly/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "maxpoly/error.hpp"

namespace maxpoly {

namespace {

void check(const NodeSet& nodes, int N) {
  if (N < 1 || N > nodes.M()) throw InvalidArgument("bounds: need 1 <= N <= M");
}

}  // namespace

int find_K(const NodeSet& nodes, int N, Side side) {
  check(nodes, N);
  const auto y = chebyshev_zeros(N);
  const int M = nodes.M();
  int K = 1;
  for (int n = 1; n <= N - 1; ++n) {
    bool ok;
    if (side == Side::minus) {
      const double x = nodes[static_cast<std::size_t>(n)];
      ok = x <= 0.0 && x > y[static_cast<std::size_t>(n)];
    } else {
      const double x = nodes[static_cast<std::size_t>(M - n)];
      ok = x >= 0.0 && x < y[static_cast<std::size_t>(N - 1 - n)];
    }
    if (!ok) break;
    K = n + 1;
  }
  return K;
}

double log_Q(const NodeSet& nodes, int N, int K, Side side) {
  check(nodes, N);
  if (K < 1 || K > N) throw InvalidArgument("log_Q: need 1 <= K <= N");
  if (K == 1) return 0.0;
  const double pi = std::numbers::pi;
  double s = std::log(pi / 8.0) + (K - 1) * std::log(2.0 * N * N / (pi * pi)) - 2.0 * std::lgamma(K + 0.5);
  const int M = nodes.M();
  for (int n = 1; n <= K - 1; ++n) {
    s += side == Side::minus ? std::log1p(nodes[static_cast<std::size_t>(n)])
                             : std::log1p(-nodes[static_cast<std::size_t>(M - n)]);
  }
  return s;
}

BoundReport q_lower_bound(const NodeSet& nodes, int N) {
  check(nodes, N);
  BoundReport r;
  r.M = nodes.M();
  r.N = N;
  r.K_minus = find_K(nodes, N, Side::minus);
  r.K_plus = find_K(nodes, N, Side::plus);
  r.log_Q_minus = log_Q(nodes, N, r.K_minus, Side::minus);
  r.log_Q_plus = log_Q(nodes, N, r.K_plus, Side::plus);
  r.log_lower = std::max(r.log_Q_minus, r.log_Q_plus);
  return r;
}

BoundReport bound_report(const NodeSet& nodes, int N) {
  BoundReport r = q_lower_bound(nodes, N);
  r.zeta = zeta(nodes);
  if (auto up = zeta_upper_bound_B(nodes, N)) r.log_upper = std::log(*up);
  // nu is undefined at gamma = -1/2, where 2 gamma + 1 vanishes.
  if (const auto& w = nodes.weight(); w && w->gamma() > -0.5) {
    const double g = w->gamma();
    r.nu = std::pow(std::pow(static_cast<double>(N), 2.0 * (g + 1.0)) / nodes.M(), 1.0 / (2.0 * g + 1.0));
  }
  return r;
}

Witness witness_polynomial(const NodeSet& nodes, int N, Side side) {
  check(nodes, N);
  const int K = find_K(nodes, N, side);
  if (K < 2) throw InvalidArgument("witness_polynomial: K = 1 on this side, no witness exists");
  const int M = nodes.M();
  const auto y = chebyshev_zeros(N);

  // The factors (x - y_n) divide T_N, so sample the product formula at
  // second-kind Chebyshev points (never zeros of T_N) and interpolate.
  const auto formula = [&](double x) {
    double v = 0.5 * std::cos(N * std::acos(std::clamp(x, -1.0, 1.0)));
    for (int n = 0; n < K; ++n) {
      if (side == Side::minus) {
        v *= (x - nodes[static_cast<std::size_t>(n)]) / (x - y[static_cast<std::size_t>(n)]);
      } else {
        v *= (x - nodes[static_cast<std::size_t>(M - n)]) / (x - y[static_cast<std::size_t>(N - 1 - n)]);
      }
    }
    return v;
  };
  auto z = chebyshev_second_kind_points(N);
  std::vector<double> values(z.size());
  std::vector<double> w(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) {
    values[j] = formula(z[j]);
    w[j] = ((j % 2 == 0) ? 1.0 : -1.0) * ((j == 0 || j + 1 == z.size()) ? 0.5 : 1.0);
  }

  Witness out;
  out.side = side;
  out.K = K;
  out.poly = BaryPoly(std::move(z), std::move(values), std::move(w));
  out.probe = side == Side::minus ? -std::cos(std::numbers::pi / N) : std::cos(std::numbers::pi / N);
  out.value_at_probe = std::abs(out.poly(out.probe));
  out.log_Q = log_Q(nodes, N, K, side);
  for (double x : nodes.points()) out.max_on_grid = std::max(out.max_on_grid, std::abs(out.poly(x)));
  // Sup norm: maximise |p| between consecutive extrema candidates of T_N.
  const auto zz = chebyshev_second_kind_points(std::max(2 * N, 2));
  double sup = 0.0;
  for (std::size_t j = 0; j + 1 < zz.size(); ++j) sup = std::max(sup, maximize(out.poly, zz[j], zz[j + 1], true).value);
  out.sup_norm = sup;
  return out;
}

double zeta(const NodeSet& nodes) {
  const auto th = nodes.angles();
  double z = 0.0;
  for (std::size_t m = 0; m + 1 < th.size(); ++m) z = std::max(z, th[m + 1] - th[m]);
  return z;
}

std::optional<double> zeta_upper_bound_B(const NodeSet& nodes, int N) {
  const double nz = N * zeta(nodes);
  if (nz < 1.0) return 1.0 / (1.0 - nz);
  return std::nullopt;
}

std::optional<Certificate> impossibility_certificate(const NodeSet& nodes, double tau, double rho, double C,
                                                     double theta, const BOptions& options) {
  if (!(tau > 0.0) || !(rho > 1.0) || !(C > 0.0) || !(theta > 1.0)) {
    throw InvalidArgument("impossibility_certificate: need tau > 0, rho > 1, C > 0, theta > 1");
  }
  const int M = nodes.M();
  const double bound = (std::pow(static_cast<double>(M), tau) * std::log(rho) - std::log(2.0 * C)) / std::log(theta);
  // Largest integer strictly below the bound.
  if (!(bound > 1.0)) return std::nullopt;
  const int N = bound > M + 1.0 ? M : static_cast<int>(std::ceil(bound)) - 1;
  if (N < 1) return std::nullopt;
  const auto res = compute_B(nodes, N, options);
  if (res.partial) {
    throw NumericalError("certificate", "B(M,N) could not be computed for the certificate",
                         {{"N", static_cast<double>(N)}});
  }
  return Certificate{N, res.B, 0.5 * res.B};
}

}  // namespace maxpoly
