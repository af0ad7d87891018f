#include "maxpoly/polycore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "maxpoly/error.hpp"

namespace maxpoly {

namespace {

constexpr double kSnapRelative = 1e-14;
constexpr int kRootIterations = 200;

// Root of g on [lo, hi] given g(lo) > 0 > g(hi): secant steps guarded by
// bisection whenever the secant leaves the bracket or stalls.
double bracketed_root(const std::function<double(double)>& g, double lo, double hi, double glo, double ghi,
                      double xtol) {
  double prev_width = hi - lo;
  for (int it = 0; it < kRootIterations && hi - lo > xtol; ++it) {
    double x = lo - glo * (hi - lo) / (ghi - glo);
    const double width = hi - lo;
    if (!(x > lo && x < hi) || width > 0.5 * prev_width) x = 0.5 * (lo + hi);
    prev_width = width;
    const double gx = g(x);
    if (gx == 0.0) return x;
    if (gx > 0.0) {
      lo = x;
      glo = gx;
    } else {
      hi = x;
      ghi = gx;
    }
  }
  return 0.5 * (lo + hi);
}

double golden_max(const std::function<double(double)>& f, double lo, double hi, double xtol) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - r * (hi - lo);
  double d = lo + r * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > xtol) {
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
  return 0.5 * (lo + hi);
}

}  // namespace

std::vector<double> barycentric_weights(std::span<const double> nodes) {
  const std::size_t n = nodes.size();
  std::vector<double> logw(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k != j) s -= std::log(std::abs(nodes[j] - nodes[k]));
    }
    logw[j] = s;
  }
  const double top = n == 0 ? 0.0 : *std::max_element(logw.begin(), logw.end());
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) {
    // Sorted nodes: sign is (-1)^(number of larger nodes).
    const double sign = ((n - 1 - j) % 2 == 0) ? 1.0 : -1.0;
    w[j] = sign * std::exp(logw[j] - top);
  }
  return w;
}

BaryPoly::BaryPoly(std::vector<double> nodes, std::vector<double> values)
    : BaryPoly(nodes, std::move(values), barycentric_weights(nodes)) {}

BaryPoly::BaryPoly(std::vector<double> nodes, std::vector<double> values, std::vector<double> weights)
    : nodes_(std::move(nodes)), values_(std::move(values)), weights_(std::move(weights)) {
  if (nodes_.empty() || nodes_.size() != values_.size() || nodes_.size() != weights_.size()) {
    throw InvalidArgument("BaryPoly: nodes, values and weights must have equal nonzero length");
  }
  snap_ = kSnapRelative * (nodes_.back() - nodes_.front());
  // Stored weights are proportional to the true ones, 1/prod(y_0 - y_k);
  // recover the factor from the first node.
  double log_w0 = 0.0;
  for (std::size_t k = 1; k < nodes_.size(); ++k) log_w0 -= std::log(std::abs(nodes_[0] - nodes_[k]));
  log_scale_ = log_w0 - std::log(std::abs(weights_[0]));
}

bool BaryPoly::outside(double x) const noexcept {
  return nodes_.size() > 1 && (x < nodes_.front() - snap_ || x > nodes_.back() + snap_);
}

// First (modified Lagrange) form, l(x) sum_k w_k v_k / (x - y_k): the second
// form's denominator cancels catastrophically away from the nodes.
double BaryPoly::extrapolate(double x, bool absolute) const {
  double log_l = log_scale_;
  double sign = 1.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    const double d = x - nodes_[k];
    log_l += std::log(std::abs(d));
    if (d < 0.0) sign = -sign;
    const double t = weights_[k] / d;
    sum += absolute ? std::abs(t) : t * values_[k];
  }
  if (absolute) return std::exp(log_l + std::log(sum));
  if (sum == 0.0) return 0.0;
  return (sum < 0.0 ? -sign : sign) * std::exp(log_l + std::log(std::abs(sum)));
}

double BaryPoly::basis_abs_sum(double x) const {
  if (nodes_.size() == 1 || coincident(x) >= 0) return 1.0;
  if (outside(x)) return extrapolate(x, true);
  double den = 0.0;
  double abs_sum = 0.0;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    const double t = weights_[k] / (x - nodes_[k]);
    den += t;
    abs_sum += std::abs(t);
  }
  return abs_sum / std::abs(den);
}

long BaryPoly::coincident(double x) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), x);
  long best = -1;
  double dist = std::numeric_limits<double>::infinity();
  if (it != nodes_.end()) {
    best = it - nodes_.begin();
    dist = *it - x;
  }
  if (it != nodes_.begin() && x - *(it - 1) < dist) {
    best = (it - 1) - nodes_.begin();
    dist = x - *(it - 1);
  }
  return dist <= snap_ ? best : -1;
}

double BaryPoly::operator()(double x) const {
  if (nodes_.size() == 1) return values_[0];
  if (long j = coincident(x); j >= 0) return values_[static_cast<std::size_t>(j)];
  if (outside(x)) return extrapolate(x, false);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    const double t = weights_[k] / (x - nodes_[k]);
    num += t * values_[k];
    den += t;
  }
  return num / den;
}

double BaryPoly::derivative(double x) const {
  if (nodes_.size() == 1) return 0.0;
  if (long jl = coincident(x); jl >= 0) {
    const auto j = static_cast<std::size_t>(jl);
    double s = 0.0;
    for (std::size_t k = 0; k < nodes_.size(); ++k) {
      if (k == j) continue;
      s += (weights_[k] / weights_[j]) * (values_[k] - values_[j]) / (nodes_[j] - nodes_[k]);
    }
    return s;
  }
  const double px = (*this)(x);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < nodes_.size(); ++k) {
    const double d = x - nodes_[k];
    const double t = weights_[k] / d;
    num += t * (px - values_[k]) / d;
    den += t;
  }
  return num / den;
}

ChebPoly ChebPoly::from_bary(const BaryPoly& p) {
  const int n = p.degree_bound();
  if (n == 0) return ChebPoly({p.values()[0]});
  // DCT-I of samples at x_j = cos(j pi / n).
  std::vector<double> f(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) f[static_cast<std::size_t>(j)] = p(std::cos(std::numbers::pi * j / n));
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    double s = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double half = (j == 0 || j == n) ? 0.5 : 1.0;
      s += half * f[static_cast<std::size_t>(j)] * std::cos(std::numbers::pi * static_cast<double>(j) * k / n);
    }
    c[static_cast<std::size_t>(k)] = (2.0 / n) * s * ((k == 0 || k == n) ? 0.5 : 1.0);
  }
  return ChebPoly(std::move(c));
}

BaryPoly ChebPoly::to_bary() const {
  const int n = std::max(degree(), 0);
  auto x = chebyshev_second_kind_points(std::max(n, 1));
  if (n == 0) x = {0.0};
  std::vector<double> values(x.size());
  std::vector<double> w(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    values[j] = (*this)(x[j]);
    const double half = (j == 0 || j + 1 == x.size()) ? 0.5 : 1.0;
    w[j] = ((j % 2 == 0) ? 1.0 : -1.0) * half;
  }
  if (n == 0) w = {1.0};
  return BaryPoly(std::move(x), std::move(values), std::move(w));
}

double ChebPoly::operator()(double x) const {
  double b1 = 0.0;
  double b2 = 0.0;
  for (std::size_t k = coeffs_.size(); k-- > 1;) {
    const double b0 = coeffs_[k] + 2.0 * x * b1 - b2;
    b2 = b1;
    b1 = b0;
  }
  return (coeffs_.empty() ? 0.0 : coeffs_[0]) + x * b1 - b2;
}

double ChebPoly::derivative(double x) const {
  const int n = degree();
  if (n <= 0) return 0.0;
  std::vector<double> d(static_cast<std::size_t>(n) + 1, 0.0);
  for (int k = n; k >= 1; --k) {
    const double next = (k + 1 <= n) ? d[static_cast<std::size_t>(k) + 1] : 0.0;
    d[static_cast<std::size_t>(k) - 1] = next + 2.0 * k * coeffs_[static_cast<std::size_t>(k)];
  }
  d[0] *= 0.5;
  d.pop_back();
  return ChebPoly(std::move(d))(x);
}

std::vector<double> chebyshev_zeros(int N) {
  if (N < 1) throw InvalidArgument("chebyshev_zeros: N must be at least 1");
  std::vector<double> y(static_cast<std::size_t>(N));
  for (int n = 0; n < N; ++n) y[static_cast<std::size_t>(n)] = -std::cos((2.0 * n + 1.0) * std::numbers::pi / (2.0 * N));
  // cos is only symmetric to rounding; enforce exact mirror symmetry.
  for (int n = 0; n < N / 2; ++n) y[static_cast<std::size_t>(N - 1 - n)] = -y[static_cast<std::size_t>(n)];
  if (N % 2 == 1) y[static_cast<std::size_t>(N / 2)] = 0.0;
  return y;
}

std::vector<double> chebyshev_second_kind_points(int N) {
  if (N < 1) throw InvalidArgument("chebyshev_second_kind_points: N must be at least 1");
  std::vector<double> z(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) z[static_cast<std::size_t>(n)] = -std::cos(n * std::numbers::pi / N);
  for (int n = 0; n <= N / 2; ++n) z[static_cast<std::size_t>(N - n)] = -z[static_cast<std::size_t>(n)];
  if (N % 2 == 0) z[static_cast<std::size_t>(N / 2)] = 0.0;
  z.front() = -1.0;
  z.back() = 1.0;
  return z;
}

void chebyshev_basis(double x, std::span<double> out) {
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() > 1) out[1] = x;
  for (std::size_t k = 2; k < out.size(); ++k) out[k] = 2.0 * x * out[k - 1] - out[k - 2];
}

double lebesgue_function(std::span<const double> Y, double x) {
  if (Y.size() < 2) throw InvalidArgument("lebesgue_function: need at least two nodes");
  const BaryPoly basis(std::vector<double>(Y.begin(), Y.end()), std::vector<double>(Y.size(), 1.0));
  return basis.basis_abs_sum(x);
}

BaryPoly alternating_poly(std::span<const double> Y, std::span<const double> weights, int n) {
  const int N = static_cast<int>(Y.size()) - 1;
  if (N < 1 || n < 0 || n > N - 1) throw InvalidArgument("alternating_poly: need |Y| >= 2 and 0 <= n < N");
  std::vector<double> values(Y.size());
  for (int k = 0; k <= N; ++k) {
    const int e = k <= n ? n - k : n + 1 - k;
    values[static_cast<std::size_t>(k)] = (e % 2 == 0) ? 1.0 : -1.0;
  }
  return BaryPoly(std::vector<double>(Y.begin(), Y.end()), std::move(values),
                  std::vector<double>(weights.begin(), weights.end()));
}

BaryPoly alternating_poly(std::span<const double> Y, int n) {
  return alternating_poly(Y, barycentric_weights(Y), n);
}

Extremum lebesgue_constant(std::span<const double> Y) {
  if (Y.size() < 2) throw InvalidArgument("lebesgue_constant: need at least two nodes");
  const auto w = barycentric_weights(Y);
  Extremum best{Y.front(), 1.0};
  for (int n = 0; n + 1 < static_cast<int>(Y.size()); ++n) {
    const auto p = alternating_poly(Y, w, n);
    const auto e = maximize(p, Y[static_cast<std::size_t>(n)], Y[static_cast<std::size_t>(n) + 1]);
    if (e.value > best.value) best = e;
  }
  return best;
}

Extremum maximize(const BaryPoly& p, double a, double b, bool absolute) {
  if (absolute) {
    return maximize([&p](double x) { return std::abs(p(x)); },
                    [&p](double x) { return p(x) < 0.0 ? -p.derivative(x) : p.derivative(x); }, a, b);
  }
  return maximize([&p](double x) { return p(x); }, [&p](double x) { return p.derivative(x); }, a, b);
}

Extremum maximize(const std::function<double(double)>& f, const std::function<double(double)>& df, double a,
                  double b, int proxy_points, int candidates) {
  if (!(b > a)) return {a, f(a)};
  const int n = std::max(proxy_points, 3);
  std::vector<double> t(static_cast<std::size_t>(n));
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double s = -std::cos(std::numbers::pi * j / (n - 1));
    t[static_cast<std::size_t>(j)] = j == 0 ? a : (j == n - 1 ? b : 0.5 * (a + b) + 0.5 * (b - a) * s);
    v[static_cast<std::size_t>(j)] = f(t[static_cast<std::size_t>(j)]);
  }

  // Local maxima of the sampled sequence, best first; ties keep the smaller x.
  std::vector<int> local;
  for (int j = 0; j < n; ++j) {
    const auto u = static_cast<std::size_t>(j);
    const bool left_ok = j == 0 || v[u] >= v[u - 1];
    const bool right_ok = j == n - 1 || v[u] >= v[u + 1];
    if (left_ok && right_ok) local.push_back(j);
  }
  std::stable_sort(local.begin(), local.end(),
                   [&v](int i, int k) { return v[static_cast<std::size_t>(i)] > v[static_cast<std::size_t>(k)]; });
  if (static_cast<int>(local.size()) > candidates) local.resize(static_cast<std::size_t>(candidates));

  const double xtol = std::max(1e-12 * (b - a), 4.0 * std::numeric_limits<double>::epsilon() *
                                                    std::max(std::abs(a), std::abs(b)));
  Extremum best{t[static_cast<std::size_t>(local.front())], v[static_cast<std::size_t>(local.front())]};
  for (int j : local) {
    const double lo = t[static_cast<std::size_t>(std::max(j - 1, 0))];
    const double hi = t[static_cast<std::size_t>(std::min(j + 1, n - 1))];
    const double glo = df(lo);
    const double ghi = df(hi);
    double x;
    if (glo > 0.0 && ghi < 0.0) {
      x = bracketed_root(df, lo, hi, glo, ghi, xtol);
    } else {
      x = golden_max(f, lo, hi, xtol);
    }
    const double fx = f(x);
    if (fx > best.value) best = {x, fx};
  }
  return best;
}

}  // namespace maxpoly
