#include "maxpoly/leastsq.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "maxpoly/error.hpp"

namespace maxpoly {

namespace {

Eigen::MatrixXd design_matrix(std::span<const double> x, int N) {
  Eigen::MatrixXd V(static_cast<Eigen::Index>(x.size()), N + 1);
  std::vector<double> row(static_cast<std::size_t>(N) + 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    chebyshev_basis(x[i], row);
    for (int k = 0; k <= N; ++k) V(static_cast<Eigen::Index>(i), k) = row[static_cast<std::size_t>(k)];
  }
  return V;
}

// Rows T_k'(x) = k U_{k-1}(x).
Eigen::MatrixXd derivative_matrix(std::span<const double> x, int N) {
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(x.size()), N + 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    double u_prev = 0.0;  // U_{-1}
    double u = 1.0;       // U_0
    for (int k = 1; k <= N; ++k) {
      D(static_cast<Eigen::Index>(i), k) = k * u;
      const double next = 2.0 * x[i] * u - u_prev;
      u_prev = u;
      u = next;
    }
  }
  return D;
}

Eigen::HouseholderQR<Eigen::MatrixXd> factor(const NodeSet& nodes, int N) {
  if (N < 0 || N > nodes.M()) throw InvalidArgument("least squares: need 0 <= N <= M");
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(design_matrix(nodes.points(), N));
  const Eigen::MatrixXd R = qr.matrixQR().topLeftCorner(N + 1, N + 1).triangularView<Eigen::Upper>();
  const double scale = R.diagonal().cwiseAbs().maxCoeff();
  if (!(R.diagonal().cwiseAbs().minCoeff() > 1e-14 * scale)) {
    throw NumericalError("rank", "least squares design matrix is rank deficient");
  }
  return qr;
}

}  // namespace

double discrete_norm(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) s += v * v;
  return std::sqrt(2.0 / static_cast<double>(values.size()) * s);
}

LsqFit fit(const NodeSet& nodes, int N, std::span<const double> samples) {
  if (samples.size() != nodes.size()) throw InvalidArgument("fit: need one sample per node");
  const auto qr = factor(nodes, N);
  const Eigen::Map<const Eigen::VectorXd> f(samples.data(), static_cast<Eigen::Index>(samples.size()));
  const Eigen::VectorXd c = qr.solve(f);

  LsqFit out;
  out.degree = N;
  out.M = nodes.M();
  out.poly = ChebPoly(std::vector<double>(c.data(), c.data() + c.size()));
  std::vector<double> r(samples.size());
  for (std::size_t m = 0; m < samples.size(); ++m) r[m] = samples[m] - out.poly(nodes[m]);
  out.residual_discrete = discrete_norm(r);
  return out;
}

LsqFit fit(const NodeSet& nodes, int N, const std::function<double(double)>& f) {
  std::vector<double> s(nodes.size());
  for (std::size_t m = 0; m < s.size(); ++m) s[m] = f(nodes[m]);
  return fit(nodes, N, s);
}

ConditionEstimate condition_number_inf(const NodeSet& nodes, int N, const ConditionOptions& options) {
  const auto qr = factor(nodes, N);
  const int M = nodes.M();
  // Coefficients of all impulse responses: (N+1) x (M+1).
  const Eigen::MatrixXd C = qr.solve(Eigen::MatrixXd::Identity(M + 1, M + 1));

  const auto lebesgue_like = [&](double x) {
    const double xs[] = {x};
    const Eigen::RowVectorXd r = design_matrix(xs, N) * C;
    return r.cwiseAbs().sum();
  };
  const auto slope = [&](double x) {
    const double xs[] = {x};
    const Eigen::RowVectorXd r = design_matrix(xs, N) * C;
    const Eigen::RowVectorXd dr = derivative_matrix(xs, N) * C;
    double s = 0.0;
    for (Eigen::Index j = 0; j < r.size(); ++j) s += r(j) < 0.0 ? -dr(j) : dr(j);
    return s;
  };

  const int P = std::max(options.probe_grid_size > 0 ? options.probe_grid_size : 20 * M, 16);
  std::vector<double> t(static_cast<std::size_t>(P));
  for (int j = 0; j < P; ++j) t[static_cast<std::size_t>(j)] = -std::cos(std::numbers::pi * j / (P - 1));
  t.front() = -1.0;
  t.back() = 1.0;
  const Eigen::VectorXd vals = (design_matrix(t, N) * C).cwiseAbs().rowwise().sum();

  std::vector<int> local;
  for (int j = 0; j < P; ++j) {
    const bool l = j == 0 || vals(j) >= vals(j - 1);
    const bool r = j == P - 1 || vals(j) >= vals(j + 1);
    if (l && r) local.push_back(j);
  }
  std::stable_sort(local.begin(), local.end(), [&](int a, int b) { return vals(a) > vals(b); });
  if (static_cast<int>(local.size()) > options.refine_candidates) local.resize(static_cast<std::size_t>(options.refine_candidates));

  ConditionEstimate est;
  est.grid_resolution = P;
  est.kappa_inf = vals(local.front());
  est.argmax = t[static_cast<std::size_t>(local.front())];
  for (int j : local) {
    const double lo = t[static_cast<std::size_t>(std::max(j - 1, 0))];
    const double hi = t[static_cast<std::size_t>(std::min(j + 1, P - 1))];
    const auto e = maximize(lebesgue_like, slope, lo, hi, 9, 1);
    if (e.value > est.kappa_inf) {
      est.kappa_inf = e.value;
      est.argmax = e.x;
    }
  }
  if (options.with_bracket) {
    const auto b = compute_B(nodes, N, options.b_options);
    est.bracket = std::make_pair(b.B, std::sqrt(M + 1.0) * b.B);
  }
  return est;
}

int stable_degree(const WeightSpec& w, int M, double c) {
  if (M < 1) throw InvalidArgument("stable_degree: M must be at least 1");
  const double nu = 1.0 / (2.0 * (w.gamma() + 1.0));
  const int N = static_cast<int>(std::lround(c * std::pow(static_cast<double>(M), nu)));
  return std::clamp(N, 1, M);
}

double sup_error(const LsqFit& p, const NodeSet& nodes, const std::function<double(double)>& f, int samples) {
  double e = 0.0;
  for (int j = 0; j < samples; ++j) {
    const double x = -std::cos(std::numbers::pi * j / (samples - 1));
    e = std::max(e, std::abs(f(x) - p(x)));
  }
  for (double x : nodes.points()) e = std::max(e, std::abs(f(x) - p(x)));
  return e;
}

}  // namespace maxpoly
