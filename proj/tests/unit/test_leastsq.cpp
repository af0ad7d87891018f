#include <doctest.h>

#include <cmath>
#include <numbers>

#include "maxpoly/leastsq.hpp"
#include "oracles.hpp"

using namespace maxpoly;

namespace {

// sum_j |r_j(x)|, each r_j fitted separately.
double impulse_sum(const NodeSet& nodes, int N, double x) {
  std::vector<double> e(nodes.size(), 0.0);
  double s = 0.0;
  for (std::size_t j = 0; j < e.size(); ++j) {
    e[j] = 1.0;
    s += std::abs(fit(nodes, N, e)(x));
    e[j] = 0.0;
  }
  return s;
}

}  // namespace

TEST_CASE("polynomials of degree at most N are reproduced") {
  const auto nodes = NodeSet::from_weight(WeightSpec::preset("UC"), 40);
  const auto f = [](double x) { return 3.0 - x + 0.5 * x * x * x - 2.0 * std::pow(x, 7); };
  const auto p = fit(nodes, 7, f);
  CHECK(p.degree == 7);
  CHECK(p.residual_discrete <= 1e-13);
  for (double x : {-1.0, -0.4, 0.2, 0.9}) CHECK(p(x) == doctest::Approx(f(x)).epsilon(1e-12));
}

TEST_CASE("N = M interpolates") {
  const auto nodes = NodeSet::from_weight(WeightSpec::preset("C2"), 12);
  const auto f = [](double x) { return std::exp(std::sin(3 * x)); };
  const auto p = fit(nodes, 12, f);
  for (double x : nodes.points()) CHECK(p(x) == doctest::Approx(f(x)).epsilon(1e-11));
  const std::vector<double> y(nodes.points().begin(), nodes.points().end());
  std::vector<double> v;
  for (double x : y) v.push_back(f(x));
  for (double x : {-0.95, -0.1, 0.37}) CHECK(p(x) == doctest::Approx(oracles::interpolate(y, v, x)).epsilon(1e-10));
}

TEST_CASE("the residual is orthogonal to the polynomial space") {
  const auto nodes = NodeSet::from_weight(WeightSpec::preset("U"), 30);
  const auto f = [](double x) { return 1.0 / (1.0 + 25.0 * x * x); };
  const auto p = fit(nodes, 8, f);
  for (int k = 0; k <= 8; ++k) {
    double dot = 0.0;
    for (double x : nodes.points()) dot += (f(x) - p(x)) * std::cos(k * std::acos(x));
    CHECK(std::abs(dot) <= 1e-12);
  }
  std::vector<double> fv, pv, rv;
  for (double x : nodes.points()) {
    fv.push_back(f(x));
    pv.push_back(p(x));
    rv.push_back(f(x) - p(x));
  }
  CHECK(discrete_norm(pv) <= discrete_norm(fv));
  CHECK(p.residual_discrete == doctest::Approx(discrete_norm(rv)).epsilon(1e-12));
  CHECK(discrete_norm(std::vector<double>{1.0, 1.0, 1.0}) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("kappa for N = M is the lebesgue constant") {
  for (const char* preset : {"U", "C2", "OC"}) {
    const auto nodes = NodeSet::from_weight(WeightSpec::preset(preset), 9);
    const std::vector<double> y(nodes.points().begin(), nodes.points().end());
    CHECK(condition_number_inf(nodes, 9).kappa_inf == doctest::Approx(lebesgue_constant(y).value).epsilon(1e-8));
  }
}

TEST_CASE("kappa for N = 0 is 1") {
  const auto nodes = NodeSet::from_weight(WeightSpec::preset("OC"), 15);
  CHECK(condition_number_inf(nodes, 0).kappa_inf == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("kappa is the impulse sum at its argmax and dominates it elsewhere") {
  const auto nodes = NodeSet::from_weight(WeightSpec::preset("U"), 20);
  const auto c = condition_number_inf(nodes, 6);
  CHECK(c.grid_resolution == 400);
  CHECK(c.kappa_inf == doctest::Approx(impulse_sum(nodes, 6, c.argmax)).epsilon(1e-10));
  const double dense = oracles::dense_max([&](double x) { return impulse_sum(nodes, 6, x); }, -1.0, 1.0, 400);
  CHECK(c.kappa_inf >= dense * (1 - 1e-10));
}

TEST_CASE("kappa lies in the B bracket") {
  for (const char* preset : {"U", "C2", "UC"}) {
    const auto nodes = NodeSet::from_weight(WeightSpec::preset(preset), 16);
    for (int N : {2, 5, 8, 12}) {
      ConditionOptions o;
      o.with_bracket = true;
      const auto c = condition_number_inf(nodes, N, o);
      REQUIRE(c.bracket);
      CHECK(c.bracket->first <= c.kappa_inf * (1 + 1e-6));
      CHECK(c.kappa_inf <= c.bracket->second * (1 + 1e-6));
      CHECK(c.bracket->second == doctest::Approx(std::sqrt(17.0) * c.bracket->first));
    }
  }
}

TEST_CASE("stable degree") {
  CHECK(stable_degree(WeightSpec::preset("U"), 100) == 30);
  CHECK(stable_degree(WeightSpec::preset("C2"), 1000) == 30);
  CHECK(stable_degree(WeightSpec::preset("U"), 4) == 4);
  CHECK(stable_degree(WeightSpec::preset("U"), 1, 0.01) == 1);
  CHECK_THROWS_AS(stable_degree(WeightSpec::preset("U"), 0), InvalidArgument);
}

TEST_CASE("geometric convergence on oversampled Chebyshev nodes") {
  const auto f = [](double x) { return 1.0 / (2.0 - x); };
  std::vector<double> ns, logs;
  for (int N = 4; N <= 20; N += 4) {
    const auto nodes = NodeSet::from_weight(WeightSpec::preset("C1"), 2 * N);
    ns.push_back(N);
    logs.push_back(std::log(sup_error(fit(nodes, N, f), nodes, f)));
  }
  const auto line = oracles::fit_line(ns, logs);
  const double rate = std::log(2.0 + std::sqrt(3.0));
  CHECK(-line.slope == doctest::Approx(rate).epsilon(0.1));
}

TEST_CASE("sup error covers the nodes") {
  const auto nodes = NodeSet::from_points({-1.0, 0.0, 1.0});
  const auto f = [](double x) { return x == 0.0 ? 1.0 : 0.0; };
  const auto p = fit(nodes, 0, f);
  CHECK(p(0.3) == doctest::Approx(1.0 / 3.0));
  CHECK(sup_error(p, nodes, f, 10) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("invalid arguments") {
  const auto nodes = NodeSet::from_weight(WeightSpec::preset("U"), 5);
  CHECK_THROWS_AS(fit(nodes, 6, [](double) { return 0.0; }), InvalidArgument);
  CHECK_THROWS_AS(fit(nodes, 2, std::vector<double>(4, 0.0)), InvalidArgument);
}
