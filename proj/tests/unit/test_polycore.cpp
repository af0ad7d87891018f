#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "maxpoly/nodes.hpp"
#include "maxpoly/polycore.hpp"
#include "oracles.hpp"

using namespace maxpoly;

namespace {

std::vector<double> equispaced(int n) {
  std::vector<double> y(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / (n - 1);
  return y;
}

}  // namespace

TEST_CASE("chebyshev zeros") {
  CHECK(chebyshev_zeros(1) == std::vector<double>{0.0});
  const auto z2 = chebyshev_zeros(2);
  CHECK(z2[0] == doctest::Approx(-std::sqrt(2.0) / 2).epsilon(1e-15));
  CHECK(z2[1] == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-15));

  const auto roots = oracles::bisection_roots([](double x) { return std::cos(4.0 * std::acos(x)); }, -1.0, 1.0, 1000);
  const auto z4 = chebyshev_zeros(4);
  REQUIRE(roots.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(z4[i] - roots[i]) <= 1e-12);

  for (int N : {5, 16, 33}) {
    const auto z = chebyshev_zeros(N);
    for (std::size_t i = 0; i < z.size(); ++i) CHECK(z[i] == -z[z.size() - 1 - i]);
  }
}

TEST_CASE("second-kind chebyshev points") {
  CHECK(chebyshev_second_kind_points(2) == std::vector<double>{-1.0, 0.0, 1.0});
  const auto z3 = chebyshev_second_kind_points(3);
  CHECK(z3[1] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(z3[2] == doctest::Approx(0.5).epsilon(1e-15));
  const auto z4 = chebyshev_second_kind_points(4);
  CHECK(z4[1] == doctest::Approx(-std::sqrt(2.0) / 2).epsilon(1e-15));
  CHECK(z4[2] == 0.0);
}

TEST_CASE("barycentric interpolation reproduces nodes and polynomials") {
  const std::vector<double> y = {-1.0, -0.3, 0.1, 0.7, 1.0};
  const std::vector<double> v = {2.0, -1.0, 0.5, 3.0, -2.0};
  const BaryPoly p(y, v);
  for (std::size_t k = 0; k < y.size(); ++k) CHECK(p(y[k]) == v[k]);
  for (double x : {-0.95, -0.5, 0.0, 0.33, 0.99}) CHECK(p(x) == doctest::Approx(oracles::interpolate(y, v, x)).epsilon(1e-13));
  CHECK(p.degree_bound() == 4);
}

TEST_CASE("extrapolation outside the node hull stays accurate") {
  // Nodes clustered in [-0.5, 0.5]; the first form avoids the cancellation of
  // the second form far outside.
  std::vector<double> y;
  for (int k = 0; k <= 20; ++k) y.push_back(-0.5 * std::cos(k * std::numbers::pi / 20));
  std::vector<double> v(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) v[k] = (k % 2 == 0) ? 1.0 : -1.0;
  const BaryPoly p(y, v);
  for (double x : {-1.0, -0.8, 0.9, 1.0}) {
    const double ref = oracles::interpolate(y, v, x);
    CHECK(std::abs(p(x) - ref) <= 1e-11 * std::abs(ref));
    CHECK(std::abs(p.basis_abs_sum(x) - oracles::lebesgue(y, x)) <= 1e-11 * oracles::lebesgue(y, x));
  }
}

TEST_CASE("partition of unity") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n : {3, 8, 30}) {
    const std::vector<double> y = equispaced(n);
    const BaryPoly one(y, std::vector<double>(y.size(), 1.0));
    for (int t = 0; t < 50; ++t) {
      const double x = u(rng);
      double sum = 0.0;
      for (std::size_t k = 0; k < y.size(); ++k) {
        std::vector<double> e(y.size(), 0.0);
        e[k] = 1.0;
        sum += BaryPoly(y, e)(x);
      }
      // Cancellation among basis values of total size L(x).
      CHECK(std::abs(sum - 1.0) <= 1e-14 * oracles::lebesgue(y, x));
      CHECK(std::abs(one(x) - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("derivative of a barycentric polynomial") {
  const auto z = chebyshev_second_kind_points(6);
  std::vector<double> v;
  for (double x : z) v.push_back(x * x * x - 2 * x);
  const BaryPoly p(z, v);
  for (double x : {-0.9, -0.2, 0.0, 0.5, z[2], 1.0}) CHECK(p.derivative(x) == doctest::Approx(3 * x * x - 2).epsilon(1e-11));
}

TEST_CASE("chebyshev coefficients round-trip through barycentric form") {
  std::mt19937 rng(11);
  std::normal_distribution<double> g;
  for (int n : {0, 1, 5, 40, 300}) {
    std::vector<double> c(static_cast<std::size_t>(n) + 1);
    for (auto& ci : c) ci = g(rng);
    const ChebPoly p(c);
    const auto b = p.to_bary();
    const auto back = ChebPoly::from_bary(b);
    REQUIRE(back.coeffs().size() == c.size());
    double scale = 0.0;
    for (double ci : c) scale = std::max(scale, std::abs(ci));
    for (std::size_t k = 0; k < c.size(); ++k) CHECK(std::abs(back.coeffs()[k] - c[k]) <= 1e-10 * scale);
    for (double x : {-0.77, 0.01, 0.6}) {
      double direct = 0.0;
      for (int k = 0; k <= n; ++k) direct += c[static_cast<std::size_t>(k)] * std::cos(k * std::acos(x));
      CHECK(std::abs(p(x) - direct) <= 1e-12 * (1 + std::abs(direct)) * (n + 1));
    }
  }
}

TEST_CASE("chebyshev derivative") {
  const ChebPoly p({0.0, 0.0, 0.0, 1.0});  // T_3 = 4x^3 - 3x
  for (double x : {-1.0, -0.3, 0.4, 1.0}) CHECK(p.derivative(x) == doctest::Approx(12 * x * x - 3).epsilon(1e-13));
}

TEST_CASE("lebesgue function") {
  const std::vector<double> y = {-1.0, 0.0, 1.0};
  CHECK(lebesgue_function(y, 0.5) == doctest::Approx(1.25).epsilon(1e-14));
  for (double yk : y) CHECK(lebesgue_function(y, yk) == 1.0);

  const auto e10 = equispaced(10);
  const double x = 0.5 * (e10[0] + e10[1]);
  CHECK(std::abs(lebesgue_function(e10, x) - oracles::lebesgue(e10, x)) <= 1e-10);
  for (int i = 0; i <= 100; ++i) CHECK(lebesgue_function(e10, -1.0 + i / 50.0) >= 1.0 - 1e-14);
}

TEST_CASE("lebesgue constant") {
  const auto e = lebesgue_constant(std::vector<double>{-1.0, 0.0, 1.0});
  CHECK(std::abs(e.value - 1.25) <= 1e-12);
  CHECK(std::abs(std::abs(e.x) - 0.5) <= 1e-8);

  for (int N : {10, 15, 20}) {
    const auto y = equispaced(N + 1);
    const double asym = std::pow(2.0, N + 1) / (std::numbers::e * N * std::log(N));
    const double lam = lebesgue_constant(y).value;
    CHECK(lam / asym <= 2.0);
    CHECK(lam / asym >= 0.5);
    // Independent dense maximisation of the product form.
    double ref = 0.0;
    for (std::size_t k = 0; k + 1 < y.size(); ++k) {
      ref = std::max(ref, oracles::dense_max([&](double t) { return oracles::lebesgue(y, t); }, y[k], y[k + 1], 200));
    }
    CHECK(lam == doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("alternating polynomial") {
  const std::vector<double> y = {-1.0, 0.0, 1.0};
  const auto p = alternating_poly(y, 1);
  CHECK(p.values()[0] == -1.0);
  CHECK(p.values()[1] == 1.0);
  CHECK(p.values()[2] == 1.0);
  CHECK(p(0.5) == doctest::Approx(1.25).epsilon(1e-14));
  for (double x : {-0.7, 0.2, 0.9}) CHECK(p(x) == doctest::Approx(-x * x + x + 1).epsilon(1e-14));

  const auto q = alternating_poly(std::vector<double>{-1.0, 1.0}, 0);
  CHECK(q(0.3) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("alternating polynomial equals the lebesgue function on its interval") {
  std::vector<std::vector<double>> sets = {equispaced(7), chebyshev_second_kind_points(9)};
  const auto oc = NodeSet::from_weight(WeightSpec::preset("OC"), 12);
  sets.emplace_back(oc.points().begin(), oc.points().end());
  for (const auto& y : sets) {
    const int N = static_cast<int>(y.size()) - 1;
    for (int n = 0; n < N; ++n) {
      const auto p = alternating_poly(y, n);
      for (int i = 1; i <= 50; ++i) {
        const double x = y[static_cast<std::size_t>(n)] + (y[static_cast<std::size_t>(n) + 1] - y[static_cast<std::size_t>(n)]) * i / 51.0;
        const double L = oracles::lebesgue(y, x);
        CHECK(std::abs(p(x) - L) <= 1e-9 * L);
      }
    }
  }
}

TEST_CASE("alternating polynomial stays below one on the neighbouring intervals") {
  std::vector<std::vector<double>> sets = {equispaced(7), equispaced(12), chebyshev_second_kind_points(10)};
  const auto c2 = NodeSet::from_weight(WeightSpec::preset("C2"), 11);
  sets.emplace_back(c2.points().begin(), c2.points().end());
  for (const auto& y : sets) {
    const int N = static_cast<int>(y.size()) - 1;
    for (int n = 0; n < N; ++n) {
      const auto p = alternating_poly(y, n);
      for (int side : {-1, 1}) {
        const int a = side < 0 ? n - 1 : n + 1;
        if (a < 0 || a + 1 > N) continue;
        for (int i = 1; i < 40; ++i) {
          const double x = y[static_cast<std::size_t>(a)] + (y[static_cast<std::size_t>(a) + 1] - y[static_cast<std::size_t>(a)]) * i / 40.0;
          CHECK(p(x) < 1.0);
        }
      }
    }
  }
}

TEST_CASE("maximize finds interior and endpoint maxima") {
  const auto z = chebyshev_second_kind_points(4);
  std::vector<double> v;
  for (double x : z) v.push_back(1.0 - (x - 0.3) * (x - 0.3));
  const BaryPoly p(z, v);
  const auto e = maximize(p, -1.0, 1.0);
  CHECK(std::abs(e.x - 0.3) <= 1e-9);
  CHECK(e.value == doctest::Approx(1.0).epsilon(1e-14));
  const auto e2 = maximize(p, -1.0, 0.0);
  CHECK(e2.x == doctest::Approx(0.0));

  std::vector<double> w;
  for (double x : z) w.push_back(x * x * x * x - x * x);  // min -1/4 at +-1/sqrt 2
  const auto e3 = maximize(BaryPoly(z, w), 0.1, 0.9, true);
  CHECK(e3.value == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(e3.x == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-9));
}
