#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "maxpoly/bounds.hpp"
#include "maxpoly/oracle.hpp"
#include "maxpoly/remez.hpp"
#include "oracles.hpp"

using namespace maxpoly;

namespace {

void check_trace(const RemezTrace& t) {
  CHECK(t.converged);
  for (std::size_t i = 1; i < t.lvalues.size(); ++i) CHECK(t.lvalues[i] <= t.lvalues[i - 1] * (1 + 1e-13));
}

}  // namespace

TEST_CASE("initial reference sets contain the anchor pair") {
  const auto nodes = NodeSet::from_weight(WeightSpec::preset("OC"), 50);
  for (int N : {1, 2, 10, 49, 50}) {
    for (int m : {0, 7, 25, 49}) {
      for (const auto& ref : {initial_reference(nodes, N, m), random_reference(nodes, N, m, 42)}) {
        REQUIRE(ref.indices.size() == static_cast<std::size_t>(N) + 1);
        CHECK(std::is_sorted(ref.indices.begin(), ref.indices.end()));
        CHECK(std::adjacent_find(ref.indices.begin(), ref.indices.end()) == ref.indices.end());
        CHECK(ref.indices[static_cast<std::size_t>(ref.n_anchor)] == m);
        CHECK(ref.indices[static_cast<std::size_t>(ref.n_anchor) + 1] == m + 1);
      }
    }
  }
}

TEST_CASE("interpolation: the only reference set is the whole grid") {
  const auto nodes = NodeSet::from_weight(WeightSpec::preset("UC"), 9);
  const std::vector<double> y(nodes.points().begin(), nodes.points().end());
  for (int m = 0; m < 9; ++m) {
    const auto s = solve_subinterval(nodes, 9, m);
    CHECK(s.trace.iterations == 0);
    const double x = 0.3 * nodes[static_cast<std::size_t>(m)] + 0.7 * nodes[static_cast<std::size_t>(m) + 1];
    CHECK(s.poly(x) == doctest::Approx(oracles::lebesgue(y, x)).epsilon(1e-12));
  }
}

TEST_CASE("both variants agree with the enumeration oracle") {
  const auto nodes = NodeSet::from_weight(WeightSpec::preset("U"), 6);
  CHECK(compute_B_point(nodes, 3, 0.4) == doctest::Approx(oracle::B_point(nodes, 3, 0.4).value).epsilon(1e-10));
  for (Variant v : {Variant::first, Variant::second}) {
    RemezOptions o;
    o.variant = v;
    for (int m = 0; m < 6; ++m) {
      const auto s = solve_subinterval(nodes, 3, m, o);
      check_trace(s.trace);
      for (double t : {0.2, 0.5, 0.9}) {
        const double x = nodes[static_cast<std::size_t>(m)] + t * (nodes[static_cast<std::size_t>(m) + 1] - nodes[static_cast<std::size_t>(m)]);
        CHECK(s.poly(x) == doctest::Approx(oracle::B_point(nodes, 3, x).value).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("random initial references converge to the same polynomial") {
  const auto nodes = NodeSet::from_weight(WeightSpec::preset("OC"), 40);
  const auto ref = solve_subinterval(nodes, 10, 20);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    RemezOptions o;
    o.variant = Variant::first;
    o.random_init = true;
    o.seed = seed;
    const auto s = solve_subinterval(nodes, 10, 20, o);
    check_trace(s.trace);
    for (double x : nodes.points()) CHECK(std::abs(s.poly(x) - ref.poly(x)) <= 1e-8);
  }
}

TEST_CASE("converged polynomial: unit values on the reference, bounded on the grid") {
  const auto nodes = NodeSet::from_weight(WeightSpec::preset("C2"), 40);
  for (int m : {0, 5, 19}) {
    const auto s = solve_subinterval(nodes, 16, m);
    check_trace(s.trace);
    for (int i : s.reference.indices) CHECK(std::abs(std::abs(s.poly(nodes[static_cast<std::size_t>(i)])) - 1.0) <= 1e-9);
    for (double x : nodes.points()) CHECK(std::abs(s.poly(x)) <= 1.0 + 1e-9);
  }
}

TEST_CASE("B at nodes and for constants") {
  const auto nodes = NodeSet::from_weight(WeightSpec::preset("UC"), 10);
  CHECK(compute_B_point(nodes, 4, nodes[3]) == 1.0);
  CHECK(compute_B_point(nodes, 0, 0.123) == 1.0);
  const auto r = compute_B(nodes, 0);
  CHECK(r.B == 1.0);
  CHECK(r.per_interval.size() == 10);
}

TEST_CASE("B(2,2) on three equispaced points is 5/4") {
  const auto r = compute_B(NodeSet::from_points({-1.0, 0.0, 1.0}), 2);
  CHECK(std::abs(r.B - 1.25) <= 1e-12);
  CHECK(std::abs(std::abs(r.argmax_x) - 0.5) <= 1e-8);
}

TEST_CASE("maximal result: B is the largest local maximum and the polynomial is admissible") {
  const auto nodes = NodeSet::from_weight(WeightSpec::preset("OC"), 30);
  const auto r = compute_B(nodes, 20);
  CHECK_FALSE(r.partial);
  REQUIRE(r.per_interval.size() == 30);
  double best = 0.0;
  for (const auto& iv : r.per_interval) best = std::max(best, iv.local_max);
  CHECK(r.B == best);
  CHECK(r.log10_B == doctest::Approx(std::log10(r.B)));
  for (double x : nodes.points()) CHECK(std::abs(r.polynomial(x)) <= 1.0 + 1e-9);
  CHECK(std::abs(r.polynomial(r.argmax_x)) == doctest::Approx(r.B).epsilon(1e-9));
}

TEST_CASE("symmetry shortcut, warm start and threads do not change the answer") {
  const auto nodes = NodeSet::from_weight(WeightSpec::preset("C2"), 36);
  const auto base = compute_B(nodes, 18);
  BOptions plain;
  plain.symmetry = false;
  plain.warm_start = false;
  const auto cold = compute_B(nodes, 18, plain);
  BOptions threaded;
  threaded.threads = 3;
  const auto par = compute_B(nodes, 18, threaded);
  REQUIRE(cold.per_interval.size() == base.per_interval.size());
  for (std::size_t i = 0; i < base.per_interval.size(); ++i) {
    CHECK(cold.per_interval[i].local_max == doctest::Approx(base.per_interval[i].local_max).epsilon(1e-9));
    CHECK(par.per_interval[i].local_max == base.per_interval[i].local_max);
  }
  CHECK(par.B == base.B);
}

TEST_CASE("symmetric weights give an even B(M,N,x)") {
  const auto nodes = NodeSet::from_weight(WeightSpec::preset("UC"), 21);
  for (double x : {0.05, 0.33, 0.71, 0.98}) {
    CHECK(compute_B_point(nodes, 9, x) == doctest::Approx(compute_B_point(nodes, 9, -x)).epsilon(1e-8));
  }
}

TEST_CASE("B is nondecreasing in N") {
  const auto nodes = NodeSet::from_weight(WeightSpec::preset("U"), 24);
  double prev = 1.0;
  for (int N = 1; N <= 24; ++N) {
    const double b = compute_B(nodes, N).B;
    CHECK(b >= prev - 1e-9);
    prev = b;
  }
}

TEST_CASE("B(N,N) is the lebesgue constant") {
  const auto nodes = NodeSet::from_weight(WeightSpec::preset("C2"), 14);
  const std::vector<double> y(nodes.points().begin(), nodes.points().end());
  CHECK(compute_B(nodes, 14).B == doctest::Approx(lebesgue_constant(y).value).epsilon(1e-10));
}

TEST_CASE("first variant is slower than the second on a large clustered grid") {
  const auto nodes = NodeSet::from_weight(WeightSpec::preset("OC"), 200);
  RemezOptions a;
  a.variant = Variant::first;
  const auto s1 = solve_subinterval(nodes, 120, 80, a);
  const auto s2 = solve_subinterval(nodes, 120, 80);
  check_trace(s1.trace);
  check_trace(s2.trace);
  CHECK(s2.trace.iterations < s1.trace.iterations);
  for (double x : nodes.points()) CHECK(std::abs(s1.poly(x) - s2.poly(x)) <= 1e-8);
}

TEST_CASE("growth with oversampling stays above Q and below the zeta bound") {
  const auto c1 = NodeSet::from_weight(WeightSpec::preset("C1"), 40);
  const auto up = zeta_upper_bound_B(c1, 10);
  REQUIRE(up);
  // zeta comes from arccos differences, which lose digits near the endpoints.
  CHECK(*up == doctest::Approx(1.0 / (1.0 - std::numbers::pi / 4)).epsilon(1e-10));
  CHECK(compute_B(c1, 10).B <= *up + 1e-9);
}

TEST_CASE("smallest M for bounded B") {
  const auto w = WeightSpec::preset("U");
  const int M = smallest_M_for_bounded_B(w, 8);
  CHECK(compute_B(NodeSet::from_weight(w, M), 8).B <= 10.0);
  CHECK(compute_B(NodeSet::from_weight(w, M - 1), 8).B > 10.0);
  CHECK_THROWS_AS(smallest_M_for_bounded_B(w, 30, 10.0, {}, 40), NumericalError);
}

TEST_CASE("invalid arguments") {
  const auto nodes = NodeSet::from_weight(WeightSpec::preset("U"), 6);
  CHECK_THROWS_AS(solve_subinterval(nodes, 7, 0), InvalidArgument);
  CHECK_THROWS_AS(solve_subinterval(nodes, 3, 6), InvalidArgument);
  CHECK_THROWS_AS(compute_B_point(nodes, 3, 1.5), InvalidArgument);
}
