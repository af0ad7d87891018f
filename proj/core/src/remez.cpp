#include "maxpoly/remez.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <thread>

namespace maxpoly {

namespace {

ReferenceSet make_reference(const NodeSet& nodes, std::vector<int> indices, int m) {
  std::sort(indices.begin(), indices.end());
  ReferenceSet ref;
  ref.anchor = m;
  auto it = std::find(indices.begin(), indices.end(), m);
  if (it == indices.end() || it + 1 == indices.end() || *(it + 1) != m + 1) {
    throw NumericalError("reference", "reference set lost its anchor pair", {{"m", static_cast<double>(m)}});
  }
  ref.n_anchor = static_cast<int>(it - indices.begin());
  std::vector<double> pts(indices.size());
  for (std::size_t k = 0; k < indices.size(); ++k) pts[k] = nodes[static_cast<std::size_t>(indices[k])];
  ref.bary = barycentric_weights(pts);
  ref.indices = std::move(indices);
  return ref;
}

// Inserts `target` into `set`, evicting the member closest in index that is
// not protected.
void force_member(std::vector<int>& set, int target, int protect) {
  if (std::find(set.begin(), set.end(), target) != set.end()) return;
  std::size_t best = set.size();
  int dist = 0;
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (set[k] == protect) continue;
    const int d = std::abs(set[k] - target);
    if (best == set.size() || d < dist) {
      best = k;
      dist = d;
    }
  }
  set[best] = target;
  std::sort(set.begin(), set.end());
}

std::vector<double> reference_points(const NodeSet& nodes, const ReferenceSet& ref) {
  std::vector<double> pts(ref.indices.size());
  for (std::size_t k = 0; k < pts.size(); ++k) pts[k] = nodes[static_cast<std::size_t>(ref.indices[k])];
  return pts;
}

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

// Position in the reference set replaced by grid point j (step 5 rules).
int exchange_target(const ReferenceSet& ref, int j, double pj, const std::vector<double>& ref_values) {
  const int N = static_cast<int>(ref.indices.size()) - 1;
  const int pos = static_cast<int>(std::lower_bound(ref.indices.begin(), ref.indices.end(), j) - ref.indices.begin());
  const double s = sign_of(pj);
  if (pos == 0) return s == sign_of(ref_values.front()) ? 0 : N;
  if (pos == N + 1) return s == sign_of(ref_values.back()) ? N : 0;
  const int k = pos - 1;
  return s == sign_of(ref_values[static_cast<std::size_t>(k)]) ? k : k + 1;
}

std::vector<int> apply_exchanges(const ReferenceSet& ref, const std::vector<std::pair<int, int>>& swaps) {
  std::vector<int> next = ref.indices;
  for (auto [pos, j] : swaps) next[static_cast<std::size_t>(pos)] = j;
  std::sort(next.begin(), next.end());
  return next;
}

bool has_anchor(const std::vector<int>& set, int m) {
  return std::binary_search(set.begin(), set.end(), m) && std::binary_search(set.begin(), set.end(), m + 1);
}

void check_arguments(const NodeSet& nodes, int N, int m) {
  if (N < 1 || N > nodes.M()) throw InvalidArgument("remez: need 1 <= N <= M");
  if (m < 0 || m > nodes.M() - 1) throw InvalidArgument("remez: subinterval index out of range");
}

BaryPoly mirror(const BaryPoly& p) {
  std::vector<double> x(p.nodes().rbegin(), p.nodes().rend());
  std::vector<double> v(p.values().rbegin(), p.values().rend());
  for (auto& t : x) t = -t;
  return BaryPoly(std::move(x), std::move(v));
}

ReferenceSet mirror(const NodeSet& nodes, const ReferenceSet& ref, int mirrored_m) {
  std::vector<int> idx;
  idx.reserve(ref.indices.size());
  for (int i : ref.indices) idx.push_back(nodes.M() - i);
  return make_reference(nodes, std::move(idx), mirrored_m);
}

// The second variant has no descent guarantee and can wander into
// ill-conditioned reference sets; the first variant is the fallback.
SubintervalSolution solve_with_fallback(const NodeSet& nodes, int N, int m, const RemezOptions& options) {
  try {
    return solve_subinterval(nodes, N, m, options);
  } catch (const RemezFailure&) {
    if (options.variant != Variant::second) throw;
  }
  RemezOptions first = options;
  first.variant = Variant::first;
  return solve_subinterval(nodes, N, m, first);
}

}  // namespace

ReferenceSet initial_reference(const NodeSet& nodes, int N, int m) {
  check_arguments(nodes, N, m);
  const int M = nodes.M();
  std::vector<int> idx(static_cast<std::size_t>(N) + 1);
  if (N == M) {
    std::iota(idx.begin(), idx.end(), 0);
    return make_reference(nodes, std::move(idx), m);
  }
  const auto z = chebyshev_second_kind_points(N);
  const auto pts = nodes.points();
  for (int n = 0; n <= N; ++n) {
    auto it = std::lower_bound(pts.begin(), pts.end(), z[static_cast<std::size_t>(n)]);
    int j = static_cast<int>(it - pts.begin());
    if (j > M) j = M;
    if (j > 0 && (j == M + 1 || std::abs(pts[static_cast<std::size_t>(j) - 1] - z[static_cast<std::size_t>(n)]) <=
                                    std::abs(pts[static_cast<std::size_t>(j)] - z[static_cast<std::size_t>(n)]))) {
      --j;
    }
    idx[static_cast<std::size_t>(n)] = j;
  }
  // Make the choice strictly increasing and within 0..M.
  for (int n = 1; n <= N; ++n) {
    idx[static_cast<std::size_t>(n)] = std::max(idx[static_cast<std::size_t>(n)], idx[static_cast<std::size_t>(n) - 1] + 1);
  }
  idx[static_cast<std::size_t>(N)] = std::min(idx[static_cast<std::size_t>(N)], M);
  for (int n = N - 1; n >= 0; --n) {
    idx[static_cast<std::size_t>(n)] = std::min(idx[static_cast<std::size_t>(n)], idx[static_cast<std::size_t>(n) + 1] - 1);
  }
  force_member(idx, m, m + 1);
  force_member(idx, m + 1, m);
  return make_reference(nodes, std::move(idx), m);
}

ReferenceSet random_reference(const NodeSet& nodes, int N, int m, std::uint64_t seed) {
  check_arguments(nodes, N, m);
  std::vector<int> rest;
  for (int i = 0; i <= nodes.M(); ++i) {
    if (i != m && i != m + 1) rest.push_back(i);
  }
  std::mt19937_64 rng(seed);
  std::shuffle(rest.begin(), rest.end(), rng);
  std::vector<int> idx(rest.begin(), rest.begin() + (N - 1));
  idx.push_back(m);
  idx.push_back(m + 1);
  return make_reference(nodes, std::move(idx), m);
}

ReferenceSet reanchor(const NodeSet& nodes, const ReferenceSet& ref, int m) {
  check_arguments(nodes, static_cast<int>(ref.indices.size()) - 1, m);
  if (ref.anchor == m) return ref;
  std::vector<int> idx = ref.indices;
  force_member(idx, m, m + 1);
  force_member(idx, m + 1, m);
  return make_reference(nodes, std::move(idx), m);
}

SubintervalSolution solve_subinterval(const NodeSet& nodes, int N, int m, const RemezOptions& options,
                                      std::optional<ReferenceSet> init) {
  check_arguments(nodes, N, m);
  const int M = nodes.M();
  const auto grid = nodes.points();
  ReferenceSet ref;
  if (init) {
    if (static_cast<int>(init->indices.size()) != N + 1) throw InvalidArgument("remez: initial reference has wrong size");
    ref = reanchor(nodes, *init, m);
  } else if (options.random_init) {
    ref = random_reference(nodes, N, m, options.seed);
  } else {
    ref = initial_reference(nodes, N, m);
  }

  const double probe = 0.5 * (grid[static_cast<std::size_t>(m)] + grid[static_cast<std::size_t>(m) + 1]);
  const double limit = 1.0 + options.tol_exchange;
  RemezTrace trace;
  std::set<std::vector<int>> visited{ref.indices};
  std::vector<double> values(static_cast<std::size_t>(M) + 1);
  std::vector<char> in_ref(static_cast<std::size_t>(M) + 1);

  const auto fail = [&](const std::string& kind, const std::string& what, std::vector<NumericalError::Detail> d) {
    trace.converged = false;
    trace.failure_reason = what;
    d.emplace_back("m", static_cast<double>(m));
    d.emplace_back("N", static_cast<double>(N));
    d.emplace_back("iterations", static_cast<double>(trace.iterations));
    throw RemezFailure(kind, what, std::move(d), trace);
  };

  for (;;) {
    const auto Y = reference_points(nodes, ref);
    const auto p = alternating_poly(Y, ref.bary, ref.n_anchor);
    const auto ref_values = std::vector<double>(p.values().begin(), p.values().end());

    std::fill(in_ref.begin(), in_ref.end(), 0);
    for (int i : ref.indices) in_ref[static_cast<std::size_t>(i)] = 1;

    // Evaluate p on the grid; the Lebesgue function of Y at grid points
    // inside [y_0, y_N] is the conditioning monitor.
    double worst_lebesgue = 1.0;
    double violation = 0.0;
    int argmax = -1;
    std::size_t k_ref = 0;
    for (int j = 0; j <= M; ++j) {
      const auto ju = static_cast<std::size_t>(j);
      if (in_ref[ju]) {
        values[ju] = ref_values[k_ref++];
        continue;
      }
      if (grid[ju] < Y.front() || grid[ju] > Y.back()) {
        // Extrapolated values keep full relative accuracy however large
        // they are, so they do not enter the conditioning monitor.
        values[ju] = p(grid[ju]);
      } else {
        double num = 0.0;
        double den = 0.0;
        double abs_sum = 0.0;
        for (std::size_t k = 0; k < Y.size(); ++k) {
          const double t = ref.bary[k] / (grid[ju] - Y[k]);
          num += t * ref_values[k];
          den += t;
          abs_sum += std::abs(t);
        }
        values[ju] = num / den;
        worst_lebesgue = std::max(worst_lebesgue, abs_sum / std::abs(den));
      }
      const double a = std::abs(values[ju]);
      if (a > violation) {
        violation = a;
        argmax = j;
      }
    }
    violation = std::max(violation, 1.0);
    const double lvalue = p(probe);
    trace.lvalues.push_back(lvalue);
    trace.violations.push_back(violation);

    if (!(worst_lebesgue <= options.max_lebesgue) || !std::isfinite(lvalue)) {
      fail("conditioning", "reference set too ill-conditioned for double precision",
           {{"lebesgue", worst_lebesgue}, {"limit", options.max_lebesgue}});
    }
    if (violation <= limit) {
      trace.converged = true;
      return {p, std::move(ref), std::move(trace)};
    }
    if (trace.iterations >= options.max_iters) {
      fail("non_convergence", "exchange iteration did not converge", {{"violation", violation}});
    }
    ++trace.iterations;

    // Single exchange with the global maximiser (first variant, and the
    // fallback for the second).
    const auto single = [&]() {
      const int pos = exchange_target(ref, argmax, values[static_cast<std::size_t>(argmax)], ref_values);
      return std::vector<std::pair<int, int>>{{pos, argmax}};
    };

    std::vector<std::pair<int, int>> swaps;
    if (options.variant == Variant::second) {
      // Largest violation per reference gap: region r in 0..N+1, where r is
      // the number of reference points to the left of the grid point.
      std::map<int, int> per_region;  // region -> grid index
      int region = 0;
      for (int j = 0; j <= M; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        if (in_ref[ju]) {
          ++region;
          continue;
        }
        if (std::abs(values[ju]) <= limit) continue;
        auto [it, inserted] = per_region.try_emplace(region, j);
        if (!inserted && std::abs(values[ju]) > std::abs(values[static_cast<std::size_t>(it->second)])) it->second = j;
      }
      std::map<int, int> per_target;  // reference position -> grid index
      for (auto [r, j] : per_region) {
        const int pos = exchange_target(ref, j, values[static_cast<std::size_t>(j)], ref_values);
        auto [it, inserted] = per_target.try_emplace(pos, j);
        if (!inserted && std::abs(values[static_cast<std::size_t>(j)]) > std::abs(values[static_cast<std::size_t>(it->second)])) {
          it->second = j;
        }
      }
      for (auto [pos, j] : per_target) swaps.emplace_back(pos, j);
    } else {
      swaps = single();
    }

    auto next = apply_exchanges(ref, swaps);
    bool accepted = has_anchor(next, m);
    ReferenceSet candidate;
    if (accepted) {
      candidate = make_reference(nodes, next, m);
      if (options.variant == Variant::second && swaps.size() > 1) {
        // Multi-point exchanges carry no descent guarantee; keep them only
        // when the probe value drops.
        const auto Yn = reference_points(nodes, candidate);
        const double lnext = alternating_poly(Yn, candidate.bary, candidate.n_anchor)(probe);
        accepted = lnext < lvalue;
      }
    }
    if (!accepted) {
      swaps = single();
      next = apply_exchanges(ref, swaps);
      if (!has_anchor(next, m)) {
        fail("exchange", "exchange rule would remove an anchor point",
             {{"grid_index", static_cast<double>(argmax)}, {"violation", violation}});
      }
      candidate = make_reference(nodes, std::move(next), m);
      // A single exchange lowers L_Y at the probe in exact arithmetic; if it
      // does not, rounding has taken over.
      const auto Yn = reference_points(nodes, candidate);
      const double lnext = alternating_poly(Yn, candidate.bary, candidate.n_anchor)(probe);
      if (!(lnext <= lvalue * (1.0 + 1e-13))) {
        fail("stagnation", "exchange did not decrease the Lebesgue function",
             {{"lvalue", lvalue}, {"next", lnext}, {"violation", violation}});
      }
    }
    if (!visited.insert(candidate.indices).second) {
      fail("cycle", "exchange iteration revisited a reference set", {{"violation", violation}});
    }
    std::vector<std::pair<int, int>> record;
    for (auto [pos, j] : swaps) record.emplace_back(ref.indices[static_cast<std::size_t>(pos)], j);
    trace.exchanges.push_back(std::move(record));
    ref = std::move(candidate);
  }
}

double compute_B_point(const NodeSet& nodes, int N, double x, const RemezOptions& options) {
  if (!(x >= -1.0 && x <= 1.0)) throw InvalidArgument("compute_B_point: x outside [-1, 1]");
  if (N < 0 || N > nodes.M()) throw InvalidArgument("compute_B_point: need 0 <= N <= M");
  if (N == 0) return 1.0;
  const auto pts = nodes.points();
  if (std::binary_search(pts.begin(), pts.end(), x)) return 1.0;
  const int m = nodes.bracket(x);
  return solve_with_fallback(nodes, N, m, options).poly(x);
}

MaximalResult compute_B(const NodeSet& nodes, int N, const BOptions& options) {
  const int M = nodes.M();
  if (N < 0 || N > M) throw InvalidArgument("compute_B: need 0 <= N <= M");
  MaximalResult result;
  if (N == 0) {
    result.polynomial = BaryPoly({0.0}, {1.0}, {1.0});
    for (int m = 0; m < M; ++m) {
      IntervalResult r;
      r.m = m;
      r.local_max = 1.0;
      r.argmax = nodes[static_cast<std::size_t>(m)];
      result.per_interval.push_back(std::move(r));
    }
    return result;
  }

  const bool use_symmetry = options.symmetry && nodes.symmetric();
  const int count = use_symmetry ? (M - 1) / 2 + 1 : M;
  std::vector<IntervalResult> solved(static_cast<std::size_t>(count));
  std::vector<BaryPoly> polys(static_cast<std::size_t>(count));
  std::vector<char> done(static_cast<std::size_t>(count), 0);
  std::atomic<bool> stop{false};

  const int threads = std::clamp(options.threads, 1, count);
  const auto worker = [&](int begin, int end) {
    std::optional<ReferenceSet> seed;
    for (int m = begin; m < end && !stop.load(std::memory_order_relaxed); ++m) {
      auto& out = solved[static_cast<std::size_t>(m)];
      out.m = m;
      const double a = nodes[static_cast<std::size_t>(m)];
      const double b = nodes[static_cast<std::size_t>(m) + 1];
      try {
        std::optional<SubintervalSolution> sol;
        if (options.warm_start && seed) {
          try {
            sol = solve_subinterval(nodes, N, m, options.remez, seed);
          } catch (const NumericalError&) {
            sol.reset();
          }
        }
        if (!sol) sol = solve_with_fallback(nodes, N, m, options.remez);
        const auto ext = maximize(sol->poly, a, b);
        if (!std::isfinite(ext.value)) {
          throw NumericalError("conditioning", "maximal polynomial overflowed on its subinterval");
        }
        out.local_max = ext.value;
        out.argmax = ext.x;
        out.reference = sol->reference;
        out.trace = std::move(sol->trace);
        polys[static_cast<std::size_t>(m)] = std::move(sol->poly);
        seed = out.reference;
        if (options.stop_above && ext.value > *options.stop_above) stop.store(true);
      } catch (const RemezFailure& e) {
        out.failure = e.what();
        out.trace = e.trace();
        seed.reset();
      } catch (const NumericalError& e) {
        out.failure = e.what();
        seed.reset();
      }
      done[static_cast<std::size_t>(m)] = 1;
    }
  };

  if (threads == 1) {
    worker(0, count);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (count + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const int begin = t * chunk;
      const int end = std::min(count, begin + chunk);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  result.stopped_early = stop.load();
  result.per_interval.resize(static_cast<std::size_t>(M));
  std::vector<char> have(static_cast<std::size_t>(M), 0);
  for (int m = 0; m < count; ++m) {
    const auto mu = static_cast<std::size_t>(m);
    if (!done[mu]) continue;
    result.per_interval[mu] = solved[mu];
    have[mu] = 1;
    if (use_symmetry) {
      const int mm = M - 1 - m;
      if (mm != m) {
        IntervalResult r = solved[mu];
        r.m = mm;
        r.argmax = -r.argmax;
        if (!r.failure) r.reference = mirror(nodes, r.reference, mm);
        result.per_interval[static_cast<std::size_t>(mm)] = std::move(r);
        have[static_cast<std::size_t>(mm)] = 1;
      }
    }
  }
  // Drop unsolved entries (early stop) while keeping order by m.
  std::vector<IntervalResult> kept;
  for (int m = 0; m < M; ++m) {
    if (have[static_cast<std::size_t>(m)]) kept.push_back(std::move(result.per_interval[static_cast<std::size_t>(m)]));
  }
  result.per_interval = std::move(kept);

  result.B = 0.0;
  int best = -1;
  for (std::size_t i = 0; i < result.per_interval.size(); ++i) {
    const auto& r = result.per_interval[i];
    if (r.failure) {
      result.partial = true;
      continue;
    }
    if (best < 0 || r.local_max > result.B) {
      result.B = r.local_max;
      best = static_cast<int>(i);
    }
  }
  if (best < 0) {
    result.partial = true;
    result.B = std::numeric_limits<double>::quiet_NaN();
    result.log10_B = result.B;
    return result;
  }
  const auto& win = result.per_interval[static_cast<std::size_t>(best)];
  result.argmax_x = win.argmax;
  result.argmax_interval = win.m;
  result.log10_B = std::log10(result.B);
  if (win.m < count) {
    result.polynomial = polys[static_cast<std::size_t>(win.m)];
  } else {
    result.polynomial = mirror(polys[static_cast<std::size_t>(M - 1 - win.m)]);
  }
  return result;
}

int smallest_M_for_bounded_B(const WeightSpec& w, int N, double threshold, const BOptions& options, int max_M) {
  if (N < 1) throw InvalidArgument("smallest_M_for_bounded_B: N must be at least 1");
  BOptions opts = options;
  opts.stop_above = threshold;
  std::map<int, bool> cache;
  const auto bounded = [&](int M) {
    if (auto it = cache.find(M); it != cache.end()) return it->second;
    const auto r = compute_B(NodeSet::from_weight(w, M), N, opts);
    const bool ok = !r.stopped_early && !r.partial && r.B <= threshold;
    cache.emplace(M, ok);
    return ok;
  };

  if (bounded(N)) return N;
  int lo = N;
  int hi = std::max(N + 1, 2 * N);
  while (!bounded(hi)) {
    lo = hi;
    if (hi >= max_M) {
      throw NumericalError("search_cap", "no M up to the search cap gives B(M,N) <= threshold",
                           {{"N", static_cast<double>(N)}, {"max_M", static_cast<double>(max_M)}});
    }
    hi = std::min(2 * hi, max_M);
  }
  const int bracket_lo = lo;
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    (bounded(mid) ? hi : lo) = mid;
  }
  // Monotonicity in M is assumed, not proved: confirm the step above the
  // answer and fall back to a linear scan when it fails.
  if (hi + 1 <= max_M && !bounded(hi + 1)) {
    for (int M = bracket_lo + 1; M <= max_M; ++M) {
      if (bounded(M) && (M + 1 > max_M || bounded(M + 1))) return M;
    }
    throw NumericalError("search_cap", "linear scan found no stable bounded M", {{"N", static_cast<double>(N)}});
  }
  return hi;
}

}  // namespace maxpoly
