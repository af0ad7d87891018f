#include "maxpoly/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "maxpoly/bounds.hpp"
#include "maxpoly/error.hpp"
#include "maxpoly/io.hpp"
#include "maxpoly/leastsq.hpp"
#include "maxpoly/nodes.hpp"

namespace maxpoly::experiments {

namespace {

using io::format_double;

// Runs body(0..n-1) on up to `threads` workers; results must go to
// preallocated slots so the output order never depends on scheduling.
void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  threads = std::clamp(threads, 1, std::max(n, 1));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i = next++; i < n; i = next++) body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(t)] = std::current_exception();
      }
    });
  }
  pool.clear();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

std::string log10_cell(double log10_value) { return format_double(log10_value); }

}  // namespace

std::string Table::to_csv() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
  return os.str();
}

Table growth_sweep(const std::vector<std::string>& presets, const std::vector<double>& ratios,
                   const std::vector<int>& M_list, const SweepOptions& options) {
  struct Cell {
    std::string preset;
    double ratio;
    int M;
  };
  std::vector<Cell> cells;
  for (const auto& p : presets) {
    for (double r : ratios) {
      for (int M : M_list) cells.push_back({p, r, M});
    }
  }
  Table t;
  t.header = {"preset", "ratio", "M", "N", "log10_B", "log10_Q", "log10_witness", "status"};
  t.rows.resize(cells.size());
  parallel_for(static_cast<int>(cells.size()), options.threads, [&](int i) {
    const auto& c = cells[static_cast<std::size_t>(i)];
    const auto nodes = NodeSet::from_weight(WeightSpec::preset(c.preset), c.M);
    const int N = std::clamp(static_cast<int>(std::lround(c.ratio * c.M)), 1, c.M);
    auto& row = t.rows[static_cast<std::size_t>(i)];
    row = {c.preset, format_double(c.ratio), std::to_string(c.M), std::to_string(N), "", "", "", "ok"};
    const auto report = q_lower_bound(nodes, N);
    row[5] = log10_cell(report.log_lower * std::numbers::log10e);
    double wit = -1.0;
    for (Side s : {Side::minus, Side::plus}) {
      if (find_K(nodes, N, s) >= 2) wit = std::max(wit, witness_polynomial(nodes, N, s).sup_norm);
    }
    if (wit > 0.0) row[6] = log10_cell(std::log10(wit));
    try {
      const auto r = compute_B(nodes, N, options.b_options);
      row[4] = log10_cell(r.log10_B);
      if (r.log10_B > kSaturation) row[7] = "saturated";
      else if (r.partial) row[7] = "partial";
    } catch (const NumericalError& e) {
      row[7] = "error:" + e.kind();
    }
  });
  return t;
}

ScalingFit scaling_fit(const std::string& preset, const std::vector<int>& N_list, double threshold,
                       const BOptions& options) {
  ScalingFit f;
  f.preset = preset;
  const auto w = WeightSpec::preset(preset);
  double sx = 0, sy = 0, sxx = 0, sxy = 0, nm = 0, nn = 0;
  for (int N : N_list) {
    const int M = smallest_M_for_bounded_B(w, N, threshold, options);
    f.N.push_back(N);
    f.M_star.push_back(M);
    const double x = std::log(static_cast<double>(N));
    const double y = std::log(static_cast<double>(M));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    nm += static_cast<double>(N) * M;
    nn += static_cast<double>(N) * N;
  }
  const double k = static_cast<double>(N_list.size());
  if (N_list.size() >= 2) {
    f.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / k;
  }
  if (nn > 0) f.linear_c = nm / nn;
  return f;
}

Table scaling_table(const std::vector<ScalingFit>& fits) {
  Table t;
  t.header = {"preset", "N", "M_star"};
  for (const auto& f : fits) {
    for (std::size_t i = 0; i < f.N.size(); ++i) {
      t.rows.push_back({f.preset, std::to_string(f.N[i]), std::to_string(f.M_star[i])});
    }
  }
  return t;
}

Table contour_grid(const std::string& preset, const std::vector<int>& M_list, const std::vector<int>& N_list,
                   const SweepOptions& options) {
  const auto w = WeightSpec::preset(preset);
  std::vector<std::pair<int, int>> cells;
  for (int M : M_list) {
    for (int N : N_list) {
      if (N <= M) cells.emplace_back(M, N);
    }
  }
  std::sort(cells.begin(), cells.end());
  Table t;
  t.header = {"preset", "M", "N", "log10_B", "status"};
  t.rows.resize(cells.size());
  BOptions b = options.b_options;
  b.stop_above = std::pow(10.0, kSaturation);
  parallel_for(static_cast<int>(cells.size()), options.threads, [&](int i) {
    const auto [M, N] = cells[static_cast<std::size_t>(i)];
    auto& row = t.rows[static_cast<std::size_t>(i)];
    row = {preset, std::to_string(M), std::to_string(N), "0", "ok"};
    if (N == 0) return;
    try {
      const auto r = compute_B(NodeSet::from_weight(w, M), N, b);
      if (r.stopped_early || r.log10_B > kSaturation) {
        row[3] = format_double(kSaturation);
        row[4] = "saturated";
      } else {
        row[3] = format_double(r.log10_B);
        if (r.partial) row[4] = "partial";
      }
    } catch (const NumericalError&) {
      row[3] = format_double(kSaturation);
      row[4] = "saturated";
    }
  });
  return t;
}

ConvergenceResult remez_convergence(const std::string& preset, int M, int N, int m, const RemezOptions& base) {
  const auto nodes = NodeSet::from_weight(WeightSpec::preset(preset), M);
  RemezOptions o = base;
  o.variant = Variant::first;
  const auto a = solve_subinterval(nodes, N, m, o);
  o.variant = Variant::second;
  const auto b = solve_subinterval(nodes, N, m, o);
  ConvergenceResult r{a.trace, b.trace, 0.0};
  for (double x : nodes.points()) r.max_difference = std::max(r.max_difference, std::abs(a.poly(x) - b.poly(x)));
  return r;
}

Table convergence_table(const ConvergenceResult& r) {
  Table t;
  t.header = {"variant", "iteration", "lvalue", "violation"};
  const auto emit = [&](const char* name, const RemezTrace& tr) {
    for (std::size_t i = 0; i < tr.lvalues.size(); ++i) {
      t.rows.push_back({name, std::to_string(i), format_double(tr.lvalues[i]),
                        i < tr.violations.size() ? format_double(tr.violations[i]) : ""});
    }
  };
  emit("first", r.first);
  emit("second", r.second);
  return t;
}

int DegreeRule::degree(const WeightSpec& w, int M) const {
  if (full) return M;
  const double e = exponent.value_or(1.0 / (2.0 * (w.gamma() + 1.0)));
  const int N = static_cast<int>(std::ceil(c * std::pow(static_cast<double>(M), e) - 1e-12));
  return std::clamp(N, 1, M);
}

Table lsq_stability_sweep(const std::string& preset, const std::vector<int>& M_list, const DegreeRule& rule,
                          const SweepOptions& options) {
  const auto w = WeightSpec::preset(preset);
  Table t;
  t.header = {"M", "N", "sup_error", "kappa", "sup_error_runge", "kappa_over_sqrtM", "preset"};
  t.rows.resize(M_list.size());
  const auto f_exp = [](double x) { return std::exp(x); };
  const auto f_runge = [](double x) { return 1.0 / (1.0 + 25.0 * x * x); };
  parallel_for(static_cast<int>(M_list.size()), options.threads, [&](int i) {
    const int M = M_list[static_cast<std::size_t>(i)];
    const auto nodes = NodeSet::from_weight(w, M);
    const int N = rule.degree(w, M);
    const auto kappa = condition_number_inf(nodes, N);
    const double e1 = sup_error(fit(nodes, N, f_exp), nodes, f_exp);
    const double e2 = sup_error(fit(nodes, N, f_runge), nodes, f_runge);
    t.rows[static_cast<std::size_t>(i)] = {std::to_string(M),
                                           std::to_string(N),
                                           format_double(e1),
                                           format_double(kappa.kappa_inf),
                                           format_double(e2),
                                           format_double(kappa.kappa_inf / std::sqrt(static_cast<double>(M))),
                                           preset};
  });
  return t;
}

Table points_table(const std::vector<std::string>& presets, int M) {
  Table t;
  t.header = {"preset", "m", "x", "cdf"};
  for (const auto& p : presets) {
    const auto w = WeightSpec::preset(p);
    const auto nodes = NodeSet::from_weight(w, M);
    for (std::size_t m = 0; m < nodes.size(); ++m) {
      t.rows.push_back({p, std::to_string(m), format_double(nodes[m]), format_double(w.cdf(nodes[m]))});
    }
  }
  return t;
}

namespace {

std::string case_name(const PortraitCase& c) {
  return c.preset + "_M" + std::to_string(c.M) + "_N" + std::to_string(c.N);
}

void sample_curve(Table& t, const std::string& name, const std::function<double(double)>& p, int samples) {
  for (int j = 0; j < samples; ++j) {
    const double x = -1.0 + 2.0 * j / (samples - 1);
    t.rows.push_back({name, "curve", format_double(x), format_double(p(x))});
  }
}

}  // namespace

Table portrait_table(const std::vector<PortraitCase>& cases, int samples, const BOptions& options) {
  Table t;
  t.header = {"case", "kind", "x", "value"};
  for (const auto& c : cases) {
    const auto nodes = NodeSet::from_weight(WeightSpec::preset(c.preset), c.M);
    const auto r = compute_B(nodes, c.N, options);
    const auto name = case_name(c);
    const auto& p = r.polynomial;
    sample_curve(t, name, [&](double x) { return p(x); }, samples);
    for (double x : nodes.points()) t.rows.push_back({name, "node", format_double(x), format_double(p(x))});
    t.rows.push_back({name, "argmax", format_double(r.argmax_x), format_double(r.B)});
  }
  return t;
}

Table witness_table(const std::vector<PortraitCase>& cases, int samples) {
  Table t;
  t.header = {"case", "kind", "x", "value"};
  for (const auto& c : cases) {
    const auto nodes = NodeSet::from_weight(WeightSpec::preset(c.preset), c.M);
    const auto w = witness_polynomial(nodes, c.N, Side::minus);
    const auto name = case_name(c);
    sample_curve(t, name, [&](double x) { return w.poly(x); }, samples);
    for (double x : nodes.points()) t.rows.push_back({name, "node", format_double(x), format_double(w.poly(x))});
    t.rows.push_back({name, "probe", format_double(w.probe), format_double(w.value_at_probe)});
    t.rows.push_back({name, "Q", format_double(w.probe), format_double(std::exp(w.log_Q))});
  }
  return t;
}

Table lebesgue_table(int n, int k, int samples) {
  if (n < 2 || k < 0 || k > n - 2) throw InvalidArgument("lebesgue_table: need 0 <= k <= n-2");
  std::vector<double> Y(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) Y[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / (n - 1);
  const auto p = alternating_poly(Y, k);
  Table t;
  t.header = {"x", "lebesgue", "alternating"};
  for (int j = 0; j < samples; ++j) {
    const double x = -1.0 + 2.0 * j / (samples - 1);
    t.rows.push_back({format_double(x), format_double(lebesgue_function(Y, x)), format_double(p(x))});
  }
  return t;
}

Config Config::parse(const std::string& text) {
  Config c;
  c.hash_ = fnv1a(text);
  std::string section;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw InvalidArgument("config line " + std::to_string(lineno) + ": bad section");
      section = trim(line.substr(1, line.size() - 2));
      if (!c.data_.count(section)) c.order_.push_back(section);
      c.data_[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidArgument("config line " + std::to_string(lineno) + ": expected key = value");
    auto value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (!c.data_.count(section)) c.order_.push_back(section);
    c.data_[section][trim(line.substr(0, eq))] = value;
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot read config: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

std::vector<std::string> Config::sections() const { return order_; }

bool Config::has(const std::string& s) const { return data_.count(s) > 0; }

std::optional<std::string> Config::get(const std::string& s, const std::string& key) const {
  const auto it = data_.find(s);
  if (it == data_.end()) return std::nullopt;
  const auto kv = it->second.find(key);
  if (kv == it->second.end()) return std::nullopt;
  return kv->second;
}

std::string Config::get_or(const std::string& s, const std::string& key, const std::string& fallback) const {
  return get(s, key).value_or(fallback);
}

const std::map<std::string, std::string>& Config::section(const std::string& name) const {
  const auto it = data_.find(name);
  if (it == data_.end()) throw InvalidArgument("unknown experiment: " + name);
  return it->second;
}

std::vector<std::string> parse_word_list(const std::string& text) {
  std::vector<std::string> out;
  std::string tok;
  for (char ch : text) {
    if (ch == ',' || ch == ' ' || ch == '\t') {
      if (!tok.empty()) out.push_back(std::move(tok));
      tok.clear();
    } else {
      tok += ch;
    }
  }
  if (!tok.empty()) out.push_back(std::move(tok));
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& tok : parse_word_list(text)) {
    try {
      const auto c1 = tok.find(':');
      if (c1 == std::string::npos) {
        out.push_back(std::stoi(tok));
        continue;
      }
      const auto c2 = tok.find(':', c1 + 1);
      const int lo = std::stoi(tok.substr(0, c1));
      const int hi = std::stoi(tok.substr(c1 + 1, c2 == std::string::npos ? std::string::npos : c2 - c1 - 1));
      const int step = c2 == std::string::npos ? 1 : std::stoi(tok.substr(c2 + 1));
      if (step <= 0) throw InvalidArgument("range step must be positive: " + tok);
      for (int v = lo; v <= hi; v += step) out.push_back(v);
    } catch (const std::logic_error&) {
      throw InvalidArgument("bad integer list entry: " + tok);
    }
  }
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& tok : parse_word_list(text)) {
    try {
      const auto slash = tok.find('/');
      if (slash == std::string::npos) out.push_back(std::stod(tok));
      else out.push_back(std::stod(tok.substr(0, slash)) / std::stod(tok.substr(slash + 1)));
    } catch (const std::logic_error&) {
      throw InvalidArgument("bad real list entry: " + tok);
    }
  }
  return out;
}

namespace {

std::vector<PortraitCase> parse_cases(const std::string& text) {
  // "OC:40:30 U:20:20"
  std::vector<PortraitCase> out;
  for (const auto& tok : parse_word_list(text)) {
    const auto a = tok.find(':');
    const auto b = tok.find(':', a == std::string::npos ? a : a + 1);
    if (a == std::string::npos || b == std::string::npos) throw InvalidArgument("bad case (want PRESET:M:N): " + tok);
    try {
      out.push_back({tok.substr(0, a), std::stoi(tok.substr(a + 1, b - a - 1)), std::stoi(tok.substr(b + 1))});
    } catch (const std::logic_error&) {
      throw InvalidArgument("bad case (want PRESET:M:N): " + tok);
    }
  }
  return out;
}

Variant parse_variant(const std::string& s) {
  if (s == "first") return Variant::first;
  if (s == "second") return Variant::second;
  throw InvalidArgument("variant must be first or second: " + s);
}

}  // namespace

RunOutput run_experiment(const Config& config, const std::string& name, int threads) {
  const auto& sec = config.section(name);
  const auto req = [&](const std::string& key) {
    const auto v = config.get(name, key);
    if (!v) throw InvalidArgument("experiment " + name + ": missing key " + key);
    return *v;
  };
  const auto kind = req("kind");
  SweepOptions sweep;
  sweep.threads = threads;
  sweep.b_options.remez.variant = parse_variant(config.get_or(name, "variant", "second"));

  nlohmann::ordered_json meta;
  meta["experiment"] = name;
  meta["kind"] = kind;
  meta["config_hash"] = config.hash();
  meta["parameters"] = nlohmann::ordered_json(sec);

  Table table;
  if (kind == "growth") {
    table = growth_sweep(parse_word_list(req("presets")), parse_real_list(req("ratios")), parse_int_list(req("M")), sweep);
  } else if (kind == "scaling") {
    const double thr = std::stod(config.get_or(name, "threshold", "10"));
    std::vector<ScalingFit> fits;
    auto fits_json = nlohmann::ordered_json::array();
    for (const auto& p : parse_word_list(req("presets"))) {
      fits.push_back(scaling_fit(p, parse_int_list(req("N")), thr, sweep.b_options));
      fits_json.push_back({{"preset", p},
                           {"slope", fits.back().slope},
                           {"intercept", fits.back().intercept},
                           {"linear_c", fits.back().linear_c}});
    }
    meta["fits"] = std::move(fits_json);
    table = scaling_table(fits);
  } else if (kind == "contour") {
    const auto presets = parse_word_list(req("presets"));
    const auto Ms = parse_int_list(req("M"));
    const auto Ns = parse_int_list(req("N"));
    table.header = {"preset", "M", "N", "log10_B", "status"};
    for (const auto& p : presets) {
      auto part = contour_grid(p, Ms, Ns, sweep);
      table.rows.insert(table.rows.end(), part.rows.begin(), part.rows.end());
    }
  } else if (kind == "remez_convergence") {
    const auto r = remez_convergence(config.get_or(name, "preset", "OC"), std::stoi(config.get_or(name, "M", "500")),
                                     std::stoi(config.get_or(name, "N", "300")),
                                     std::stoi(config.get_or(name, "m", "200")));
    meta["iterations_first"] = r.first.iterations;
    meta["iterations_second"] = r.second.iterations;
    meta["max_difference"] = r.max_difference;
    table = convergence_table(r);
  } else if (kind == "lsq_stability") {
    DegreeRule rule;
    const auto degree = config.get_or(name, "degree", "power");
    if (degree == "full") rule.full = true;
    else if (degree != "power") throw InvalidArgument("degree must be power or full");
    rule.c = std::stod(config.get_or(name, "c", "1"));
    if (const auto e = config.get(name, "exponent")) rule.exponent = parse_real_list(*e).at(0);
    table = lsq_stability_sweep(req("preset"), parse_int_list(req("M")), rule, sweep);
  } else if (kind == "points") {
    table = points_table(parse_word_list(req("presets")), std::stoi(req("M")));
  } else if (kind == "portrait") {
    table = portrait_table(parse_cases(req("cases")), std::stoi(config.get_or(name, "samples", "2001")),
                           sweep.b_options);
  } else if (kind == "witness") {
    table = witness_table(parse_cases(req("cases")), std::stoi(config.get_or(name, "samples", "2001")));
  } else if (kind == "lebesgue") {
    table = lebesgue_table(std::stoi(config.get_or(name, "n", "7")), std::stoi(config.get_or(name, "k", "1")),
                           std::stoi(config.get_or(name, "samples", "1001")));
  } else {
    throw InvalidArgument("unknown experiment kind: " + kind);
  }
  meta["rows"] = table.rows.size();
  return {table.to_csv(), meta.dump(2) + "\n"};
}

}  // namespace maxpoly::experiments
