#include "maxpoly/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace maxpoly::io {

namespace {

using nlohmann::ordered_json;

constexpr double kLog10e = std::numbers::log10e;

ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

ordered_json weight_block(const NodeSet& nodes) {
  ordered_json j;
  if (const auto& w = nodes.weight()) {
    j["kind"] = "weight";
    j["name"] = w->name();
    j["alpha"] = w->alpha();
    j["beta"] = w->beta();
    j["gamma"] = w->gamma();
    j["modified"] = w->density_factor().has_value();
  } else {
    j["kind"] = "explicit";
  }
  j["M"] = nodes.M();
  return j;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string nodes_csv(const NodeSet& nodes) {
  std::ostringstream os;
  os << "m,x,theta\n";
  for (std::size_t m = 0; m < nodes.size(); ++m) {
    os << m << ',' << format_double(nodes[m]) << ',' << format_double(nodes.angles()[m]) << '\n';
  }
  return os.str();
}

std::string nodes_json(const NodeSet& nodes) {
  ordered_json j;
  j["provenance"] = weight_block(nodes);
  j["points"] = std::vector<double>(nodes.points().begin(), nodes.points().end());
  j["angles"] = std::vector<double>(nodes.angles().begin(), nodes.angles().end());
  return dump(j);
}

std::string bounds_json(const BoundReport& r) {
  ordered_json j;
  j["M"] = r.M;
  j["N"] = r.N;
  j["K_minus"] = r.K_minus;
  j["K_plus"] = r.K_plus;
  j["log10_Q_minus"] = r.log_Q_minus * kLog10e;
  j["log10_Q_plus"] = r.log_Q_plus * kLog10e;
  j["log10_lower"] = r.log_lower * kLog10e;
  j["zeta"] = r.zeta;
  j["N_zeta"] = r.N * r.zeta;
  j["log10_upper"] = r.log_upper ? ordered_json(*r.log_upper * kLog10e) : ordered_json(nullptr);
  j["nu"] = r.nu ? ordered_json(*r.nu) : ordered_json(nullptr);
  return dump(j);
}

std::string witness_json(const Witness& w) {
  ordered_json j;
  j["side"] = w.side == Side::minus ? "minus" : "plus";
  j["K"] = w.K;
  j["probe"] = w.probe;
  j["value_at_probe"] = number(w.value_at_probe);
  j["sup_norm"] = number(w.sup_norm);
  j["max_on_grid"] = number(w.max_on_grid);
  j["log10_Q"] = w.log_Q * kLog10e;
  const auto x = w.poly.nodes();
  const auto v = w.poly.values();
  j["nodes"] = std::vector<double>(x.begin(), x.end());
  j["values"] = std::vector<double>(v.begin(), v.end());
  return dump(j);
}

std::string maximal_json(const MaximalResult& r) {
  ordered_json j;
  j["B"] = number(r.B);
  j["log10_B"] = number(r.log10_B);
  j["argmax"] = r.argmax_x;
  j["argmax_interval"] = r.argmax_interval;
  j["partial"] = r.partial;
  j["stopped_early"] = r.stopped_early;
  ordered_json rows = ordered_json::array();
  for (const auto& iv : r.per_interval) {
    ordered_json row;
    row["m"] = iv.m;
    row["local_max"] = number(iv.local_max);
    row["argmax"] = iv.argmax;
    row["iterations"] = iv.trace.iterations;
    row["reference"] = iv.reference.indices;
    if (iv.failure) row["failure"] = *iv.failure;
    rows.push_back(std::move(row));
  }
  j["per_interval"] = std::move(rows);
  return dump(j);
}

std::string maximal_csv(const MaximalResult& r) {
  std::ostringstream os;
  os << "m,local_max,iterations\n";
  for (const auto& iv : r.per_interval) {
    os << iv.m << ',' << format_double(iv.local_max) << ',' << iv.trace.iterations << '\n';
  }
  return os.str();
}

std::string trace_csv(const RemezTrace& t) {
  std::ostringstream os;
  os << "iteration,lvalue,violation,exchanges\n";
  for (std::size_t i = 0; i < t.lvalues.size(); ++i) {
    os << i << ',' << format_double(t.lvalues[i]) << ',';
    if (i < t.violations.size()) os << format_double(t.violations[i]);
    os << ',' << (i < t.exchanges.size() ? t.exchanges[i].size() : 0) << '\n';
  }
  return os.str();
}

std::string fit_json(const LsqFit& fit, const ConditionEstimate* kappa) {
  ordered_json j;
  j["M"] = fit.M;
  j["degree"] = fit.degree;
  const auto c = fit.poly.coeffs();
  j["chebyshev_coefficients"] = std::vector<double>(c.begin(), c.end());
  j["residual_discrete"] = fit.residual_discrete;
  if (kappa) {
    j["kappa_inf"] = kappa->kappa_inf;
    j["kappa_argmax"] = kappa->argmax;
    j["grid_resolution"] = kappa->grid_resolution;
    if (kappa->bracket) j["bracket"] = {kappa->bracket->first, kappa->bracket->second};
  }
  return dump(j);
}

std::string mockcheb_csv(const MockChebSubset& s) {
  std::ostringstream os;
  os << "n,x,z_prev,z_next\n";
  for (int n = 1; n <= s.N; ++n) {
    const auto k = static_cast<std::size_t>(n);
    os << n << ',' << format_double(s.points[k - 1]) << ',' << format_double(s.z[k - 1]) << ','
       << format_double(s.z[k]) << '\n';
  }
  return os.str();
}

std::string error_json(const NumericalError& e) {
  ordered_json j;
  j["error"] = e.kind();
  j["message"] = e.what();
  ordered_json d = ordered_json::object();
  for (const auto& [k, v] : e.details()) d[k] = number(v);
  j["details"] = std::move(d);
  return j.dump();
}

std::string error_json(std::string_view kind, std::string_view message) {
  ordered_json j;
  j["error"] = std::string(kind);
  j["message"] = std::string(message);
  return j.dump();
}

void write_output(const std::string& path, std::string_view content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open output file: " + path);
  f << content;
}

}  // namespace maxpoly::io
