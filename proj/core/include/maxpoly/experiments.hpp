#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "maxpoly/remez.hpp"
#include "maxpoly/weights.hpp"

namespace maxpoly::experiments {

/// Rows of already-formatted cells; `to_csv` is byte-stable across runs.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_csv() const;
};

/// log10 B above this is recorded as saturated.
inline constexpr double kSaturation = 13.0;

struct SweepOptions {
  BOptions b_options;
  int threads = 1;  // cells evaluated concurrently; row order is unaffected
};

/// Columns: preset,ratio,M,N,log10_B,log10_Q,log10_witness,status.
/// N = round(ratio * M).
Table growth_sweep(const std::vector<std::string>& presets, const std::vector<double>& ratios,
                   const std::vector<int>& M_list, const SweepOptions& options = {});

struct ScalingFit {
  std::string preset;
  std::vector<int> N;
  std::vector<int> M_star;
  double slope = 0.0;      // least-squares slope of log M* against log N
  double intercept = 0.0;
  double linear_c = 0.0;   // least-squares c in M* = c N
};

ScalingFit scaling_fit(const std::string& preset, const std::vector<int>& N_list, double threshold = 10.0,
                       const BOptions& options = {});
/// Columns: preset,N,M_star.
Table scaling_table(const std::vector<ScalingFit>& fits);

/// Columns: preset,M,N,log10_B,status with status ok|saturated|partial.
/// Cells with N > M are omitted; N = 0 gives log10 B = 0.
Table contour_grid(const std::string& preset, const std::vector<int>& M_list, const std::vector<int>& N_list,
                   const SweepOptions& options = {});

struct ConvergenceResult {
  RemezTrace first;
  RemezTrace second;
  /// max_j |p_first(x_j) - p_second(x_j)| over all nodes.
  double max_difference = 0.0;
};

ConvergenceResult remez_convergence(const std::string& preset = "OC", int M = 500, int N = 300, int m = 200,
                                    const RemezOptions& base = {});
/// Columns: variant,iteration,lvalue,violation.
Table convergence_table(const ConvergenceResult& r);

/// Degree rule N = min(M, ceil(c M^exponent)); exponent defaults to
/// 1/(2(gamma+1)). `full` selects N = M.
struct DegreeRule {
  double c = 1.0;
  std::optional<double> exponent;
  bool full = false;

  int degree(const WeightSpec& w, int M) const;
};

/// Columns: M,N,sup_error,kappa,sup_error_runge,kappa_over_sqrtM,preset;
/// sup_error is for e^x, sup_error_runge for 1/(1+25x^2).
Table lsq_stability_sweep(const std::string& preset, const std::vector<int>& M_list, const DegreeRule& rule,
                          const SweepOptions& options = {});

/// Columns: preset,m,x,cdf for each preset.
Table points_table(const std::vector<std::string>& presets, int M);

struct PortraitCase {
  std::string preset;
  int M = 0;
  int N = 0;
};

/// Maximal polynomial samples. Columns: case,kind,x,value with kind
/// curve|node|argmax.
Table portrait_table(const std::vector<PortraitCase>& cases, int samples = 2001, const BOptions& options = {});

/// Witness polynomial samples (minus side). Columns: case,kind,x,value
/// with kind curve|node|probe|Q.
Table witness_table(const std::vector<PortraitCase>& cases, int samples = 2001);

/// Lebesgue function of n equispaced points and its alternating polynomial
/// on [y_k, y_{k+1}]. Columns: x,lebesgue,alternating.
Table lebesgue_table(int n = 7, int k = 1, int samples = 1001);

/// Flat key/value configuration grouped in [sections].
class Config {
 public:
  static Config parse(const std::string& text);
  static Config load(const std::string& path);

  std::vector<std::string> sections() const;
  bool has(const std::string& section) const;
  std::optional<std::string> get(const std::string& section, const std::string& key) const;
  std::string get_or(const std::string& section, const std::string& key, const std::string& fallback) const;
  const std::map<std::string, std::string>& section(const std::string& name) const;

  /// FNV-1a of the source text, 16 hex digits.
  const std::string& hash() const noexcept { return hash_; }

 private:
  std::vector<std::string> order_;
  std::map<std::string, std::map<std::string, std::string>> data_;
  std::string hash_;
};

/// "8 12 16", "8:40:4" (inclusive range) or a mix.
std::vector<int> parse_int_list(const std::string& text);
/// Whitespace separated reals or fractions ("1/2 2/3 1").
std::vector<double> parse_real_list(const std::string& text);
std::vector<std::string> parse_word_list(const std::string& text);

struct RunOutput {
  std::string csv;
  std::string meta_json;
};

/// Runs the experiment `name` (a section of `config` with a `kind` key).
RunOutput run_experiment(const Config& config, const std::string& name, int threads = 1);

}  // namespace maxpoly::experiments
