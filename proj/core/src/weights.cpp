#include "maxpoly/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maxpoly/error.hpp"
#include "maxpoly/quadrature.hpp"

namespace maxpoly {

namespace {

constexpr int kRuleSize = 48;

const QuadratureRule& legendre_rule() {
  static const QuadratureRule rule = gauss_legendre(kRuleSize);
  return rule;
}

double legendre_panel(const auto& f, double a, double b) {
  const auto& rule = legendre_rule();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

// Adaptive bisection of Gauss-Legendre panels; integrands here are smooth on
// [a, b] but may have nearby endpoint singularities.
double adaptive_legendre(const auto& f, double a, double b, double whole, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = legendre_panel(f, a, mid);
  const double right = legendre_panel(f, mid, b);
  const double refined = left + right;
  if (depth <= 0 || std::abs(refined - whole) <= 1e-15 * std::abs(refined)) return refined;
  return adaptive_legendre(f, a, mid, left, depth - 1) + adaptive_legendre(f, mid, b, right, depth - 1);
}

double integrate_smooth(const auto& f, double a, double b) {
  if (b <= a) return 0.0;
  return adaptive_legendre(f, a, b, legendre_panel(f, a, b), 30);
}

struct Preset {
  const char* name;
  double exponent;
};

constexpr Preset kPresets[] = {
    {"U", 0.0}, {"C1", -0.5}, {"C2", 0.5}, {"UC", -0.25}, {"OC", -0.75},
};

}  // namespace

double PiecewiseDensity::operator()(double x) const {
  auto it = std::upper_bound(breaks.begin(), breaks.end(), x);
  std::size_t piece = it == breaks.begin() ? 0 : static_cast<std::size_t>(it - breaks.begin()) - 1;
  piece = std::min(piece, coeffs.size() - 1);
  double value = 0.0;
  const auto& c = coeffs[piece];
  for (auto k = c.rbegin(); k != c.rend(); ++k) value = value * x + *k;
  return value;
}

void PiecewiseDensity::validate() const {
  if (breaks.size() < 2 || coeffs.size() + 1 != breaks.size()) {
    throw InvalidArgument("density factor: need breaks.size() == coeffs.size() + 1 >= 2");
  }
  if (breaks.front() != -1.0 || breaks.back() != 1.0) {
    throw InvalidArgument("density factor: breaks must span [-1, 1]");
  }
  if (!std::is_sorted(breaks.begin(), breaks.end()) ||
      std::adjacent_find(breaks.begin(), breaks.end()) != breaks.end()) {
    throw InvalidArgument("density factor: breaks must be strictly increasing");
  }
  if (!(lower > 0.0) || !(upper >= lower)) {
    throw InvalidArgument("density factor: need 0 < lower <= upper");
  }
  for (const auto& c : coeffs) {
    if (c.empty()) throw InvalidArgument("density factor: empty polynomial piece");
  }
  // Spot-check the declared bounds.
  for (int i = 0; i <= 400; ++i) {
    const double x = -1.0 + 2.0 * i / 400.0;
    const double v = (*this)(x);
    if (v < lower * (1 - 1e-12) || v > upper * (1 + 1e-12)) {
      throw InvalidArgument("density factor: value outside declared bounds");
    }
  }
}

WeightSpec::WeightSpec(double alpha, double beta, std::optional<PiecewiseDensity> g, std::string name)
    : alpha_(alpha), beta_(beta), gamma_(std::max({alpha, beta, -0.5})), g_(std::move(g)), name_(std::move(name)) {
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw InvalidArgument("weight: exponents alpha and beta must exceed -1");
  }
  left_breaks_ = {-1.0};
  right_breaks_ = {0.0};
  if (g_) {
    g_->validate();
    for (std::size_t k = 1; k + 1 < g_->breaks.size(); ++k) {
      const double b = g_->breaks[k];
      if (b < 0.0) left_breaks_.push_back(b);
      if (b > 0.0) right_breaks_.push_back(b);
    }
  }
  left_breaks_.push_back(0.0);
  right_breaks_.push_back(1.0);
  left_rule_ = std::make_shared<const QuadratureRule>(gauss_jacobi(kRuleSize, 0.0, beta_));
  right_rule_ = std::make_shared<const QuadratureRule>(gauss_jacobi(kRuleSize, alpha_, 0.0));

  const double total = raw_left(0.0) + raw_right(0.0);
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw NumericalError("weight", "weight: normalisation integral is not finite and positive");
  }
  norm_ = 1.0 / total;
}

WeightSpec WeightSpec::jacobi(double alpha, double beta) { return WeightSpec(alpha, beta, std::nullopt, ""); }

WeightSpec WeightSpec::modified_jacobi(double alpha, double beta, PiecewiseDensity g) {
  return WeightSpec(alpha, beta, std::move(g), "");
}

WeightSpec WeightSpec::preset(std::string_view name) {
  for (const auto& p : kPresets) {
    if (name == p.name) return WeightSpec(p.exponent, p.exponent, std::nullopt, p.name);
  }
  throw InvalidArgument("unknown weight preset '" + std::string(name) + "' (expected U, C1, C2, UC or OC)");
}

const std::vector<std::string>& WeightSpec::preset_names() {
  static const std::vector<std::string> names = {"U", "C1", "C2", "UC", "OC"};
  return names;
}

double WeightSpec::g_at(double x) const { return g_ ? (*g_)(x) : 1.0; }

double WeightSpec::density(double x) const {
  if (x < -1.0 || x > 1.0) throw InvalidArgument("density: x outside [-1, 1]");
  return norm_ * g_at(x) * std::pow(1.0 - x, alpha_) * std::pow(1.0 + x, beta_);
}

double WeightSpec::raw_left(double x) const {
  const auto raw = [this](double t) { return g_at(t) * std::pow(1.0 - t, alpha_) * std::pow(1.0 + t, beta_); };
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < left_breaks_.size(); ++k) {
    const double a = left_breaks_[k];
    const double b = std::min(left_breaks_[k + 1], x);
    if (b <= a) break;
    if (k == 0) {
      const double h = b + 1.0;
      const auto& rule = *left_rule_;
      double s = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = -1.0 + 0.5 * h * (1.0 + rule.nodes[i]);
        s += rule.weights[i] * g_at(t) * std::pow(1.0 - t, alpha_);
      }
      sum += std::pow(0.5 * h, beta_ + 1.0) * s;
    } else {
      sum += integrate_smooth(raw, a, b);
    }
  }
  return sum;
}

double WeightSpec::raw_right(double x) const {
  const auto raw = [this](double t) { return g_at(t) * std::pow(1.0 - t, alpha_) * std::pow(1.0 + t, beta_); };
  double sum = 0.0;
  const std::size_t last = right_breaks_.size() - 2;
  for (std::size_t k = right_breaks_.size() - 1; k-- > 0;) {
    const double a = std::max(right_breaks_[k], x);
    const double b = right_breaks_[k + 1];
    if (b <= a) break;
    if (k == last) {
      const double h = 1.0 - a;
      const auto& rule = *right_rule_;
      double s = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = 1.0 - 0.5 * h * (1.0 - rule.nodes[i]);
        s += rule.weights[i] * g_at(t) * std::pow(1.0 + t, beta_);
      }
      sum += std::pow(0.5 * h, alpha_ + 1.0) * s;
    } else {
      sum += integrate_smooth(raw, a, b);
    }
  }
  return sum;
}

double WeightSpec::cdf(double x) const {
  if (!(x >= -1.0 && x <= 1.0)) throw InvalidArgument("cdf: x outside [-1, 1]");
  if (x <= 0.0) return norm_ * raw_left(x);
  return 1.0 - norm_ * raw_right(x);
}

double WeightSpec::tail(double x) const {
  if (!(x >= -1.0 && x <= 1.0)) throw InvalidArgument("tail: x outside [-1, 1]");
  if (x >= 0.0) return norm_ * raw_right(x);
  return 1.0 - norm_ * raw_left(x);
}

}  // namespace maxpoly
