#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maxpoly/quadrature.hpp"

namespace maxpoly {

/// Positive piecewise polynomial g(x) on [-1, 1] with declared bounds
/// lower <= g <= upper. Piece k covers [breaks[k], breaks[k+1]] and has
/// monomial coefficients coeffs[k] (constant term first).
struct PiecewiseDensity {
  std::vector<double> breaks;
  std::vector<std::vector<double>> coeffs;
  double lower = 1.0;
  double upper = 1.0;

  double operator()(double x) const;
  void validate() const;
};

/// Modified Jacobi weight mu(x) = c * g(x) (1-x)^alpha (1+x)^beta, normalised
/// so that its integral over [-1, 1] is one.
class WeightSpec {
 public:
  /// g == 1.
  static WeightSpec jacobi(double alpha, double beta);
  static WeightSpec modified_jacobi(double alpha, double beta, PiecewiseDensity g);
  /// One of U, C1, C2, UC, OC (ultraspherical, alpha = beta).
  static WeightSpec preset(std::string_view name);
  static const std::vector<std::string>& preset_names();

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  /// max{alpha, beta, -1/2}
  double gamma() const noexcept { return gamma_; }
  double norm_constant() const noexcept { return norm_; }
  const std::string& name() const noexcept { return name_; }
  const std::optional<PiecewiseDensity>& density_factor() const noexcept { return g_; }
  bool symmetric() const noexcept { return alpha_ == beta_ && !g_; }

  /// Normalised density mu(x); infinite at an endpoint with a negative exponent.
  double density(double x) const;
  /// Integral of mu over [-1, x].
  double cdf(double x) const;
  /// Integral of mu over [x, 1].
  double tail(double x) const;

 private:
  WeightSpec(double alpha, double beta, std::optional<PiecewiseDensity> g, std::string name);

  double g_at(double x) const;
  // Unnormalised integrals over [-1, x] for x <= 0 and [x, 1] for x >= 0.
  double raw_left(double x) const;
  double raw_right(double x) const;

  double alpha_;
  double beta_;
  double gamma_;
  double norm_ = 1.0;
  std::optional<PiecewiseDensity> g_;
  std::string name_;
  // Integration pieces of [-1, 0] and [0, 1], split at 0 and at g's breaks.
  std::vector<double> left_breaks_;
  std::vector<double> right_breaks_;
  // Gauss-Jacobi rules absorbing (1+t)^beta at -1 and (1-t)^alpha at +1.
  std::shared_ptr<const QuadratureRule> left_rule_;
  std::shared_ptr<const QuadratureRule> right_rule_;
};

}  // namespace maxpoly
