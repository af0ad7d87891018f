#pragma once

#include <functional>
#include <span>
#include <vector>

namespace maxpoly {

/// Barycentric weights of a node set, computed in log space and normalised
/// so the largest magnitude is one. Any common scaling cancels in the
/// barycentric formula.
std::vector<double> barycentric_weights(std::span<const double> nodes);

/// Polynomial stored by its values on a sorted interpolation set.
class BaryPoly {
 public:
  BaryPoly() = default;
  BaryPoly(std::vector<double> nodes, std::vector<double> values);
  BaryPoly(std::vector<double> nodes, std::vector<double> values, std::vector<double> weights);

  /// Second barycentric form inside [y_0, y_N], first form outside it.
  double operator()(double x) const;
  double derivative(double x) const;
  /// sum_k |l_k(x)|, the Lebesgue function of the nodes.
  double basis_abs_sum(double x) const;

  std::span<const double> nodes() const noexcept { return nodes_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> weights() const noexcept { return weights_; }
  /// Upper bound on the degree: number of nodes minus one.
  int degree_bound() const noexcept { return static_cast<int>(nodes_.size()) - 1; }
  bool empty() const noexcept { return nodes_.empty(); }

 private:
  // Index of a node within the near-coincidence threshold of x, or -1.
  long coincident(double x) const;
  bool outside(double x) const noexcept;
  double extrapolate(double x, bool absolute) const;

  std::vector<double> nodes_;
  std::vector<double> values_;
  std::vector<double> weights_;
  double snap_ = 0.0;
  double log_scale_ = 0.0;  // log of true weight / stored weight
};

/// Polynomial in the Chebyshev basis, sum_k c_k T_k(x).
class ChebPoly {
 public:
  ChebPoly() = default;
  explicit ChebPoly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

  /// Exact conversion from values at degree_bound()+1 points, via sampling at
  /// Chebyshev points of the second kind.
  static ChebPoly from_bary(const BaryPoly& p);
  BaryPoly to_bary() const;

  double operator()(double x) const;  // Clenshaw
  double derivative(double x) const;
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coeffs() const noexcept { return coeffs_; }

 private:
  std::vector<double> coeffs_;
};

/// y_n = -cos((2n+1) pi / (2N)), n = 0..N-1: zeros of T_N, ascending.
std::vector<double> chebyshev_zeros(int N);
/// z_n = -cos(n pi / N), n = 0..N, ascending and including +-1.
std::vector<double> chebyshev_second_kind_points(int N);
/// Values T_0(x) .. T_N(x).
void chebyshev_basis(double x, std::span<double> out);

/// Sum of |l_{Y,n}(x)| over the Lagrange basis of Y.
double lebesgue_function(std::span<const double> Y, double x);

struct Extremum {
  double x = 0.0;
  double value = 0.0;
};

/// Max of the Lebesgue function over [min Y, max Y].
Extremum lebesgue_constant(std::span<const double> Y);

/// The degree-N polynomial with p(y_k) = (-1)^(n-k) for k <= n and
/// (-1)^(n+1-k) for k > n; equals the Lebesgue function on [y_n, y_{n+1}].
BaryPoly alternating_poly(std::span<const double> Y, int n);
BaryPoly alternating_poly(std::span<const double> Y, std::span<const double> weights, int n);

/// Max of p (or |p| when `absolute`) over [a, b]: a 64-point Chebyshev proxy
/// grid locates candidates; the best three are refined by a bracketed root
/// search on p' to 1e-12 in x.
Extremum maximize(const BaryPoly& p, double a, double b, bool absolute = false);

/// Same strategy for an arbitrary function with a (one-sided) derivative.
Extremum maximize(const std::function<double(double)>& f, const std::function<double(double)>& df,
                  double a, double b, int proxy_points = 64, int candidates = 3);

}  // namespace maxpoly
