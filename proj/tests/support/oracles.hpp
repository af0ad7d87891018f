#pragma once
// Independent reference computations for tests. Nothing here calls into the
// library, so agreement is meaningful.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace oracles {

// Regularised incomplete beta I_z(a, b) by the modified Lentz continued
// fraction, using the symmetry I_z(a,b) = 1 - I_{1-z}(b,a) for convergence.
inline double beta_cf(double a, double b, double z) {
  constexpr double tiny = 1e-300;
  double c = 1.0;
  double d = 1.0 - (a + b) * z / (a + 1.0);
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 10000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * z / ((a + m2 - 1.0) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (a + b + m) * z / ((a + m2) * (a + m2 + 1.0));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h;
}

inline double incomplete_beta(double a, double b, double z) {
  if (z <= 0.0) return 0.0;
  if (z >= 1.0) return 1.0;
  const double lfront = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(z) + b * std::log1p(-z);
  if (z < (a + 1.0) / (a + b + 2.0)) return std::exp(lfront) * beta_cf(a, b, z) / a;
  return 1.0 - std::exp(lfront) * beta_cf(b, a, 1.0 - z) / b;
}

// CDF of the normalised Jacobi weight (1-x)^alpha (1+x)^beta: with
// t = (1+x)/2 it is the Beta(beta+1, alpha+1) distribution.
inline double jacobi_cdf(double alpha, double beta, double x) {
  return incomplete_beta(beta + 1.0, alpha + 1.0, 0.5 * (1.0 + x));
}

// Composite Simpson on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

// C2 density (2/pi) sqrt(1-x^2) integrated over [-1, x] after x = -cos(t),
// which turns the endpoint square roots into smooth sin^2.
inline double c2_cdf_by_substitution(double x) {
  const double T = std::acos(-x);
  const auto f = [](double t) { return 2.0 / std::numbers::pi * std::sin(t) * std::sin(t); };
  return simpson(f, 0.0, T, 20000);
}

// Lagrange basis in product form.
inline double lagrange(const std::vector<double>& Y, std::size_t k, double x) {
  double v = 1.0;
  for (std::size_t i = 0; i < Y.size(); ++i) {
    if (i != k) v *= (x - Y[i]) / (Y[k] - Y[i]);
  }
  return v;
}

inline double lebesgue(const std::vector<double>& Y, double x) {
  double s = 0.0;
  for (std::size_t k = 0; k < Y.size(); ++k) s += std::abs(lagrange(Y, k, x));
  return s;
}

inline double interpolate(const std::vector<double>& Y, const std::vector<double>& v, double x) {
  double s = 0.0;
  for (std::size_t k = 0; k < Y.size(); ++k) s += v[k] * lagrange(Y, k, x);
  return s;
}

// Sign-change bisection for every root of f on a fine scan of [a, b].
inline std::vector<double> bisection_roots(const std::function<double(double)>& f, double a, double b, int scan) {
  std::vector<double> roots;
  double xl = a;
  double fl = f(a);
  for (int i = 1; i <= scan; ++i) {
    const double xr = a + (b - a) * i / scan;
    const double fr = f(xr);
    if (fl == 0.0) roots.push_back(xl);
    else if (fl * fr < 0.0) {
      double lo = xl, hi = xr, flo = fl;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    xl = xr;
    fl = fr;
  }
  return roots;
}

// Dense max of g over [a, b] followed by golden-section polishing.
inline double dense_max(const std::function<double(double)>& g, double a, double b, int samples = 2000) {
  double best = -INFINITY;
  double bx = a;
  for (int i = 0; i <= samples; ++i) {
    const double x = a + (b - a) * i / samples;
    const double v = g(x);
    if (v > best) {
      best = v;
      bx = x;
    }
  }
  double lo = std::max(a, bx - (b - a) / samples);
  double hi = std::min(b, bx + (b - a) / samples);
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double c = hi - r * (hi - lo);
    const double d = lo + r * (hi - lo);
    if (g(c) >= g(d)) hi = d;
    else lo = c;
  }
  return std::max(best, g(0.5 * (lo + hi)));
}

// Least-squares slope and Pearson correlation of y on x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r = 0.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  LineFit f;
  const double vx = n * sxx - sx * sx;
  const double vy = n * syy - sy * sy;
  f.slope = (n * sxy - sx * sy) / vx;
  f.intercept = (sy - f.slope * sx) / n;
  f.r = (n * sxy - sx * sy) / std::sqrt(vx * vy);
  return f;
}

}  // namespace oracles
