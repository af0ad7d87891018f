#pragma once

#include <optional>

#include "maxpoly/nodes.hpp"
#include "maxpoly/polycore.hpp"
#include "maxpoly/remez.hpp"

namespace maxpoly {

enum class Side { minus, plus };

/// Lower/upper brackets for B(M,N). Q and the brackets are kept as natural
/// logarithms; Q overflows double range for large K and N.
struct BoundReport {
  int M = 0;
  int N = 0;
  int K_minus = 1;
  int K_plus = 1;
  double log_Q_minus = 0.0;
  double log_Q_plus = 0.0;
  double zeta = 0.0;
  std::optional<double> log_upper;  // log(1/(1 - N zeta)) when N zeta < 1
  double log_lower = 0.0;           // max(log Q_-, log Q_+)
  std::optional<double> nu;         // (N^{2(gamma+1)}/M)^{1/(2 gamma+1)} for weight-generated nodes, gamma > -1/2
};

/// Largest K in [2, N] with 0 >= x_n > y_n for n = 1..K-1 (minus side) or
/// 0 <= x_{M-n} < y_{N-1-n} (plus side, the mirror image), against the zeros y of T_N; 1 if none.
int find_K(const NodeSet& nodes, int N, Side side);

/// log of Q_-(K,N) or Q_+(K,N); 0 for K = 1.
double log_Q(const NodeSet& nodes, int N, int K, Side side);

BoundReport q_lower_bound(const NodeSet& nodes, int N);
/// Full report: K, Q, zeta, the zeta upper bound and nu.
BoundReport bound_report(const NodeSet& nodes, int N);

struct Witness {
  Side side = Side::minus;
  int K = 1;
  BaryPoly poly;            // degree N, |p(x_m)| <= 1
  double probe = 0.0;       // -cos(pi/N) (minus) or cos(pi/N) (plus)
  double value_at_probe = 0.0;
  double sup_norm = 0.0;
  double max_on_grid = 0.0;
  double log_Q = 0.0;
};

/// p(x) = q(x)/2 * prod_{n<K} (x - x_n)/(x - y_n) with q = T_N (mirrored for
/// the plus side). Throws InvalidArgument when K = 1 on that side.
Witness witness_polynomial(const NodeSet& nodes, int N, Side side);

/// max_m (theta_{m+1} - theta_m), the largest arccos gap.
double zeta(const NodeSet& nodes);

/// 1/(1 - N zeta) when N zeta < 1.
std::optional<double> zeta_upper_bound_B(const NodeSet& nodes, int N);

struct Certificate {
  int N = 0;
  double B = 1.0;
  double kappa_lower = 0.5;  // B(M,N)/2
};

/// Largest N >= 1 with N < (M^tau log rho - log 2C)/log theta (and N <= M),
/// and the resulting condition-number lower bound B(M,N)/2. Empty when no
/// N >= 1 qualifies.
std::optional<Certificate> impossibility_certificate(const NodeSet& nodes, double tau, double rho, double C,
                                                     double theta, const BOptions& options = {});

}  // namespace maxpoly
