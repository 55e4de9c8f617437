#pragma once

#include <cstdint>
#include <vector>

#include "deb/poly.hpp"

namespace deb {

inline constexpr int kMaxK = 30;

struct DesignSpec {
  int n = 0;
  int tau = 0;
  double N = 0.0;

  int k() const { return (tau + 1) / 2; }
};

enum class Parity { odd, even };

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Levenshtein quadrature: for every polynomial f of degree <= tau,
///   f_0 = f(1)/N + sum_i weights[i] f(nodes[i]).
/// Odd tau = 2k-1: k nodes alpha_0 < ... < alpha_{k-1} = s.
/// Even tau = 2k: k+1 nodes, nodes[0] = -1 and nodes[k] = s.
struct QuadratureRule {
  DesignSpec spec;
  double s = 0.0;
  Parity parity = Parity::odd;
  std::vector<double> nodes;
  std::vector<double> weights;
  // r_j = 1/N + sum_i w_i P_j(x_i) - delta_{j0} for j = 0..tau.
  std::vector<double> exactness_residuals;
  // N sits on an endpoint of [D(n,tau), D(n,tau+1)]; a weight may be zero.
  bool boundary = false;
  // Condition-number estimate of the Gegenbauer collocation matrix.
  double condition = 1.0;

  double max_residual() const;
};

/// Delsarte-Goethals-Seidel bound D(n, tau), exact. Throws RangeError when the
/// value does not fit in 64 bits.
std::uint64_t dgs_bound(int n, int tau);

/// I_m = [t_{k-1}^{1,1}, t_k^{1,0}] (m = 2k-1) or [t_k^{1,0}, t_k^{1,1}] (m = 2k).
Interval levenshtein_interval(int n, int m);

/// L_m(n, s) from the closed forms, on branch m regardless of where s lies.
double lev_bound_m(int n, int m, double s);

/// L(n, s) on the branch m with s in I_m.
double lev_bound(int n, double s);

/// Unique s in I_tau with L_tau(n, s) = N. N may be real-valued.
double solve_cardinality(int n, int tau, double N);

QuadratureRule quadrature_rule(int n, int tau, double N);

/// Rule for the s in I_tau given directly; N = L_tau(n, s).
QuadratureRule quadrature_rule_at(int n, int tau, double s);

/// (t - alpha_{k-1}) prod (t - alpha_i)^2, or (t + 1)(t - beta_k) prod (t - beta_i)^2.
Poly levenshtein_polynomial(const QuadratureRule& rule);
Poly levenshtein_polynomial(int n, int tau, double N);

struct Gamma0N {
  double value = 0.0;
  bool boundary = false;
};

/// gamma_0 * N for the even rule tau = 2k.
Gamma0N gamma0_times_N(int n, int k, double N);

}  // namespace deb
