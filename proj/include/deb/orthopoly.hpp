#pragma once

#include <span>
#include <vector>

#include "deb/poly.hpp"

namespace deb {

// Degrees above this are accepted up to kMaxDegree but flagged as poorly
// conditioned in double precision.
inline constexpr int kWellConditionedDegree = 30;
inline constexpr int kMaxDegree = 60;

/// P_i^{(n)}(t), normalized so that P_i^{(n)}(1) = 1. Requires n >= 2.
double gegenbauer(int n, int degree, double t);

/// order-th derivative of P_i^{(n)} at t, from the differentiated recurrence.
double gegenbauer_derivative(int n, int degree, double t, int order);

/// Fills out[0..max_degree] with P_0^{(n)}(t) .. P_max^{(n)}(t).
void gegenbauer_all(int n, int max_degree, double t, std::span<double> out);

/// Monomial coefficients of P_i^{(n)}.
Poly gegenbauer_poly(int n, int degree);

/// Jacobi polynomial P_k^{(alpha,beta)}(t) in the standard normalization
/// P_k^{(alpha,beta)}(1) = binom(k + alpha, k). Requires alpha, beta > -1.
double jacobi(double alpha, double beta, int degree, double t);
double jacobi_derivative(double alpha, double beta, int degree, double t);

/// All zeros of P_k^{(alpha,beta)}, ascending. Each zero is bracketed by the
/// zeros of the degree k-1 polynomial, bisected to width 1e-6 and then
/// Newton-polished to 1e-13. Throws ConvergenceError on failure.
std::vector<double> jacobi_zeros(double alpha, double beta, int degree);

/// Largest zero t_k^{a,b} of P_k^{(a+(n-3)/2, b+(n-3)/2)}; t_0^{1,1} = -1.
double adjacent_largest_zero(int n, int a, int b, int k);

/// Gauss rule for the sphere-projected weight
///   c_n (1 - t^2)^{(n-3)/2},   normalized to total mass 1.
struct WeightRule {
  int n = 0;
  std::vector<double> nodes;
  std::vector<double> weights;

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

/// m-point rule, exact for polynomials of degree <= 2m - 1.
WeightRule weight_rule(int n, int m);

/// Normalized moment of t^j against the sphere weight (Beta function closed
/// form; odd moments vanish).
double weight_moment(int n, int j);

/// Coefficients of a polynomial over the Gegenbauer basis P_i^{(n)}.
struct GegExpansion {
  int n = 0;
  std::vector<double> coeffs;

  double f0() const { return coeffs.empty() ? 0.0 : coeffs.front(); }
  double coeff(int i) const;
  double operator()(double t) const;
  Poly reconstruct() const;
};

GegExpansion gegenbauer_expand(int n, const Poly& p);

}  // namespace deb
