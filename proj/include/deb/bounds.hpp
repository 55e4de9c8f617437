#pragma once

#include <optional>
#include <string>
#include <vector>

#include "deb/hermite.hpp"
#include "deb/levenshtein.hpp"
#include "deb/orthopoly.hpp"
#include "deb/poly.hpp"
#include "deb/potentials.hpp"

namespace deb {

enum class Side { lower, upper };

struct Certificate {
  Poly poly;
  GegExpansion gegenbauer;
  double lo = -1.0;
  double hi = 1.0;
};

/// Degree-raising data: value = ulb + gain with gain = eps N^2 |Q_j|.
struct Improvement {
  int j = 0;
  double eps = 0.0;
  double q = 0.0;
  double gain = 0.0;
};

struct BoundReport {
  DesignSpec spec;
  Side side = Side::lower;
  std::string method;
  std::string potential;
  double value = 0.0;
  Certificate certificate;

  // Sign condition on the interval, sampled.
  MarginReport margin;
  // Smallest (lower side) or largest (upper side) Gegenbauer coefficient of
  // index > tau; 0 when the certificate has degree <= tau.
  double flagged_coeff = 0.0;
  int flagged_index = -1;
  bool coeff_ok = true;

  bool accepted = false;
  std::optional<double> closed_form;
  std::optional<Improvement> improvement;
  std::vector<std::string> notes;
};

struct CertifyOptions {
  int grid = kCertificateGrid;
  double tol = 1e-9;
};

/// N (f_0 N - f(1)).
double certificate_value(const GegExpansion& f, const Poly& p, double N);
double certificate_value(const Poly& f, int n, double N);

/// Checks f <= h on [lo, hi] and f_i >= 0 for i > tau. Never throws on a
/// failed condition; the report is marked as rejected instead.
BoundReport lp_certify_lower(const Poly& f, int n, int tau, double lo, double hi, const Potential& h, double N,
                             const CertifyOptions& opt = {});

/// Checks g >= h on [lo, hi] and g_i <= 0 for i > tau.
BoundReport lp_certify_upper(const Poly& g, int n, int tau, double lo, double hi, const Potential& h, double N,
                             const CertifyOptions& opt = {});

struct Reverification {
  bool ok = false;
  double value_rel_error = 0.0;
  MarginReport margin;
  bool coeff_ok = false;
};

/// Re-runs the sign and coefficient checks on a stored report and recomputes
/// its value from the certificate.
Reverification reverify(const BoundReport& report, const Potential& h, const CertifyOptions& opt = {});

/// Universal lower bound N^2 sum_i w_i h(x_i) over the Levenshtein rule.
BoundReport ulb(int n, double N, int tau, const Potential& h);

/// Even strength: Hermite scheme {(ell,1), (beta_1,2), ..., (beta_k,2)} on [ell, 1).
BoundReport improved_even_lower(int n, double N, int k, const Potential& h, std::optional<double> ell = std::nullopt);

/// Optimal tangency point of the quadratic lower certificate for a given kappa.
double lower_2design_a0(int n, double N, double kappa);
BoundReport lower_2design(int n, double N, const Potential& h, std::optional<double> kappa = std::nullopt);

/// Chord of h over [ell, u].
BoundReport upper_2design(int n, double N, const Potential& h);

double upper_cubic_a0(int n, double N, double ell, double u);
/// Cubic g with g(ell)=h(ell), g(a)=h(a), g'(a)=h'(a), g(u)=h(u). For tau = 3,
/// ell = -1 and u must be supplied.
BoundReport upper_cubic(int n, double N, int tau, const Potential& h, std::optional<double> u = std::nullopt);

/// Odd strength upper bound, min over j of the interpolants
/// {(-1,1)} + {(alpha_i,2) : i != j} + {(u,1)}.
BoundReport strip_odd(int n, double N, int tau, const Potential& h, double u);

struct TestFunctionTable {
  DesignSpec spec;
  double s = 0.0;
  int j_min = 1;
  std::vector<double> values;  // values[j - j_min] = Q_j

  double q(int j) const { return values.at(j - j_min); }
};

/// Q_j = 1/N + sum_i rho_i P_j(alpha_i) for odd tau.
double test_function(int n, int tau, double N, int j);
TestFunctionTable test_table(int n, int tau, double N, int j_max);

/// Raises the certificate degree to j by adding eps * P_j; needs Q_j < 0.
BoundReport improve_with_degree(int n, double N, int tau, const Potential& h, int j,
                                std::optional<double> eps = std::nullopt);

double k0_threshold(int k);

struct StripAsym {
  double lower_main = 0.0;  // per N^2
  double upper_main = 0.0;  // per N^2
};

/// Two-term expansions of the 2-design strip divided by N^2, N/n -> zeta.
StripAsym strip2_asym(double zeta, const Potential& h, double N);

/// h(0) N^2 - h(0) N + c_1 sqrt(N) + c_2 with N = lambda n^2.
double upper4_asym(double lambda, const Potential& h, double N);

double ulb_asym_main(const Potential& h, double N);

std::string to_string(Side side);

}  // namespace deb
