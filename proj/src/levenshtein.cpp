#include "deb/levenshtein.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "deb/errors.hpp"
#include "deb/orthopoly.hpp"

namespace deb {
namespace {

constexpr double kExactnessTol = 1e-9;

__extension__ typedef unsigned __int128 u128;

std::string fmt_interval(double lo, double hi) {
  std::ostringstream os;
  os.precision(17);
  os << "[" << lo << ", " << hi << "]";
  return os.str();
}

void require_tau(int tau) {
  if (tau < 1) throw RangeError("strength tau must be >= 1");
  if ((tau + 1) / 2 > kMaxK)
    throw RangeError("strength " + std::to_string(tau) + " exceeds the cap k <= " +
                     std::to_string(kMaxK));
}

u128 binom128(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  u128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i);
    r /= static_cast<unsigned>(i);
    if (r > std::numeric_limits<std::uint64_t>::max())
      throw RangeError("DGS bound overflows 64-bit integers");
  }
  return r;
}

double binom_real(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Roots of K(t) = P_k(t) P_{k-1}(s) - P_k(s) P_{k-1}(t) other than t = s, for
// the Jacobi family (alpha, beta). They interlace the zeros of P_{k-1}: one
// below the smallest zero and one in each gap.
std::vector<double> kernel_roots(double alpha, double beta, int k, double s) {
  std::vector<double> roots;
  if (k <= 1) return roots;
  const double pk_s = jacobi(alpha, beta, k, s);
  const double pk1_s = jacobi(alpha, beta, k - 1, s);
  auto kernel = [&](double t) {
    return jacobi(alpha, beta, k, t) * pk1_s - pk_s * jacobi(alpha, beta, k - 1, t);
  };
  auto dkernel = [&](double t) {
    return jacobi_derivative(alpha, beta, k, t) * pk1_s - pk_s * jacobi_derivative(alpha, beta, k - 1, t);
  };
  const std::vector<double> z = jacobi_zeros(alpha, beta, k - 1);

  auto solve = [&](double lo, double hi) {
    double flo = kernel(lo);
    const double fhi = kernel(hi);
    if (flo == 0.0) return lo;
    if ((flo > 0) == (fhi > 0)) throw ConvergenceError("kernel root bracket has no sign change");
    // bisect to 1e-6 then Newton-polish, as for the Jacobi zeros
    while (hi - lo > 1e-6) {
      const double mid = 0.5 * (lo + hi);
      const double fm = kernel(mid);
      if ((fm > 0) == (flo > 0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 60; ++it) {
      const double fx = kernel(x);
      if (fx == 0.0) return x;
      double next = x - fx / dkernel(x);
      if (!(next > lo && next < hi)) {
        if ((fx > 0) == (flo > 0)) {
          lo = x;
          flo = fx;
        } else {
          hi = x;
        }
        next = 0.5 * (lo + hi);
      }
      const double step = std::abs(next - x);
      x = next;
      if (step <= 1e-13) return x;
    }
    throw ConvergenceError("kernel root polish did not converge");
  };

  // Lowest root: it approaches -1 at the lower end of the odd interval.
  const double at_minus_one = kernel(-1.0);
  const double scale = std::abs(jacobi(alpha, beta, k, -1.0) * pk1_s) +
                       std::abs(pk_s * jacobi(alpha, beta, k - 1, -1.0));
  const double at_z0 = kernel(z.front());
  if (std::abs(at_minus_one) <= 1e-12 * scale) {
    roots.push_back(-1.0);
  } else if ((at_minus_one > 0) == (at_z0 > 0)) {
    throw RangeError("cardinality below the admissible interval: lowest quadrature node < -1");
  } else {
    roots.push_back(solve(-1.0, z.front()));
  }
  for (std::size_t i = 0; i + 1 < z.size(); ++i) roots.push_back(solve(z[i], z[i + 1]));
  return roots;
}

QuadratureRule build_rule(int n, int tau, double s, double N, bool boundary) {
  const int k = (tau + 1) / 2;
  const double lambda = 0.5 * (n - 3);
  QuadratureRule rule;
  rule.spec = {n, tau, N};
  rule.s = s;
  rule.boundary = boundary;
  if (tau % 2 == 1) {
    rule.parity = Parity::odd;
    rule.nodes = kernel_roots(lambda + 1.0, lambda, k, s);
    rule.nodes.push_back(s);
  } else {
    rule.parity = Parity::even;
    rule.nodes.push_back(-1.0);
    const auto interior = kernel_roots(lambda + 1.0, lambda + 1.0, k, s);
    rule.nodes.insert(rule.nodes.end(), interior.begin(), interior.end());
    rule.nodes.push_back(s);
  }
  for (std::size_t i = 1; i < rule.nodes.size(); ++i)
    if (!(rule.nodes[i] > rule.nodes[i - 1]))
      throw ConsistencyError("quadrature nodes are not strictly increasing");

  // sum_i w_i P_j(x_i) = delta_{j0} - 1/N, j = 0..M-1, in the Gegenbauer basis.
  const int m = static_cast<int>(rule.nodes.size());
  Eigen::MatrixXd v(m, m);
  std::vector<double> column(std::max(m, tau + 1));
  for (int i = 0; i < m; ++i) {
    gegenbauer_all(n, m - 1, rule.nodes[i], column);
    for (int j = 0; j < m; ++j) v(j, i) = column[j];
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Constant(m, -1.0 / N);
  rhs(0) += 1.0;
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(v);
  const Eigen::VectorXd w = qr.solve(rhs);
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(v);
  const auto& sv = svd.singularValues();
  rule.condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  rule.weights.assign(w.data(), w.data() + m);
  for (double& wi : rule.weights) {
    if (wi < 0.0 && wi > -1e-12) wi = 0.0;
    if (wi < 0.0) throw ConsistencyError("quadrature produced a negative weight");
  }

  rule.exactness_residuals.assign(tau + 1, 0.0);
  std::vector<double> pj(tau + 1);
  for (int j = 0; j <= tau; ++j) rule.exactness_residuals[j] = 1.0 / N - (j == 0 ? 1.0 : 0.0);
  for (int i = 0; i < m; ++i) {
    gegenbauer_all(n, tau, rule.nodes[i], pj);
    for (int j = 0; j <= tau; ++j) rule.exactness_residuals[j] += rule.weights[i] * pj[j];
  }
  if (rule.max_residual() > kExactnessTol) {
    std::ostringstream os;
    os << "quadrature exactness check failed for n=" << n << " tau=" << tau << " N=" << N
       << ": max residual " << rule.max_residual();
    throw ConsistencyError(os.str());
  }
  return rule;
}

}  // namespace

double QuadratureRule::max_residual() const {
  double r = 0.0;
  for (double x : exactness_residuals) r = std::max(r, std::abs(x));
  return r;
}

std::uint64_t dgs_bound(int n, int tau) {
  if (n < 2) throw RangeError("dimension n must be >= 2");
  if (tau < 0) throw RangeError("strength tau must be >= 0");
  u128 v;
  if (tau % 2 == 1) {
    const int k = (tau + 1) / 2;
    v = 2 * binom128(n + k - 2, n - 1);
  } else {
    const int k = tau / 2;
    v = binom128(n + k - 1, n - 1) + binom128(n + k - 2, n - 1);
  }
  if (v > std::numeric_limits<std::uint64_t>::max()) throw RangeError("DGS bound overflows 64-bit integers");
  return static_cast<std::uint64_t>(v);
}

Interval levenshtein_interval(int n, int m) {
  if (n < 2) throw RangeError("dimension n must be >= 2");
  if (m < 1) throw RangeError("interval index m must be >= 1");
  const int k = (m + 1) / 2;
  if (m % 2 == 1) return {adjacent_largest_zero(n, 1, 1, k - 1), adjacent_largest_zero(n, 1, 0, k)};
  return {adjacent_largest_zero(n, 1, 0, k), adjacent_largest_zero(n, 1, 1, k)};
}

double lev_bound_m(int n, int m, double s) {
  if (n < 2) throw RangeError("dimension n must be >= 2");
  if (m < 1) throw RangeError("branch m must be >= 1");
  if (!(s < 1.0)) throw RangeError("s must be < 1");
  if (s < -1.0) throw RangeError("s must be >= -1");
  if (m % 2 == 1) {
    const int k = (m + 1) / 2;
    const double pk = gegenbauer(n, k, s);
    const double pk1 = gegenbauer(n, k - 1, s);
    return binom_real(k + n - 3, k - 1) * ((2.0 * k + n - 3) / (n - 1) - (pk1 - pk) / ((1.0 - s) * pk));
  }
  const int k = m / 2;
  const double pk = gegenbauer(n, k, s);
  const double pk1 = gegenbauer(n, k + 1, s);
  return binom_real(k + n - 2, k) *
         ((2.0 * k + n - 1) / (n - 1) - (1.0 + s) * (pk - pk1) / ((1.0 - s) * (pk + pk1)));
}

double lev_bound(int n, double s) {
  if (!(s < 1.0)) throw RangeError("s must be < 1");
  if (s < -1.0) throw RangeError("s must be >= -1");
  for (int m = 1; m <= 2 * kMaxK + 1; ++m) {
    const Interval iv = levenshtein_interval(n, m);
    if (s <= iv.hi) return lev_bound_m(n, m, s);
  }
  throw RangeError("s lies beyond the supported Levenshtein branches");
}

double solve_cardinality(int n, int tau, double N) {
  require_tau(tau);
  const double d_lo = static_cast<double>(dgs_bound(n, tau));
  const double d_hi = static_cast<double>(dgs_bound(n, tau + 1));
  if (!(N >= d_lo && N <= d_hi)) {
    std::ostringstream os;
    os << "N = " << N << " outside the admissible interval [D(n,tau), D(n,tau+1)] = ["
       << static_cast<std::uint64_t>(d_lo) << ", " << static_cast<std::uint64_t>(d_hi) << "] for n=" << n
       << ", tau=" << tau;
    throw RangeError(os.str());
  }
  Interval iv = levenshtein_interval(n, tau);
  if (N == d_lo) return iv.lo;
  if (N == d_hi) return iv.hi;
  auto g = [&](double s) { return lev_bound_m(n, tau, s) - N; };
  double lo = iv.lo;
  double hi = iv.hi;
  // L_tau increases on I_tau from D(n,tau) to D(n,tau+1).
  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) < 0) lo = mid;
    else hi = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 100; ++it) {
    const double gx = g(x);
    if (gx == 0.0) return x;
    if (gx < 0) lo = x;
    else hi = x;
    const double h = std::max(1e-9, 1e-7 * std::abs(x));
    const double dg = (g(std::min(x + h, iv.hi)) - g(std::max(x - h, iv.lo))) /
                      (std::min(x + h, iv.hi) - std::max(x - h, iv.lo));
    double next = (dg > 0) ? x - gx / dg : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - x);
    x = next;
    if (step <= 1e-15 || hi - lo <= 4 * std::numeric_limits<double>::epsilon()) return x;
  }
  throw ConvergenceError("solve_cardinality did not converge in " + fmt_interval(iv.lo, iv.hi));
}

QuadratureRule quadrature_rule(int n, int tau, double N) {
  if (n < 3 && tau > 1) throw RangeError("quadrature rules need n >= 3");
  if (!(N > 1.0)) throw RangeError("cardinality N must exceed 1");
  const double s = solve_cardinality(n, tau, N);
  const double d_lo = static_cast<double>(dgs_bound(n, tau));
  const double d_hi = static_cast<double>(dgs_bound(n, tau + 1));
  return build_rule(n, tau, s, N, N == d_lo || N == d_hi);
}

QuadratureRule quadrature_rule_at(int n, int tau, double s) {
  require_tau(tau);
  if (n < 3 && tau > 1) throw RangeError("quadrature rules need n >= 3");
  const Interval iv = levenshtein_interval(n, tau);
  if (s < iv.lo || s > iv.hi)
    throw RangeError("s outside I_" + std::to_string(tau) + " = " + fmt_interval(iv.lo, iv.hi));
  const double N = lev_bound_m(n, tau, s);
  return build_rule(n, tau, s, N, s == iv.lo || s == iv.hi);
}

Poly levenshtein_polynomial(const QuadratureRule& rule) {
  std::vector<Root> roots;
  const auto& x = rule.nodes;
  if (rule.parity == Parity::odd) {
    for (std::size_t i = 0; i + 1 < x.size(); ++i) roots.push_back({x[i], 2});
    roots.push_back({x.back(), 1});
  } else {
    roots.push_back({x.front(), 1});
    for (std::size_t i = 1; i + 1 < x.size(); ++i) roots.push_back({x[i], 2});
    roots.push_back({x.back(), 1});
  }
  return poly_from_roots(roots);
}

Poly levenshtein_polynomial(int n, int tau, double N) {
  return levenshtein_polynomial(quadrature_rule(n, tau, N));
}

Gamma0N gamma0_times_N(int n, int k, double N) {
  if (k < 1) throw RangeError("k must be >= 1");
  const QuadratureRule rule = quadrature_rule(n, 2 * k, N);
  return {rule.weights.front() * N, rule.boundary};
}

}  // namespace deb
