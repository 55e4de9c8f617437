#include "deb/orthopoly.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "deb/errors.hpp"

namespace deb {
namespace {

void require_dimension(int n) {
  if (n < 2) throw RangeError("dimension n must be >= 2, got " + std::to_string(n));
}

void require_degree(int degree) {
  if (degree < 0) throw RangeError("polynomial degree must be >= 0");
  if (degree > kMaxDegree)
    throw RangeError("polynomial degree " + std::to_string(degree) + " exceeds the cap of " +
                     std::to_string(kMaxDegree));
}

constexpr double kBracketWidth = 1e-6;
constexpr double kNewtonTol = 1e-13;

template <class F, class DF>
double bracketed_root(F&& f, DF&& df, double lo, double hi) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) throw ConvergenceError("root bracket has no sign change");
  while (hi - lo > kBracketWidth) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 60; ++iter) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    const double d = df(x);
    double next = (d != 0.0) ? x - fx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) {
      // Newton left the bracket; keep bisecting instead.
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
    if (step <= kNewtonTol) return x;
  }
  throw ConvergenceError("Newton polish did not reach 1e-13");
}

}  // namespace

double gegenbauer(int n, int degree, double t) {
  require_dimension(n);
  require_degree(degree);
  if (degree == 0) return 1.0;
  double prev = 1.0;
  double cur = t;
  for (int i = 1; i < degree; ++i) {
    const double next = ((2.0 * i + n - 2) * t * cur - i * prev) / (i + n - 2.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

void gegenbauer_all(int n, int max_degree, double t, std::span<double> out) {
  require_dimension(n);
  require_degree(max_degree);
  out[0] = 1.0;
  if (max_degree >= 1) out[1] = t;
  for (int i = 1; i < max_degree; ++i)
    out[i + 1] = ((2.0 * i + n - 2) * t * out[i] - i * out[i - 1]) / (i + n - 2.0);
}

double gegenbauer_derivative(int n, int degree, double t, int order) {
  require_dimension(n);
  require_degree(degree);
  if (order < 0) throw RangeError("derivative order must be >= 0");
  if (order > degree) return 0.0;
  // d^m/dt^m of the recurrence:
  //   (i+n-2) P_{i+1}^{(m)} = (2i+n-2) (t P_i^{(m)} + m P_i^{(m-1)}) - i P_{i-1}^{(m)}
  std::vector<double> prev(order + 1, 0.0), cur(order + 1, 0.0), next(order + 1, 0.0);
  prev[0] = 1.0;
  if (degree == 0) return prev[order];
  cur[0] = t;
  if (order >= 1) cur[1] = 1.0;
  for (int i = 1; i < degree; ++i) {
    const double a = 2.0 * i + n - 2;
    const double c = i + n - 2.0;
    for (int m = 0; m <= order; ++m) {
      const double lower = (m > 0) ? m * cur[m - 1] : 0.0;
      next[m] = (a * (t * cur[m] + lower) - i * prev[m]) / c;
    }
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  return cur[order];
}

Poly gegenbauer_poly(int n, int degree) {
  require_dimension(n);
  require_degree(degree);
  Poly prev = Poly::constant(1.0);
  if (degree == 0) return prev;
  Poly cur({0.0, 1.0});
  const Poly t({0.0, 1.0});
  for (int i = 1; i < degree; ++i) {
    Poly next = (t * cur) * ((2.0 * i + n - 2) / (i + n - 2.0)) - prev * (i / (i + n - 2.0));
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

double jacobi(double alpha, double beta, int degree, double t) {
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw RangeError("Jacobi parameters must exceed -1");
  if (degree < 0) throw RangeError("polynomial degree must be >= 0");
  if (degree == 0) return 1.0;
  double prev = 1.0;
  double cur = 0.5 * (alpha - beta + (alpha + beta + 2.0) * t);
  const double ab = alpha + beta;
  for (int k = 2; k <= degree; ++k) {
    const double c = 2.0 * k + ab;
    const double a1 = 2.0 * k * (k + ab) * (c - 2.0);
    const double a2 = (c - 1.0) * (alpha * alpha - beta * beta);
    const double a3 = (c - 2.0) * (c - 1.0) * c;
    const double a4 = 2.0 * (k + alpha - 1.0) * (k + beta - 1.0) * c;
    const double next = ((a2 + a3 * t) * cur - a4 * prev) / a1;
    prev = cur;
    cur = next;
  }
  return cur;
}

double jacobi_derivative(double alpha, double beta, int degree, double t) {
  if (degree == 0) return 0.0;
  return 0.5 * (degree + alpha + beta + 1.0) * jacobi(alpha + 1.0, beta + 1.0, degree - 1, t);
}

std::vector<double> jacobi_zeros(double alpha, double beta, int degree) {
  if (!(alpha > -1.0) || !(beta > -1.0))
    throw RangeError("Jacobi parameters must exceed -1");
  if (degree < 0) throw RangeError("polynomial degree must be >= 0");
  std::vector<double> zeros;
  for (int d = 1; d <= degree; ++d) {
    auto f = [&](double x) { return jacobi(alpha, beta, d, x); };
    auto df = [&](double x) { return jacobi_derivative(alpha, beta, d, x); };
    std::vector<double> next;
    next.reserve(d);
    double lo = -1.0;
    for (std::size_t i = 0; i <= zeros.size(); ++i) {
      const double hi = (i < zeros.size()) ? zeros[i] : 1.0;
      next.push_back(bracketed_root(f, df, lo, hi));
      lo = hi;
    }
    zeros = std::move(next);
  }
  return zeros;
}

double adjacent_largest_zero(int n, int a, int b, int k) {
  require_dimension(n);
  if ((a != 0 && a != 1) || (b != 0 && b != 1)) throw RangeError("a and b must be 0 or 1");
  if (k < 0) throw RangeError("k must be >= 0");
  if (k == 0) {
    if (a == 1 && b == 1) return -1.0;
    throw RangeError("t_0^{a,b} is only defined for a = b = 1");
  }
  const double lambda = 0.5 * (n - 3);
  const double alpha = a + lambda;
  const double beta = b + lambda;
  // Walk up the degrees: the largest zero of degree d lies between the
  // largest zero of degree d-1 and 1.
  auto root_of = [&](int d, double lo) {
    auto f = [&](double x) { return jacobi(alpha, beta, d, x); };
    auto df = [&](double x) { return jacobi_derivative(alpha, beta, d, x); };
    return bracketed_root(f, df, lo, 1.0);
  };
  double z = root_of(1, -1.0);
  for (int d = 2; d <= k; ++d) z = root_of(d, z);
  return z;
}

double weight_moment(int n, int j) {
  require_dimension(n);
  if (j < 0) throw RangeError("moment order must be >= 0");
  if (j % 2 == 1) return 0.0;
  // E[t^{2m}] = B(m + 1/2, (n-1)/2) / B(1/2, (n-1)/2) = prod_{i<m} (2i+1)/(n+2i)
  double v = 1.0;
  for (int i = 0; i < j / 2; ++i) v *= (2.0 * i + 1.0) / (n + 2.0 * i);
  return v;
}

WeightRule weight_rule(int n, int m) {
  require_dimension(n);
  if (m < 1) throw RangeError("weight rule needs at least one node");
  const double lambda = 0.5 * (n - 3);
  WeightRule rule;
  rule.n = n;
  rule.nodes = jacobi_zeros(lambda, lambda, m);
  // Moment matching in the Gegenbauer basis: sum_i w_i P_j(x_i) = delta_{j0}.
  Eigen::MatrixXd v(m, m);
  std::vector<double> column(m);
  for (int i = 0; i < m; ++i) {
    gegenbauer_all(n, m - 1, rule.nodes[i], column);
    for (int j = 0; j < m; ++j) v(j, i) = column[j];
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  rhs(0) = 1.0;
  const Eigen::VectorXd w = v.colPivHouseholderQr().solve(rhs);
  rule.weights.assign(w.data(), w.data() + m);
  for (double wi : rule.weights)
    if (!(wi > 0.0)) throw ConsistencyError("weight rule produced a non-positive weight");
  return rule;
}

double GegExpansion::coeff(int i) const {
  return (i >= 0 && static_cast<std::size_t>(i) < coeffs.size()) ? coeffs[i] : 0.0;
}

double GegExpansion::operator()(double t) const {
  if (coeffs.empty()) return 0.0;
  std::vector<double> p(coeffs.size());
  gegenbauer_all(n, static_cast<int>(coeffs.size()) - 1, t, p);
  double s = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) s += coeffs[i] * p[i];
  return s;
}

Poly GegExpansion::reconstruct() const {
  Poly r;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0.0) r += gegenbauer_poly(n, static_cast<int>(i)) * coeffs[i];
  return r;
}

GegExpansion gegenbauer_expand(int n, const Poly& p) {
  require_dimension(n);
  const int d = p.degree();
  require_degree(d);
  GegExpansion e;
  e.n = n;
  if (p.is_zero()) {
    e.coeffs = {0.0};
    return e;
  }
  // Horner's scheme in the Gegenbauer basis, using
  //   t P_i = ((i + n - 2) P_{i+1} + i P_{i-1}) / (2i + n - 2),   t P_0 = P_1.
  // Coefficient i only receives contributions from monomials of degree >= i.
  const auto c = p.coeffs();
  std::vector<double> acc{c[d]};
  for (int m = d - 1; m >= 0; --m) {
    std::vector<double> next(acc.size() + 1, 0.0);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (i == 0) {
        next[1] += acc[0];
        continue;
      }
      const double den = 2.0 * i + n - 2;
      next[i + 1] += acc[i] * (i + n - 2) / den;
      next[i - 1] += acc[i] * i / den;
    }
    next[0] += c[m];
    acc = std::move(next);
  }
  e.coeffs = std::move(acc);
  return e;
}

}  // namespace deb
