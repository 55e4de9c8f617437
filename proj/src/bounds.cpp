#include "deb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "deb/errors.hpp"
#include "deb/innerprod.hpp"

namespace deb {
namespace {

constexpr double kUpperOpen = 1.0 - 1e-6;
constexpr double kIdentityTol = 1e-8;

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(1.0, std::max(std::abs(a), std::abs(b))); }

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void require_identity(double a, double b, const std::string& what) {
  if (rel_diff(a, b) > kIdentityTol)
    throw ConsistencyError(what + " cross-check failed: " + num(a) + " vs " + num(b));
}

BoundReport certify(const Poly& f, int n, int tau, double lo, double hi, const Potential& h, double N, Side side,
                    const CertifyOptions& opt) {
  BoundReport r;
  r.spec = {n, tau, N};
  r.side = side;
  r.potential = h.spec();
  r.certificate.poly = f;
  r.certificate.gegenbauer = gegenbauer_expand(n, f);
  r.certificate.lo = lo;
  r.certificate.hi = hi;
  r.value = certificate_value(r.certificate.gegenbauer, f, N);
  r.margin = verify_one_sided(f, h, lo, hi, side == Side::lower ? Relation::below : Relation::above, opt.grid,
                              opt.tol);

  const auto& c = r.certificate.gegenbauer.coeffs;
  double scale = 1.0;
  for (double x : c) scale = std::max(scale, std::abs(x));
  for (int i = tau + 1; i < static_cast<int>(c.size()); ++i) {
    const double signed_c = side == Side::lower ? c[i] : -c[i];
    if (r.flagged_index < 0 || signed_c < (side == Side::lower ? r.flagged_coeff : -r.flagged_coeff)) {
      r.flagged_coeff = c[i];
      r.flagged_index = i;
    }
  }
  if (r.flagged_index >= 0) {
    const double signed_c = side == Side::lower ? r.flagged_coeff : -r.flagged_coeff;
    r.coeff_ok = signed_c >= -opt.tol * scale;
  }
  r.accepted = r.margin.passes && r.coeff_ok;
  if (!r.margin.passes)
    r.notes.push_back(std::string(side == Side::lower ? "f > h" : "g < h") + " at t = " + num(r.margin.argmin));
  if (!r.coeff_ok)
    r.notes.push_back("Gegenbauer coefficient " + std::to_string(r.flagged_index) + " has the wrong sign: " +
                      num(r.flagged_coeff));
  return r;
}

void require_accepted(const BoundReport& r) {
  if (!r.accepted) {
    std::string why = r.method + " certificate rejected";
    for (const auto& note : r.notes) why += "; " + note;
    throw ConsistencyError(why);
  }
}

void require_cardinality(int n, int tau, double N, bool open_lo, bool open_hi) {
  const double lo = static_cast<double>(dgs_bound(n, tau));
  const double hi = static_cast<double>(dgs_bound(n, tau + 1));
  const bool ok = (open_lo ? N > lo : N >= lo) && (open_hi ? N < hi : N <= hi);
  if (!ok) {
    std::ostringstream os;
    os << "N = " << N << " outside the admissible interval " << (open_lo ? "(" : "[") << lo << ", " << hi
       << (open_hi ? ")" : "]") << " for n=" << n << ", tau=" << tau;
    throw RangeError(os.str());
  }
}

double weighted_energy(const QuadratureRule& rule, const Potential& h) {
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * h(rule.nodes[i]);
  return rule.spec.N * rule.spec.N * s;
}

HermiteScheme ulb_scheme(const QuadratureRule& rule) {
  HermiteScheme scheme;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const bool simple = rule.parity == Parity::even && i == 0;
    scheme.nodes.push_back({rule.nodes[i], simple ? 1 : 2});
  }
  return scheme;
}

// Adds a node, merging with an existing one closer than 1e-12 by keeping the
// larger multiplicity.
void add_node(HermiteScheme& scheme, double t, int mult) {
  for (auto& node : scheme.nodes) {
    if (std::abs(node.t - t) <= 1e-12) {
      node.multiplicity = std::max(node.multiplicity, mult);
      return;
    }
  }
  scheme.nodes.push_back({t, mult});
}

}  // namespace

std::string to_string(Side side) { return side == Side::lower ? "lower" : "upper"; }

double certificate_value(const GegExpansion& f, const Poly& p, double N) { return N * (f.f0() * N - p(1.0)); }

double certificate_value(const Poly& f, int n, double N) {
  return certificate_value(gegenbauer_expand(n, f), f, N);
}

BoundReport lp_certify_lower(const Poly& f, int n, int tau, double lo, double hi, const Potential& h, double N,
                             const CertifyOptions& opt) {
  BoundReport r = certify(f, n, tau, lo, hi, h, N, Side::lower, opt);
  r.method = "lp_certify_lower";
  return r;
}

BoundReport lp_certify_upper(const Poly& g, int n, int tau, double lo, double hi, const Potential& h, double N,
                             const CertifyOptions& opt) {
  BoundReport r = certify(g, n, tau, lo, hi, h, N, Side::upper, opt);
  r.method = "lp_certify_upper";
  return r;
}

Reverification reverify(const BoundReport& report, const Potential& h, const CertifyOptions& opt) {
  const auto& c = report.certificate;
  const BoundReport again = certify(c.poly, report.spec.n, report.spec.tau, c.lo, c.hi, h, report.spec.N,
                                    report.side, opt);
  Reverification v;
  v.margin = again.margin;
  v.coeff_ok = again.coeff_ok;
  v.value_rel_error = std::abs(again.value - report.value) / std::max(1.0, std::abs(report.value));
  v.ok = again.margin.passes && again.coeff_ok && v.value_rel_error <= 1e-9;
  return v;
}

BoundReport ulb(int n, double N, int tau, const Potential& h) {
  const QuadratureRule rule = quadrature_rule(n, tau, N);
  const Poly F = interpolate(ulb_scheme(rule), h);
  BoundReport r = lp_certify_lower(F, n, tau, -1.0, kUpperOpen, h, N);
  r.method = "ulb";
  const double closed = weighted_energy(rule, h);
  require_identity(r.value, closed, "ulb");
  r.closed_form = closed;
  if (rule.boundary) r.notes.push_back("N is a DGS endpoint; limiting quadrature rule used");
  require_accepted(r);
  return r;
}

BoundReport improved_even_lower(int n, double N, int k, const Potential& h, std::optional<double> ell) {
  if (k < 1) throw RangeError("k must be >= 1");
  const int tau = 2 * k;
  require_cardinality(n, tau, N, true, true);
  const double l = ell ? *ell : best_range(n, N, tau).lo;
  if (l <= -1.0) {
    BoundReport r = ulb(n, N, tau, h);
    r.method = "improved_even_lower";
    r.notes.push_back("ell <= -1: reduces to the universal lower bound");
    return r;
  }
  const QuadratureRule rule = quadrature_rule(n, tau, N);
  if (!(l < rule.nodes[1])) throw RangeError("ell must lie below beta_1 = " + num(rule.nodes[1]));
  HermiteScheme scheme;
  scheme.nodes.push_back({l, 1});
  for (std::size_t i = 1; i < rule.nodes.size(); ++i) scheme.nodes.push_back({rule.nodes[i], 2});
  const Poly G = interpolate(scheme, h);
  BoundReport r = lp_certify_lower(G, n, tau, l, kUpperOpen, h, N);
  r.method = "improved_even_lower";
  // N^2 (sum gamma_i h(beta_i) + gamma_0 (G(-1) - h(-1)))
  const double closed = weighted_energy(rule, h) + N * N * rule.weights[0] * (G(-1.0) - h(-1.0));
  require_identity(r.value, closed, "improved_even_lower");
  r.closed_form = closed;
  r.notes.push_back("ell = " + num(l));
  require_accepted(r);
  return r;
}

double lower_2design_a0(int n, double N, double kappa) {
  return (n * (1.0 - kappa) - N) / (n * (1.0 - kappa) + kappa * N * n);
}

BoundReport lower_2design(int n, double N, const Potential& h, std::optional<double> kappa) {
  if (!(N >= n + 1.0 && N <= 2.0 * n)) {
    std::ostringstream os;
    os << "lower_2design: N = " << N << " outside [" << n + 1 << ", " << 2 * n << "]";
    throw RangeError(os.str());
  }
  const double kap = kappa ? *kappa : 1.0 - N / n;
  const double a = kappa ? lower_2design_a0(n, N, kap) : 0.0;
  if (!(a > kap && a < 1.0)) throw RangeError("tangency point a_0 = " + num(a) + " outside (kappa, 1)");
  HermiteScheme scheme{{{kap, 1}, {a, 2}}};
  const Poly f = interpolate(scheme, h);
  BoundReport r = lp_certify_lower(f, n, 2, kap, kUpperOpen, h, N);
  r.method = "lower_2design";
  if (!kappa) {
    const double closed = N * (h(0.0) * N * (N - n - 1) + n * h(1.0 - N / n)) / (N - n);
    require_identity(r.value, closed, "lower_2design");
    r.closed_form = closed;
  }
  r.notes.push_back("kappa = " + num(kap) + ", a_0 = " + num(a));
  require_accepted(r);
  return r;
}

BoundReport upper_2design(int n, double N, const Potential& h) {
  if (!(N >= n + 1.0 && N < 2.0 * n)) {
    std::ostringstream os;
    os << "upper_2design: N = " << N << " outside [" << n + 1 << ", " << 2 * n << ")";
    throw RangeError(os.str());
  }
  const double u = u_bound(n, N, 2);
  const double l = l_bound(n, N, 2);
  BoundReport r;
  if (std::abs(u - l) <= 1e-14) {
    const Poly g = Poly::constant(h(l));
    r = lp_certify_upper(g, n, 2, l, l, h, N);
    r.closed_form = N * (N - 1) * h(l);
    r.notes.push_back("ell = u: every inner product equals -1/(N-1)");
  } else {
    const double hl = h(l);
    const double hu = h(u);
    const double slope = (hu - hl) / (u - l);
    const Poly g{hl - slope * l, slope};
    r = lp_certify_upper(g, n, 2, l, u, h, N);
    r.closed_form = N * ((N - 1) * (u * hl - l * hu) + hl - hu) / (u - l);
  }
  r.method = "upper_2design";
  require_identity(r.value, *r.closed_form, "upper_2design");
  require_accepted(r);
  return r;
}

double upper_cubic_a0(int n, double N, double l, double u) {
  return (N * (l + u) + n * (1 - l) * (1 - u)) / (n * (1 - l) * (1 - u) - N * (1 + l * u * n));
}

BoundReport upper_cubic(int n, double N, int tau, const Potential& h, std::optional<double> u_in) {
  double l = -1.0;
  double u = 0.0;
  if (tau == 4) {
    const double lo = n * (n + 3) / 2.0;
    const double hi = n * (n + 1.0);
    if (!(N >= lo && N < hi)) {
      std::ostringstream os;
      os << "upper_cubic tau=4: N = " << N << " outside [" << lo << ", " << hi << ")";
      throw RangeError(os.str());
    }
    l = l_bound(n, N, 4);
    u = u_bound(n, N, 4);
    if (u_in) u = std::min(u, *u_in);
  } else if (tau == 3) {
    const double lo = 2.0 * n;
    const double hi = n * (n + 3) / 2.0;
    if (!(N >= lo && N < hi)) {
      std::ostringstream os;
      os << "upper_cubic tau=3: N = " << N << " outside [" << lo << ", " << hi << ")";
      throw RangeError(os.str());
    }
    if (!u_in) throw RangeError("upper_cubic with tau=3 needs an upper inner-product bound u");
    u = *u_in;
  } else {
    throw RangeError("upper_cubic supports tau = 3 and tau = 4");
  }
  if (!(u > l && u < 1.0)) throw RangeError("need ell < u < 1, got [" + num(l) + ", " + num(u) + "]");

  const double a0 = upper_cubic_a0(n, N, l, u);
  auto build = [&](double a) {
    HermiteScheme scheme{{{l, 1}, {a, 2}, {u, 1}}};
    return lp_certify_upper(interpolate(scheme, h), n, tau, l, u, h, N);
  };
  BoundReport r;
  const double margin = 1e-9 * (u - l);
  if (a0 > l + margin && a0 < u - margin) {
    r = build(a0);
    const double d = 1 + n * a0 * a0;
    const double closed =
        N * (N - 1) * h(a0) +
        N * (h(l) - h(a0)) * (u * N * d + 2 * N * a0 + n * (1 - u) * (1 - a0) * (1 - a0)) /
            (n * (u - l) * (l - a0) * (l - a0)) -
        N * (h(u) - h(a0)) * (l * N * d + 2 * N * a0 + n * (1 - l) * (1 - a0) * (1 - a0)) /
            (n * (u - l) * (u - a0) * (u - a0));
    require_identity(r.value, closed, "upper_cubic");
    r.closed_form = closed;
    r.notes.push_back("a_0 = " + num(a0));
  } else {
    constexpr int kSteps = 400;
    double best_a = 0.5 * (l + u);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 1; i < kSteps; ++i) {
      const double a = l + (u - l) * i / kSteps;
      HermiteScheme scheme{{{l, 1}, {a, 2}, {u, 1}}};
      const double v = certificate_value(interpolate(scheme, h), n, N);
      if (v < best) {
        best = v;
        best_a = a;
      }
    }
    r = build(best_a);
    r.notes.push_back("a_0 = " + num(a0) + " outside (ell, u); grid-optimized a = " + num(best_a));
  }
  r.method = "upper_cubic";
  r.notes.push_back("ell = " + num(l) + ", u = " + num(u));
  require_accepted(r);
  return r;
}

BoundReport strip_odd(int n, double N, int tau, const Potential& h, double u) {
  if (tau < 1 || tau % 2 == 0) throw RangeError("strip_odd needs odd tau");
  require_cardinality(n, tau, N, false, false);
  const QuadratureRule rule = quadrature_rule(n, tau, N);
  const int k = static_cast<int>(rule.nodes.size());
  const double top = rule.nodes.back();
  if (u < top - 1e-12) throw RangeError("u = " + num(u) + " must be >= alpha_{k-1} = " + num(top));
  if (!(u < 1.0)) throw RangeError("u must be < 1");
  const double base = weighted_energy(rule, h);

  BoundReport best;
  bool have = false;
  for (int j = 0; j < k; ++j) {
    HermiteScheme scheme;
    add_node(scheme, -1.0, 1);
    for (int i = 0; i < k; ++i)
      if (i != j) add_node(scheme, rule.nodes[i], 2);
    add_node(scheme, u, 1);
    std::sort(scheme.nodes.begin(), scheme.nodes.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
    Poly G;
    try {
      G = interpolate(scheme, h);
    } catch (const InputError&) {
      continue;
    }
    BoundReport r = lp_certify_upper(G, n, tau, -1.0, u, h, N);
    const double aj = rule.nodes[j];
    const double closed = base + N * N * rule.weights[j] * (G(aj) - h(aj));
    require_identity(r.value, closed, "strip_odd");
    r.closed_form = closed;
    r.notes.push_back("j = " + std::to_string(j) + ", u = " + num(u));
    if (!r.accepted) continue;
    if (!have || r.value < best.value) {
      best = std::move(r);
      have = true;
    }
  }
  if (!have) throw ConsistencyError("strip_odd: no admissible interpolant passed certification");
  best.method = "strip_odd";
  return best;
}

double test_function(int n, int tau, double N, int j) {
  if (tau % 2 == 0) throw RangeError("test functions are defined for odd tau");
  if (j < 1) throw RangeError("j must be >= 1");
  const QuadratureRule rule = quadrature_rule(n, tau, N);
  double q = 1.0 / N;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) q += rule.weights[i] * gegenbauer(n, j, rule.nodes[i]);
  return q;
}

TestFunctionTable test_table(int n, int tau, double N, int j_max) {
  if (tau % 2 == 0) throw RangeError("test functions are defined for odd tau");
  if (j_max < 1) throw RangeError("j_max must be >= 1");
  const QuadratureRule rule = quadrature_rule(n, tau, N);
  TestFunctionTable t;
  t.spec = rule.spec;
  t.s = rule.s;
  std::vector<double> pj(j_max + 1);
  t.values.assign(j_max, 1.0 / N);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    gegenbauer_all(n, j_max, rule.nodes[i], pj);
    for (int j = 1; j <= j_max; ++j) t.values[j - 1] += rule.weights[i] * pj[j];
  }
  return t;
}

BoundReport improve_with_degree(int n, double N, int tau, const Potential& h, int j, std::optional<double> eps) {
  if (tau % 2 == 0) throw RangeError("improve_with_degree needs odd tau");
  if (j <= tau) throw RangeError("the added degree j must exceed tau");
  const int k = (tau + 1) / 2;
  const double q = test_function(n, tau, N, j);
  if (!(q < 0.0))
    throw RangeError("Q_" + std::to_string(j) + " = " + num(q) +
                     " >= 0: adding P_j cannot improve the universal lower bound");

  const BoundReport base = ulb(n, N, tau, h);
  const QuadratureRule rule = quadrature_rule(n, tau, N);
  HermiteScheme scheme = ulb_scheme(rule);
  const Poly pj = gegenbauer_poly(n, j);
  const ValueAndDerivative pj_fn = [&](double t, int order) { return pj.derivative_at(t, order); };
  const Poly hp = interpolate(scheme, pj_fn);
  const HermiteInterpolant hn = hermite_newton(scheme, pj_fn);
  const WeightRule mean_rule = weight_rule(n, scheme.condition_count());
  const Poly d = pj - hp;

  double e = 0.0;
  if (eps) {
    e = *eps;
  } else {
    constexpr int kGrid = 2001;
    e = std::numeric_limits<double>::infinity();
    for (int m = 0; m <= std::min(2 * k, j); ++m) {
      double hmin = std::numeric_limits<double>::infinity();
      double pmax = 0.0;
      const Poly pm = pj.derivative(m);
      for (int i = 0; i < kGrid; ++i) {
        const double t = -1.0 + (kUpperOpen + 1.0) * i / (kGrid - 1);
        hmin = std::min(hmin, h.derivative(t, m));
        pmax = std::max(pmax, std::abs(pm(t)));
      }
      if (pmax > 0.0) e = std::min(e, hmin / pmax);
    }
    if (!(e > 0.0) || !std::isfinite(e)) throw RangeError("potential is not strictly absolutely monotone");
  }

  for (int attempt = 0; attempt < 200; ++attempt, e *= 0.5) {
    if (!check_abs_monotone(perturb(h, e, n, j), 2 * k).passes()) continue;
    BoundReport r = lp_certify_lower(base.certificate.poly + e * d, n, tau, -1.0, kUpperOpen, h, N);
    if (!r.accepted) continue;
    // The shift is far below the resolution of the certificate value, so it is
    // evaluated on d = P_j - H[P_j] alone, with H kept in Newton form.
    const double h_mean = mean_rule.integrate([&](double t) { return hn(t); });
    const double gain = e * N * (hn(1.0) - 1.0 - N * h_mean);
    const double predicted = e * N * N * std::abs(q);
    if (std::abs(gain - predicted) > kIdentityTol * predicted)
      throw ConsistencyError("improve_with_degree: gain " + num(gain) + " differs from eps N^2 |Q_j| = " +
                             num(predicted));
    r.method = "improve_with_degree";
    r.closed_form = base.value + predicted;
    r.value = base.value + gain;
    r.improvement = Improvement{j, e, q, gain};
    return r;
  }
  throw ConsistencyError("improve_with_degree: no admissible eps found");
}

double k0_threshold(int k) {
  if (k < 9) throw RangeError("k_0 is defined for k >= 9");
  const double kk = k;
  return (kk * kk - 4 * kk + 5 + std::sqrt(kk * kk * kk * kk - 8 * kk * kk * kk - 6 * kk * kk + 24 * kk + 25)) / 4;
}

StripAsym strip2_asym(double zeta, const Potential& h, double N) {
  if (!(zeta > 1.0 && zeta < 2.0)) throw RangeError("zeta must lie in (1, 2)");
  if (!(N > 0.0)) throw RangeError("N must be positive");
  const double h0 = h(0.0);
  const double hm = h(1.0 - zeta);
  const double hp = h(zeta - 1.0);
  StripAsym a;
  a.lower_main = h0 + (hm - zeta * h0) / ((zeta - 1.0) * N);
  a.upper_main = 0.5 * (hm + hp) + ((2.0 - zeta) * hm - zeta * hp) / (2.0 * (zeta - 1.0) * N);
  return a;
}

double upper4_asym(double lambda, const Potential& h, double N) {
  if (!(lambda >= 0.5 && lambda < 1.0)) throw RangeError("lambda must lie in [1/2, 1)");
  const double r = std::sqrt(lambda);
  const double w = 2 * r - 1;
  const double h0 = h(0.0);
  const double hm = h(1 - 2 * r);
  const double hp = h(2 * r - 1);
  const double c1 = r * (w * hm + (1 - 2 * r) * hp) / (2 * w * w * w);
  const double c2 = ((1 - r) * hm + r * hp - h0) / (w * w * w);
  return h0 * N * N - h0 * N + c1 * std::sqrt(N) + c2;
}

double ulb_asym_main(const Potential& h, double N) { return h(0.0) * N * N; }

}  // namespace deb
