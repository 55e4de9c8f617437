#include "deb/innerprod.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "deb/errors.hpp"
#include "deb/levenshtein.hpp"

namespace deb {
namespace {

void require_range(double N, double lo, double hi, bool hi_open, const char* what, int n) {
  const bool ok = N >= lo && (hi_open ? N < hi : N <= hi);
  if (!ok) {
    std::ostringstream os;
    os << what << ": N = " << N << " outside [" << lo << ", " << hi << (hi_open ? ")" : "]") << " for n=" << n;
    throw RangeError(os.str());
  }
}

double bisect(const auto& g, double lo, double hi) {
  double glo = g(lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0) == (glo > 0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double u_bound(int n, double N, int tau) {
  if (n < 2) throw RangeError("dimension n must be >= 2");
  if (tau == 2) {
    require_range(N, n + 1, 2 * n, false, "u_bound tau=2", n);
    return (N - 2) / n - 1.0;
  }
  if (tau == 4) {
    require_range(N, n * (n + 3) / 2.0, n * (n + 1.0), false, "u_bound tau=4", n);
    const double root = std::sqrt((n - 1.0) * ((n + 2.0) * N - 3.0 * (n + 3.0)));
    return 2.0 * (3.0 + root) / (n * (n + 2.0)) - 1.0;
  }
  throw RangeError("u_bound is available for tau = 2 and tau = 4 only");
}

double l_bound(int n, double N, int tau) {
  if (n < 2) throw RangeError("dimension n must be >= 2");
  if (tau == 2) {
    require_range(N, n + 1, 2 * n, true, "l_bound tau=2", n);
    return 1.0 - N / n;
  }
  if (tau == 4) {
    require_range(N, n * (n + 3) / 2.0, n * (n + 1.0), true, "l_bound tau=4", n);
    return 1.0 - (2.0 / n) * (1.0 + std::sqrt((n - 1.0) * (N - 2.0) / (n + 2.0)));
  }
  throw RangeError("l_bound is available for tau = 2 and tau = 4 only");
}

EvenRange even_range(int n, double N, int k) {
  if (k < 1) throw RangeError("k must be >= 1");
  const double d_lo = static_cast<double>(dgs_bound(n, 2 * k));
  const double d_hi = static_cast<double>(dgs_bound(n, 2 * k + 1));
  if (!(N > d_lo && N < d_hi)) {
    std::ostringstream os;
    os << "even_range: N = " << N << " must lie strictly inside (" << d_lo << ", " << d_hi << ")";
    throw RangeError(os.str());
  }
  const QuadratureRule rule = quadrature_rule(n, 2 * k, N);
  const std::vector<double> beta(rule.nodes.begin() + 1, rule.nodes.end());
  auto f = [&](double t) {
    double v = 1.0;
    for (double b : beta) v *= (t - b) * (t - b);
    return v;
  };
  const double target = rule.weights.front() * N * f(-1.0);
  auto g = [&](double t) { return f(t) - target; };

  EvenRange r;
  r.xi = bisect(g, -1.0, beta.front());
  double hi = 1.0;
  while (g(hi) < 0) hi = 1.0 + 2.0 * (hi - 1.0 + 0.5);
  r.eta = bisect(g, beta.back(), hi);
  return r;
}

InnerProductRange best_range(int n, double N, int tau, std::optional<double> user_u, std::optional<double> user_l) {
  InnerProductRange r;
  auto tighten_lo = [&](double v, const char* src) {
    if (v > r.lo) {
      r.lo = v;
      r.lo_source = src;
    }
  };
  auto tighten_hi = [&](double v, const char* src) {
    if (v < r.hi) {
      r.hi = v;
      r.hi_source = src;
    }
  };

  if (tau == 2 || tau == 4) {
    if (N >= (tau == 2 ? n + 1.0 : n * (n + 3) / 2.0) && N <= (tau == 2 ? 2.0 * n : n * (n + 1.0))) {
      tighten_hi(u_bound(n, N, tau), tau == 2 ? "u_bound_tau2" : "u_bound_tau4");
      if (N < (tau == 2 ? 2.0 * n : n * (n + 1.0)))
        tighten_lo(l_bound(n, N, tau), tau == 2 ? "l_bound_tau2" : "l_bound_tau4");
    }
  }
  if (tau % 2 == 0 && tau >= 2) {
    const int k = tau / 2;
    try {
      const double d_lo = static_cast<double>(dgs_bound(n, tau));
      const double d_hi = static_cast<double>(dgs_bound(n, tau + 1));
      if (N > d_lo && N < d_hi && n >= 3) {
        const EvenRange er = even_range(n, N, k);
        tighten_lo(er.xi, "even_range");
        tighten_hi(er.eta, "even_range");
      }
    } catch (const RangeError&) {
    }
  }
  if (user_l) tighten_lo(*user_l, "user");
  if (user_u) tighten_hi(*user_u, "user");
  if (r.lo > r.hi && r.lo - r.hi <= 1e-12) r.lo = r.hi = 0.5 * (r.lo + r.hi);
  r.feasible = r.lo <= r.hi;
  return r;
}

}  // namespace deb
