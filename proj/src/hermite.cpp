#include "deb/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "deb/errors.hpp"
#include "deb/simd.hpp"

namespace deb {

int HermiteScheme::condition_count() const {
  int c = 0;
  for (const auto& node : nodes) c += node.multiplicity;
  return c;
}

HermiteInterpolant::HermiteInterpolant(std::vector<double> abscissae, std::vector<double> coeffs)
    : z_(std::move(abscissae)), coeffs_(std::move(coeffs)) {}

double HermiteInterpolant::operator()(double t) const {
  if (coeffs_.empty()) return 0.0;
  double v = coeffs_.back();
  for (std::size_t i = coeffs_.size() - 1; i-- > 0;) v = v * (t - z_[i]) + coeffs_[i];
  return v;
}

Poly HermiteInterpolant::to_poly() const {
  if (coeffs_.empty()) return Poly();
  Poly p = Poly::constant(coeffs_.back());
  for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
    p *= Poly{-z_[i], 1.0};
    p += Poly::constant(coeffs_[i]);
  }
  return p;
}

HermiteInterpolant hermite_newton(const HermiteScheme& scheme, const ValueAndDerivative& f) {
  std::vector<HermiteNode> nodes = scheme.nodes;
  if (nodes.empty()) throw InputError("Hermite scheme has no nodes");
  std::sort(nodes.begin(), nodes.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].multiplicity < 1 || nodes[i].multiplicity > 2)
      throw InputError("Hermite node multiplicity must be 1 or 2");
    if (i > 0 && nodes[i].t - nodes[i - 1].t < 1e-10)
      throw InputError("Hermite nodes must be distinct and at least 1e-10 apart");
  }

  std::vector<double> z;
  std::vector<double> value;
  std::vector<double> slope;
  for (const auto& node : nodes) {
    const double v = f(node.t, 0);
    const double d = node.multiplicity == 2 ? f(node.t, 1) : 0.0;
    for (int r = 0; r < node.multiplicity; ++r) {
      z.push_back(node.t);
      value.push_back(v);
      slope.push_back(d);
    }
  }
  const std::size_t m = z.size();
  // In-place divided-difference table; column j holds f[z_i, ..., z_{i+j}].
  std::vector<double> table = value;
  std::vector<double> coeffs{table[0]};
  for (std::size_t j = 1; j < m; ++j) {
    for (std::size_t i = m - 1; i >= j; --i) {
      const double dz = z[i] - z[i - j];
      if (dz == 0.0) {
        table[i] = slope[i];  // only reachable for j == 1 with a doubled node
      } else {
        table[i] = (table[i] - table[i - 1]) / dz;
      }
    }
    coeffs.push_back(table[j]);
  }
  return HermiteInterpolant(std::move(z), std::move(coeffs));
}

Poly interpolate(const HermiteScheme& scheme, const ValueAndDerivative& f) {
  return hermite_newton(scheme, f).to_poly();
}

Poly interpolate(const HermiteScheme& scheme, const Potential& h) {
  return interpolate(scheme, [&h](double t, int order) { return h.derivative(t, order); });
}

namespace {

simd::MinResult sample_margin(const Poly& f, const Potential& h, double lo, double hi, int count, Relation rel,
                              std::vector<double>& ts) {
  ts.resize(count);
  std::vector<double> fv(count);
  std::vector<double> hv(count);
  for (int i = 0; i < count; ++i) ts[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  ts.back() = hi;
  f.eval(ts, fv);
  for (int i = 0; i < count; ++i) hv[i] = h(ts[i]);
  if (rel == Relation::above) {
    for (int i = 0; i < count; ++i) {
      hv[i] = -hv[i];
      fv[i] = -fv[i];
    }
  }
  return simd::min_scaled_difference(hv, fv);
}

}  // namespace

MarginReport verify_one_sided(const Poly& f, const Potential& h, double lo, double hi, Relation relation,
                              int grid_size, double tol) {
  if (hi < lo) std::swap(lo, hi);
  MarginReport rep;
  rep.relation = relation;
  rep.lo = lo;
  rep.hi = hi;
  rep.tol = tol;
  std::vector<double> ts;
  const int count = hi > lo ? std::max(grid_size, 2) : 1;
  auto best = sample_margin(f, h, lo, hi, count, relation, ts);
  double where = ts[best.index];
  double margin = best.value;

  if (count > 1) {
    double step = (hi - lo) / (count - 1);
    for (int round = 0; round < 3; ++round) {
      const double a = std::max(lo, where - step);
      const double b = std::min(hi, where + step);
      if (!(b > a)) break;
      const auto local = sample_margin(f, h, a, b, 201, relation, ts);
      if (local.value < margin) {
        margin = local.value;
        where = ts[local.index];
      }
      step = (b - a) / 200;
    }
  }
  rep.min_margin = margin;
  rep.argmin = where;
  rep.passes = margin >= -tol;
  return rep;
}

}  // namespace deb
