#include "deb/potentials.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <utility>

#include "deb/errors.hpp"
#include "deb/orthopoly.hpp"

namespace deb {

Potential::Potential(std::string name, std::map<std::string, double> params, DerivativeFn fn, int max_order)
    : name_(std::move(name)), params_(std::move(params)), fn_(std::move(fn)), max_order_(max_order) {}

double Potential::derivative(double t, int order) const {
  if (order < 0) throw RangeError("derivative order must be >= 0");
  if (order > max_order_) throw RangeError("potential " + name_ + " does not provide derivatives of that order");
  return fn_(t, order);
}

std::string Potential::spec() const {
  std::ostringstream os;
  os.precision(17);
  os << name_;
  char sep = ':';
  for (const auto& [key, value] : params_) {
    os << sep << key << '=' << value;
    sep = ',';
  }
  return os.str();
}

Potential make_riesz(double s) {
  if (!(s > 0.0)) throw RangeError("Riesz exponent s must be > 0");
  auto fn = [s](double t, int order) {
    // d^m/dt^m (2(1-t))^{-s/2} = 2^{-s/2} (s/2)_m (1-t)^{-s/2-m}
    double rising = 1.0;
    for (int i = 0; i < order; ++i) rising *= 0.5 * s + i;
    return std::pow(2.0, -0.5 * s) * rising * std::pow(1.0 - t, -0.5 * s - order);
  };
  return Potential("riesz", {{"s", s}}, fn);
}

Potential make_log() {
  auto fn = [](double t, int order) {
    if (order == 0) return 0.5 * std::log(2.0 / (1.0 - t));
    double fact = 1.0;
    for (int i = 2; i < order; ++i) fact *= i;
    return 0.5 * fact / std::pow(1.0 - t, order);
  };
  Potential p("log", {}, fn);
  p.offset_ = std::log(2.0);
  return p;
}

Potential make_gauss(double c) {
  if (!(c > 0.0)) throw RangeError("Gaussian parameter c must be > 0");
  auto fn = [c](double t, int order) { return std::pow(c, order) * std::exp(c * t); };
  return Potential("gauss", {{"c", c}}, fn);
}

Potential make_poly(const Poly& p) {
  std::vector<Poly> derivs{p};
  for (int m = 1; m <= p.degree(); ++m) derivs.push_back(derivs.back().derivative());
  auto fn = [derivs](double t, int order) {
    if (order >= static_cast<int>(derivs.size())) return 0.0;
    return derivs[order](t);
  };
  std::map<std::string, double> params;
  const auto c = p.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) params["c" + std::to_string(i)] = c[i];
  Potential h("poly", std::move(params), fn);
  constexpr int kSamples = 4001;
  for (int i = 0; i < kSamples; ++i) {
    const double t = -1.0 + 2.0 * i / (kSamples - 1);
    if (t < 1.0 && p(t) < 0.0) {
      h.negative_somewhere_ = true;
      break;
    }
  }
  return h;
}

Potential perturb(const Potential& h, double eps, int n, int j) {
  const Poly pj = gegenbauer_poly(n, j);
  std::map<std::string, double> params = h.params();
  params["eps"] = eps;
  params["j"] = j;
  auto fn = [h, pj, eps](double t, int order) { return h.derivative(t, order) - eps * pj.derivative_at(t, order); };
  return Potential(h.name() + "-perturbed", std::move(params), fn, h.max_order());
}

namespace {

double parse_number(std::string_view text, std::string_view spec) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last || text.empty())
    throw InputError("invalid number '" + std::string(text) + "' in potential spec '" + std::string(spec) + "'");
  return v;
}

double keyed_value(std::string_view args, std::string_view key, std::string_view spec) {
  const auto eq = args.find('=');
  if (eq == std::string_view::npos || args.substr(0, eq) != key)
    throw InputError("potential spec '" + std::string(spec) + "' expects " + std::string(key) + "=<value>");
  return parse_number(args.substr(eq + 1), spec);
}

}  // namespace

Potential parse_potential(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view family = spec.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  try {
    if (family == "riesz") return make_riesz(keyed_value(args, "s", spec));
    if (family == "gauss") return make_gauss(keyed_value(args, "c", spec));
    if (family == "log") {
      if (!args.empty()) throw InputError("log potential takes no parameters");
      return make_log();
    }
    if (family == "poly") {
      std::vector<double> coeffs;
      std::size_t start = 0;
      while (start <= args.size()) {
        const auto comma = args.find(',', start);
        const auto piece = args.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        coeffs.push_back(parse_number(piece, spec));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      return make_poly(Poly(std::move(coeffs)));
    }
  } catch (const RangeError& e) {
    throw InputError(e.what());
  }
  throw InputError("unknown potential '" + std::string(spec) + "' (expected riesz:s=..., log, gauss:c=..., poly:c0,c1,...)");
}

MonotoneReport check_abs_monotone(const Potential& h, int max_order, int grid_size) {
  if (grid_size < 2) grid_size = 2;
  MonotoneReport rep;
  const double hi = 1.0 - 1e-6;
  for (int m = 0; m <= max_order; ++m) {
    double best = std::numeric_limits<double>::infinity();
    double where = -1.0;
    for (int i = 0; i < grid_size; ++i) {
      const double t = -1.0 + (hi + 1.0) * i / (grid_size - 1);
      const double v = h.derivative(t, m);
      if (v < best) {
        best = v;
        where = t;
      }
    }
    rep.min_per_order.push_back(best);
    rep.argmin_per_order.push_back(where);
    if (best < 0.0 && rep.first_failing_order < 0) rep.first_failing_order = m;
  }
  return rep;
}

}  // namespace deb
