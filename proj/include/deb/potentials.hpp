#pragma once

#include <functional>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "deb/poly.hpp"

namespace deb {

/// Potential function h on [-1, 1) with access to its derivatives.
///
/// Potentials are immutable values; copies share the derivative callable.
class Potential {
 public:
  using DerivativeFn = std::function<double(double t, int order)>;

  Potential(std::string name, std::map<std::string, double> params, DerivativeFn fn,
            int max_order = std::numeric_limits<int>::max());

  const std::string& name() const { return name_; }
  const std::map<std::string, double>& params() const { return params_; }
  int max_order() const { return max_order_; }

  double operator()(double t) const { return fn_(t, 0); }
  double eval(double t) const { return fn_(t, 0); }
  double derivative(double t, int order) const;

  /// Additive constant applied to the raw kernel (log potential only).
  double offset() const { return offset_; }
  /// make_poly: the polynomial takes negative values on [-1, 1).
  bool negative_somewhere() const { return negative_somewhere_; }

  /// Canonical spec string, e.g. "riesz:s=2".
  std::string spec() const;

 private:
  friend Potential make_log();
  friend Potential make_poly(const Poly& p);

  std::string name_;
  std::map<std::string, double> params_;
  DerivativeFn fn_;
  int max_order_;
  double offset_ = 0.0;
  bool negative_somewhere_ = false;
};

/// h(t) = (2(1 - t))^{-s/2}, the Riesz s-kernel in terms of the inner product.
Potential make_riesz(double s);

/// h(t) = -log(2(1 - t))/2 + log 2 = log(2/(1 - t))/2, so that h(-1) = 0.
Potential make_log();

/// h(t) = exp(c t).
Potential make_gauss(double c);

Potential make_poly(const Poly& p);

/// h - eps * P_j^{(n)}.
Potential perturb(const Potential& h, double eps, int n, int j);

/// Parses "riesz:s=3", "log", "gauss:c=1", "poly:1,0,2". Throws InputError.
Potential parse_potential(std::string_view spec);

struct MonotoneReport {
  std::vector<double> min_per_order;
  std::vector<double> argmin_per_order;
  int first_failing_order = -1;

  bool passes() const { return first_failing_order < 0; }
};

/// Samples h^{(m)}, m = 0..max_order, on a uniform grid of [-1, 1 - 1e-6].
/// A sampled check, not a proof.
MonotoneReport check_abs_monotone(const Potential& h, int max_order, int grid_size = 2001);

}  // namespace deb
