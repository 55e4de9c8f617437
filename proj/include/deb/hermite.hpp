#pragma once

#include <functional>
#include <vector>

#include "deb/poly.hpp"
#include "deb/potentials.hpp"

namespace deb {

struct HermiteNode {
  double t = 0.0;
  int multiplicity = 1;  // 1: value only, 2: value and first derivative
};

struct HermiteScheme {
  std::vector<HermiteNode> nodes;

  int condition_count() const;
  int degree() const { return condition_count() - 1; }
};

/// Interpolant in Newton form over the repeated abscissae z_0, z_1, ...
class HermiteInterpolant {
 public:
  HermiteInterpolant(std::vector<double> abscissae, std::vector<double> coeffs);

  double operator()(double t) const;
  Poly to_poly() const;
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  const std::vector<double>& abscissae() const { return z_; }
  const std::vector<double>& newton_coeffs() const { return coeffs_; }

 private:
  std::vector<double> z_;
  std::vector<double> coeffs_;
};

using ValueAndDerivative = std::function<double(double t, int order)>;

/// Divided differences with repeated abscissae. Nodes must be distinct and
/// at least 1e-10 apart; multiplicities must be 1 or 2. Throws InputError.
HermiteInterpolant hermite_newton(const HermiteScheme& scheme, const ValueAndDerivative& f);

Poly interpolate(const HermiteScheme& scheme, const Potential& h);
Poly interpolate(const HermiteScheme& scheme, const ValueAndDerivative& f);

enum class Relation { below, above };

struct MarginReport {
  Relation relation = Relation::below;
  // min over the grid of (h - f)/max(1,|h|) for below, (f - h)/max(1,|h|) for above
  double min_margin = 0.0;
  double argmin = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double tol = 1e-9;
  bool passes = true;
};

inline constexpr int kDefaultGrid = 10001;
inline constexpr int kCertificateGrid = 20001;

/// Dense sampling of h - f on [lo, hi] plus local refinement around the
/// smallest sample. Passes when min_margin >= -tol.
MarginReport verify_one_sided(const Poly& f, const Potential& h, double lo, double hi, Relation relation,
                              int grid_size = kDefaultGrid, double tol = 1e-9);

}  // namespace deb
