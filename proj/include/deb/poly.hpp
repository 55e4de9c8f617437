#pragma once

#include <initializer_list>
#include <span>
#include <vector>

namespace deb {

struct Root {
  double value;
  int multiplicity = 1;
};

/// Real polynomial in the monomial basis, constant term first.
///
/// The zero polynomial is represented by an empty coefficient vector and has
/// degree 0 by convention. Trailing zero coefficients are trimmed on
/// construction so that degree() is the index of the last nonzero entry.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<double> coeffs);
  Poly(std::initializer_list<double> coeffs);

  static Poly constant(double c);
  static Poly monomial(int degree, double c = 1.0);

  int degree() const;
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const double> coeffs() const { return coeffs_; }
  double coeff(int i) const;

  double operator()(double t) const;
  void eval(std::span<const double> ts, std::span<double> out) const;

  Poly derivative(int order = 1) const;
  double derivative_at(double t, int order) const;

  Poly& operator+=(const Poly& other);
  Poly& operator-=(const Poly& other);
  Poly& operator*=(const Poly& other);
  Poly& operator*=(double c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend Poly operator*(Poly a, double c) { return a *= c; }
  friend Poly operator*(double c, Poly a) { return a *= c; }

 private:
  void trim();
  std::vector<double> coeffs_;
};

/// Monic polynomial prod (t - r)^m over the given roots.
Poly poly_from_roots(std::span<const Root> roots);
Poly poly_from_roots(std::initializer_list<Root> roots);

}  // namespace deb
