#include "deb/poly.hpp"

#include <algorithm>

#include "deb/simd.hpp"

namespace deb {

Poly::Poly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<double> coeffs) : coeffs_(coeffs) { trim(); }

Poly Poly::constant(double c) { return Poly({c}); }

Poly Poly::monomial(int degree, double c) {
  std::vector<double> v(static_cast<std::size_t>(degree) + 1, 0.0);
  v.back() = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

int Poly::degree() const {
  return coeffs_.empty() ? 0 : static_cast<int>(coeffs_.size()) - 1;
}

double Poly::coeff(int i) const {
  return (i >= 0 && static_cast<std::size_t>(i) < coeffs_.size()) ? coeffs_[i] : 0.0;
}

double Poly::operator()(double t) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

void Poly::eval(std::span<const double> ts, std::span<double> out) const {
  simd::horner(coeffs_, ts, out);
}

Poly Poly::derivative(int order) const {
  if (order <= 0) return *this;
  if (static_cast<int>(coeffs_.size()) <= order) return {};
  std::vector<double> d(coeffs_.size() - order);
  for (std::size_t i = 0; i < d.size(); ++i) {
    double f = 1.0;
    for (int j = 0; j < order; ++j) f *= static_cast<double>(i + order - j);
    d[i] = coeffs_[i + order] * f;
  }
  return Poly(std::move(d));
}

double Poly::derivative_at(double t, int order) const { return derivative(order)(t); }

Poly& Poly::operator+=(const Poly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0.0);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Poly& other) {
  if (coeffs_.empty() || other.coeffs_.empty()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<double> r(coeffs_.size() + other.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * other.coeffs_[j];
  coeffs_ = std::move(r);
  trim();
  return *this;
}

Poly& Poly::operator*=(double c) {
  for (double& v : coeffs_) v *= c;
  trim();
  return *this;
}

Poly poly_from_roots(std::span<const Root> roots) {
  Poly p = Poly::constant(1.0);
  for (const Root& r : roots)
    for (int m = 0; m < r.multiplicity; ++m) p *= Poly({-r.value, 1.0});
  return p;
}

Poly poly_from_roots(std::initializer_list<Root> roots) {
  return poly_from_roots(std::span<const Root>(roots.begin(), roots.size()));
}

}  // namespace deb
