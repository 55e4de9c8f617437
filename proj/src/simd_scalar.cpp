#include <algorithm>
#include <cmath>
#include <limits>

#include "deb/simd.hpp"

namespace deb::simd {
namespace {

void horner_scalar(std::span<const double> coeffs, std::span<const double> ts, std::span<double> out) {
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double t = ts[i];
    double acc = 0.0;
    for (std::size_t j = coeffs.size(); j-- > 0;) acc = acc * t + coeffs[j];
    out[i] = acc;
  }
}

void gegenbauer_scalar(int n, int degree, std::span<const double> ts, std::span<double> out) {
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double t = ts[i];
    double prev = 1.0;
    double cur = t;
    if (degree == 0) {
      out[i] = 1.0;
      continue;
    }
    for (int k = 1; k < degree; ++k) {
      const double next = ((2.0 * k + n - 2) * t * cur - k * prev) / (k + n - 2.0);
      prev = cur;
      cur = next;
    }
    out[i] = cur;
  }
}

MinResult min_scaled_difference_scalar(std::span<const double> a, std::span<const double> b) {
  MinResult r{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = (a[i] - b[i]) / std::max(1.0, std::abs(a[i]));
    if (d < r.value) r = {d, i};
  }
  return r;
}

double dot_scalar(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::scalar, horner_scalar, gegenbauer_scalar,
                                 min_scaled_difference_scalar, dot_scalar};
  return table;
}

}  // namespace deb::simd
