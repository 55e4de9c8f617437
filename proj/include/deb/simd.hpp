#pragma once

// Data-parallel inner loops used by certificate verification, Gegenbauer
// moment sums and energy evaluation. Every kernel has a scalar reference
// implementation; an AVX2+FMA variant is selected at runtime when the CPU
// supports it. Setting DEB_SIMD=scalar in the environment forces the
// reference path (read once, at first use).

#include <cstddef>
#include <span>
#include <string_view>

namespace deb::simd {

enum class Isa { scalar, avx2 };

struct MinResult {
  double value;
  std::size_t index;
};

struct KernelTable {
  Isa isa;
  // out[i] = sum_j coeffs[j] * ts[i]^j  (coeffs constant term first)
  void (*horner)(std::span<const double> coeffs, std::span<const double> ts, std::span<double> out);
  // out[i] = P_degree^{(n)}(ts[i]) by the three-term recurrence
  void (*gegenbauer)(int n, int degree, std::span<const double> ts, std::span<double> out);
  // min_i (a[i] - b[i]) / max(1, |a[i]|) and its index; empty input gives +inf
  MinResult (*min_scaled_difference)(std::span<const double> a, std::span<const double> b);
  double (*dot)(std::span<const double> a, std::span<const double> b);
};

const KernelTable& scalar_kernels();
// Null when the AVX2 kernels are not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();
const KernelTable& active_kernels();

std::string_view isa_name(Isa isa);

inline void horner(std::span<const double> coeffs, std::span<const double> ts, std::span<double> out) {
  active_kernels().horner(coeffs, ts, out);
}
inline void gegenbauer(int n, int degree, std::span<const double> ts, std::span<double> out) {
  active_kernels().gegenbauer(n, degree, ts, out);
}
inline MinResult min_scaled_difference(std::span<const double> a, std::span<const double> b) {
  return active_kernels().min_scaled_difference(a, b);
}
inline double dot(std::span<const double> a, std::span<const double> b) {
  return active_kernels().dot(a, b);
}

namespace detail {
const KernelTable& avx2_table();
}

}  // namespace deb::simd
