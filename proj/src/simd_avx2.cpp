// Compiled with -mavx2 -mfma. Only reached through avx2_kernels(), which
// checks the CPU first.
#include <immintrin.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "deb/simd.hpp"

namespace deb::simd {
namespace {

void horner_avx2(std::span<const double> coeffs, std::span<const double> ts, std::span<double> out) {
  const std::size_t n = ts.size();
  const std::size_t m = coeffs.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d t = _mm256_loadu_pd(ts.data() + i);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t j = m; j-- > 0;) acc = _mm256_fmadd_pd(acc, t, _mm256_set1_pd(coeffs[j]));
    _mm256_storeu_pd(out.data() + i, acc);
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = m; j-- > 0;) acc = std::fma(acc, ts[i], coeffs[j]);
    out[i] = acc;
  }
}

void gegenbauer_avx2(int n, int degree, std::span<const double> ts, std::span<double> out) {
  const std::size_t count = ts.size();
  std::size_t i = 0;
  if (degree == 0) {
    std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(count), 1.0);
    return;
  }
  for (; i + 4 <= count; i += 4) {
    const __m256d t = _mm256_loadu_pd(ts.data() + i);
    __m256d prev = _mm256_set1_pd(1.0);
    __m256d cur = t;
    for (int k = 1; k < degree; ++k) {
      const __m256d a = _mm256_set1_pd(2.0 * k + n - 2);
      const __m256d b = _mm256_set1_pd(static_cast<double>(k));
      const __m256d inv = _mm256_set1_pd(1.0 / (k + n - 2.0));
      __m256d next = _mm256_mul_pd(_mm256_mul_pd(a, t), cur);
      next = _mm256_fnmadd_pd(b, prev, next);
      next = _mm256_mul_pd(next, inv);
      prev = cur;
      cur = next;
    }
    _mm256_storeu_pd(out.data() + i, cur);
  }
  for (; i < count; ++i) {
    const double t = ts[i];
    double prev = 1.0;
    double cur = t;
    for (int k = 1; k < degree; ++k) {
      const double next = ((2.0 * k + n - 2) * t * cur - k * prev) * (1.0 / (k + n - 2.0));
      prev = cur;
      cur = next;
    }
    out[i] = cur;
  }
}

MinResult min_scaled_difference_avx2(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  MinResult r{std::numeric_limits<double>::infinity(), 0};
  std::size_t i = 0;
  if (n >= 4) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    __m256d best_idx = _mm256_setzero_pd();
    __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
    const __m256d step = _mm256_set1_pd(4.0);
    for (; i + 4 <= n; i += 4) {
      const __m256d va = _mm256_loadu_pd(a.data() + i);
      const __m256d vb = _mm256_loadu_pd(b.data() + i);
      const __m256d scale = _mm256_max_pd(one, _mm256_and_pd(va, abs_mask));
      const __m256d d = _mm256_div_pd(_mm256_sub_pd(va, vb), scale);
      const __m256d lt = _mm256_cmp_pd(d, best, _CMP_LT_OQ);
      best = _mm256_blendv_pd(best, d, lt);
      best_idx = _mm256_blendv_pd(best_idx, idx, lt);
      idx = _mm256_add_pd(idx, step);
    }
    alignas(32) double bv[4];
    alignas(32) double bi[4];
    _mm256_store_pd(bv, best);
    _mm256_store_pd(bi, best_idx);
    // Lowest index wins ties so the result matches the scalar scan.
    for (int l = 0; l < 4; ++l) {
      const auto li = static_cast<std::size_t>(bi[l]);
      if (bv[l] < r.value || (bv[l] == r.value && li < r.index)) r = {bv[l], li};
    }
  }
  for (; i < n; ++i) {
    const double d = (a[i] - b[i]) / std::max(1.0, std::abs(a[i]));
    if (d < r.value) r = {d, i};
  }
  return r;
}

double dot_avx2(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i), acc);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

namespace detail {
const KernelTable& avx2_table() {
  static const KernelTable table{Isa::avx2, horner_avx2, gegenbauer_avx2, min_scaled_difference_avx2,
                                 dot_avx2};
  return table;
}
}  // namespace detail

}  // namespace deb::simd
