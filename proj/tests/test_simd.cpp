#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>
#include <string_view>
#include <vector>

#include "deb/orthopoly.hpp"
#include "deb/simd.hpp"

using namespace deb;

namespace {

std::vector<double> uniform(std::mt19937& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

}  // namespace

TEST_SUITE("simd") {
  TEST_CASE("environment override") {
    const char* env = std::getenv("DEB_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") {
      CHECK(simd::active_kernels().isa == simd::Isa::scalar);
    } else if (simd::avx2_kernels() != nullptr) {
      CHECK(simd::active_kernels().isa == simd::Isa::avx2);
    }
    CHECK(simd::isa_name(simd::Isa::scalar) == "scalar");
    CHECK(simd::isa_name(simd::Isa::avx2) == "avx2");
  }

  TEST_CASE("scalar kernels against direct formulas") {
    const auto& k = simd::scalar_kernels();
    const std::vector<double> ts{-1.0, -0.25, 0.0, 0.5, 1.0};
    std::vector<double> out(ts.size());
    k.gegenbauer(3, 2, ts, out);
    for (std::size_t i = 0; i < ts.size(); ++i) CHECK(out[i] == doctest::Approx((3 * ts[i] * ts[i] - 1) / 2));
    k.horner(std::vector<double>{1.0, 0.0, 1.0}, ts, out);
    for (std::size_t i = 0; i < ts.size(); ++i) CHECK(out[i] == doctest::Approx(1 + ts[i] * ts[i]));
    const auto m = k.min_scaled_difference(std::vector<double>{3.0, 0.5, 4.0}, std::vector<double>{1.0, 0.7, 3.0});
    CHECK(m.index == 1);
    CHECK(m.value == doctest::Approx(-0.2));
    CHECK(std::isinf(k.min_scaled_difference({}, {}).value));
  }

  TEST_CASE("AVX2 kernels match the scalar reference") {
    const simd::KernelTable* fast = simd::avx2_kernels();
    if (fast == nullptr) {
      MESSAGE("AVX2 kernels unavailable on this machine; equivalence not exercised");
      return;
    }
    const auto& ref = simd::scalar_kernels();
    std::mt19937 rng(1234);
    for (std::size_t len : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 31u, 64u, 67u, 1001u}) {
      const auto ts = uniform(rng, len, -1.0, 1.0);
      std::vector<double> a(len);
      std::vector<double> b(len);

      for (int deg : {0, 1, 2, 5, 12, 20}) {
        const auto coeffs = uniform(rng, deg + 1, -2.0, 2.0);
        ref.horner(coeffs, ts, a);
        fast->horner(coeffs, ts, b);
        double scale = 0.0;
        for (double c : coeffs) scale += std::abs(c);
        for (std::size_t i = 0; i < len; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-14 * std::max(1.0, scale));
      }

      for (int n : {2, 3, 5, 24}) {
        for (int deg : {0, 1, 2, 7, 30}) {
          ref.gegenbauer(n, deg, ts, a);
          fast->gegenbauer(n, deg, ts, b);
          for (std::size_t i = 0; i < len; ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-12);
        }
      }

      const auto x = uniform(rng, len, -5.0, 5.0);
      const auto y = uniform(rng, len, -5.0, 5.0);
      const auto r1 = ref.min_scaled_difference(x, y);
      const auto r2 = fast->min_scaled_difference(x, y);
      CHECK(r1.index == r2.index);
      CHECK(r1.value == r2.value);

      double mag = 0.0;
      for (std::size_t i = 0; i < len; ++i) mag += std::abs(x[i] * y[i]);
      CHECK(std::abs(ref.dot(x, y) - fast->dot(x, y)) <= 1e-14 * std::max(1.0, mag));
    }
  }

  TEST_CASE("ties resolve to the lowest index in every kernel") {
    std::vector<double> a(19, 2.0);
    std::vector<double> b(19, 1.0);
    b[6] = 3.0;
    b[13] = 3.0;
    CHECK(simd::scalar_kernels().min_scaled_difference(a, b).index == 6);
    if (const auto* fast = simd::avx2_kernels()) CHECK(fast->min_scaled_difference(a, b).index == 6);
  }

  TEST_CASE("dispatch agrees with the library recurrence") {
    std::vector<double> ts{-0.9, -0.1, 0.3, 0.8, 0.99};
    std::vector<double> out(ts.size());
    simd::gegenbauer(8, 11, ts, out);
    for (std::size_t i = 0; i < ts.size(); ++i) CHECK(out[i] == doctest::Approx(gegenbauer(8, 11, ts[i])).epsilon(1e-12));
  }
}
