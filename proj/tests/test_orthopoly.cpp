#include <doctest.h>

#include <cmath>
#include <random>

#include "deb/errors.hpp"
#include "deb/orthopoly.hpp"
#include "deb/poly.hpp"
#include "oracles.hpp"

using doctest::Approx;
using namespace deb;

TEST_SUITE("orthopoly") {
  TEST_CASE("gegenbauer values") {
    CHECK(gegenbauer(5, 1, 0.3) == Approx(0.3).epsilon(1e-15));
    CHECK(gegenbauer(3, 7, 1.0) == Approx(1.0).epsilon(1e-15));
    // P_2^{(3)}(t) = (3t^2 - 1)/2
    CHECK(gegenbauer(3, 2, -1.0 / 3) == Approx(-1.0 / 3).epsilon(1e-14));
    CHECK_THROWS_AS(gegenbauer(1, 2, 0.0), RangeError);
  }

  TEST_CASE("gegenbauer matches the explicit Jacobi sum") {
    for (int n : {3, 4, 5, 8, 24}) {
      for (int i = 0; i <= 12; ++i) {
        for (double t : {-1.0, -0.73, -0.2, 0.0, 0.41, 0.9, 1.0}) {
          CHECK(gegenbauer(n, i, t) == Approx(oracle::gegenbauer(n, i, t)).epsilon(1e-10).scale(1.0));
        }
      }
    }
  }

  TEST_CASE("normalization at t = 1") {
    for (int n : {3, 4, 8, 24})
      for (int i = 0; i <= 30; ++i) CHECK(std::abs(gegenbauer(n, i, 1.0) - 1.0) <= 1e-12);
  }

  TEST_CASE("gegenbauer derivatives") {
    CHECK(gegenbauer_derivative(3, 2, 0.0, 1) == Approx(0.0));
    CHECK(gegenbauer_derivative(7, 1, 0.35, 1) == Approx(1.0));
    CHECK(gegenbauer_derivative(3, 2, 1.0, 2) == Approx(3.0));
    // against the monomial form
    for (int n : {3, 6}) {
      const Poly p = gegenbauer_poly(n, 9);
      for (int order = 0; order <= 4; ++order)
        for (double t : {-0.8, 0.1, 0.95})
          CHECK(gegenbauer_derivative(n, 9, t, order) == Approx(p.derivative_at(t, order)).epsilon(1e-9));
    }
  }

  TEST_CASE("jacobi values") {
    CHECK(jacobi(1, 0, 1, -1.0 / 3) == Approx(0.0).scale(1.0));
    CHECK(jacobi(1, 1, 1, 0.0) == Approx(0.0).scale(1.0));
    CHECK(jacobi(0, 0, 0, 0.7) == Approx(1.0));
    for (double a : {-0.5, 0.0, 1.0, 2.5})
      for (double b : {-0.5, 0.0, 1.5})
        for (int k = 0; k <= 8; ++k)
          for (double t : {-0.9, -0.3, 0.2, 0.77})
            CHECK(jacobi(a, b, k, t) == Approx(oracle::jacobi(a, b, k, t)).epsilon(1e-10).scale(1.0));
    CHECK_THROWS_AS(jacobi(-1.0, 0.0, 2, 0.1), RangeError);
    CHECK_THROWS_AS(jacobi(0.0, -1.5, 2, 0.1), RangeError);
  }

  TEST_CASE("jacobi zeros are roots of the explicit sum") {
    for (int k = 1; k <= 14; ++k) {
      const auto z = jacobi_zeros(1.5, 0.5, k);
      REQUIRE(z.size() == static_cast<std::size_t>(k));
      for (std::size_t i = 0; i < z.size(); ++i) {
        CHECK(std::abs(oracle::jacobi(1.5, 0.5, k, z[i])) <= 1e-9 * oracle::jacobi(1.5, 0.5, k, 1.0));
        if (i > 0) CHECK(z[i] > z[i - 1]);
      }
    }
  }

  TEST_CASE("adjacent largest zeros") {
    CHECK(adjacent_largest_zero(3, 1, 0, 1) == Approx(-1.0 / 3).epsilon(1e-14));
    CHECK(adjacent_largest_zero(3, 1, 1, 1) == Approx(0.0).scale(1.0));
    CHECK(adjacent_largest_zero(3, 1, 1, 0) == -1.0);
    for (int n : {3, 4, 8}) {
      for (int a : {0, 1}) {
        for (int b : {0, 1}) {
          double prev = -1.0;
          for (int k = 1; k <= 12; ++k) {
            const double z = adjacent_largest_zero(n, a, b, k);
            CHECK(z > prev);
            prev = z;
          }
        }
      }
    }
  }

  TEST_CASE("weight rule") {
    const WeightRule r32 = weight_rule(3, 2);
    CHECK(r32.integrate([](double t) { return t * t; }) == Approx(1.0 / 3).epsilon(1e-14));
    CHECK(weight_rule(5, 1).integrate([](double) { return 1.0; }) == Approx(1.0).epsilon(1e-15));
    CHECK(weight_rule(4, 3).integrate([](double t) { return std::pow(t, 4); }) == Approx(1.0 / 8).epsilon(1e-13));

    for (int n : {2, 3, 4, 7, 24}) {
      for (int m = 1; m <= 12; ++m) {
        const WeightRule r = weight_rule(n, m);
        double mass = 0.0;
        for (double w : r.weights) {
          CHECK(w > 0.0);
          mass += w;
        }
        CHECK(mass == Approx(1.0).epsilon(1e-12));
        for (int j = 0; j <= 2 * m - 1; ++j)
          CHECK(r.integrate([j](double t) { return std::pow(t, j); }) ==
                Approx(oracle::moment(n, j)).epsilon(1e-10).scale(1.0));
      }
    }
  }

  TEST_CASE("weight moments agree with the Beta-function oracle") {
    for (int n : {2, 3, 5, 10})
      for (int j = 0; j <= 12; ++j) CHECK(weight_moment(n, j) == Approx(oracle::moment(n, j)).epsilon(1e-13));
  }

  TEST_CASE("orthogonality under the weight rule") {
    for (int n : {3, 4, 8, 24}) {
      const WeightRule r = weight_rule(n, 16);
      for (int i = 0; i <= 15; ++i)
        for (int j = 0; j < i; ++j)
          CHECK(std::abs(r.integrate([&](double t) { return gegenbauer(n, i, t) * gegenbauer(n, j, t); })) <= 1e-10);
    }
  }

  TEST_CASE("gegenbauer expansion examples") {
    const GegExpansion e = gegenbauer_expand(3, Poly{0.0, 0.0, 1.0});
    REQUIRE(e.coeffs.size() == 3);
    CHECK(e.coeff(0) == Approx(1.0 / 3).epsilon(1e-14));
    CHECK(std::abs(e.coeff(1)) <= 1e-14);
    CHECK(e.coeff(2) == Approx(2.0 / 3).epsilon(1e-14));

    for (int n : {3, 6}) {
      const GegExpansion t = gegenbauer_expand(n, Poly{0.0, 1.0});
      CHECK(std::abs(t.f0()) <= 1e-15);
      CHECK(t.coeff(1) == Approx(1.0));
    }
    CHECK(gegenbauer_expand(3, Poly{1.0}).f0() == Approx(1.0));
    CHECK(gegenbauer_expand(3, Poly{}).f0() == 0.0);
  }

  TEST_CASE("f_0 is the weighted integral") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n : {3, 5, 12}) {
      std::vector<double> c(9);
      for (double& x : c) x = u(rng);
      CHECK(gegenbauer_expand(n, Poly(c)).f0() == Approx(oracle::integrate(n, c)).epsilon(1e-12).scale(1.0));
    }
  }

  TEST_CASE("expansion round trip on random polynomials") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> deg(0, 20);
    for (int trial = 0; trial < 40; ++trial) {
      const int n = 3 + trial % 6;
      std::vector<double> c(deg(rng) + 1);
      for (double& x : c) x = u(rng);
      const Poly p(c);
      const GegExpansion e = gegenbauer_expand(n, p);
      const Poly back = e.reconstruct();
      for (int i = 0; i <= 50; ++i) {
        const double t = -1.0 + i / 25.0;
        CHECK(std::abs(back(t) - p(t)) <= 1e-10);
        CHECK(std::abs(e(t) - p(t)) <= 1e-10);
      }
      const GegExpansion again = gegenbauer_expand(n, back);
      for (std::size_t i = 0; i < e.coeffs.size(); ++i) CHECK(std::abs(again.coeff(static_cast<int>(i)) - e.coeffs[i]) <= 1e-10);
    }
  }
}

TEST_SUITE("poly") {
  TEST_CASE("arithmetic and roots") {
    const Poly sq = poly_from_roots({{0.0, 2}});
    CHECK(sq.degree() == 2);
    CHECK(sq.coeff(2) == 1.0);
    CHECK(sq.coeff(1) == 0.0);
    CHECK(sq.coeff(0) == 0.0);

    const Poly p = poly_from_roots({{-1.0, 1}, {0.5, 1}});
    CHECK(p.coeff(0) == Approx(-0.5));
    CHECK(p.coeff(1) == Approx(0.5));
    CHECK(p.coeff(2) == Approx(1.0));

    CHECK(Poly({1.0, 0.0, 1.0})(2.0) == 5.0);
    const Poly q = poly_from_roots({{-1.0, 1}, {0.0, 2}});
    CHECK(q(0.7) == Approx(1.7 * 0.49));
    CHECK(Poly{}.degree() == 0);
    CHECK(Poly({0.0, 0.0}).is_zero());
    CHECK((Poly{1, 2} * Poly{1, -2})(3.0) == Approx(-35.0));
    CHECK((Poly{1, 2} - Poly{1, 2}).is_zero());
    CHECK(Poly({1, 2, 3}).derivative()(1.0) == Approx(8.0));
  }

  TEST_CASE("batched evaluation equals pointwise Horner") {
    const Poly p{0.3, -1.2, 0.0, 2.5, 0.7, -0.1};
    std::vector<double> ts(37);
    for (std::size_t i = 0; i < ts.size(); ++i) ts[i] = -1.0 + 2.0 * i / 36.0;
    std::vector<double> out(ts.size());
    p.eval(ts, out);
    for (std::size_t i = 0; i < ts.size(); ++i) CHECK(out[i] == Approx(p(ts[i])).epsilon(1e-14));
  }
}
