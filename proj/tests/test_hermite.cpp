#include <doctest.h>

#include <cmath>

#include "deb/errors.hpp"
#include "deb/hermite.hpp"
#include "deb/levenshtein.hpp"

using doctest::Approx;
using namespace deb;

TEST_SUITE("hermite") {
  TEST_CASE("defining conditions") {
    const Potential h = make_gauss(1.0);
    const Poly f = interpolate(HermiteScheme{{{-1.0, 1}, {0.0, 2}}}, h);
    CHECK(f.degree() == 2);
    CHECK(f(0.0) == Approx(1.0));
    CHECK(f.derivative_at(0.0, 1) == Approx(1.0));
    CHECK(f(-1.0) == Approx(std::exp(-1.0)));
  }

  TEST_CASE("single double node gives the tangent line") {
    const Potential h = make_riesz(2.0);
    const double a = -1.0 / 3;
    const Poly f = interpolate(HermiteScheme{{{a, 2}}}, h);
    CHECK(f(a) == Approx(0.375));
    for (double t : {-0.9, 0.2}) CHECK(f(t) == Approx(h(a) + h.derivative(a, 1) * (t - a)));
  }

  TEST_CASE("interpolation residuals at nodes") {
    const Potential hs[] = {make_riesz(1.0), make_riesz(4.0), make_gauss(2.0), make_log()};
    for (const auto& h : hs) {
      HermiteScheme s{{{-1.0, 1}, {-0.6, 2}, {-0.1, 2}, {0.35, 2}, {0.7, 1}}};
      const HermiteInterpolant newton = hermite_newton(s, [&](double t, int m) { return h.derivative(t, m); });
      const Poly f = newton.to_poly();
      CHECK(f.degree() <= s.degree());
      for (const auto& node : s.nodes) {
        const double scale = std::max(1.0, std::abs(h(node.t)));
        CHECK(std::abs(f(node.t) - h(node.t)) <= 1e-11 * scale);
        CHECK(std::abs(newton(node.t) - h(node.t)) <= 1e-11 * scale);
        if (node.multiplicity == 2)
          CHECK(std::abs(f.derivative_at(node.t, 1) - h.derivative(node.t, 1)) <= 1e-9 * scale);
      }
    }
  }

  TEST_CASE("bad schemes are rejected") {
    const Potential h = make_gauss(1.0);
    CHECK_THROWS_AS(interpolate(HermiteScheme{{{0.1, 1}, {0.1, 2}}}, h), InputError);
    CHECK_THROWS_AS(interpolate(HermiteScheme{{{0.1, 1}, {0.1 + 1e-12, 1}}}, h), InputError);
    CHECK_THROWS_AS(interpolate(HermiteScheme{{{0.1, 3}}}, h), InputError);
    CHECK_THROWS_AS(interpolate(HermiteScheme{}, h), InputError);
  }

  TEST_CASE("one-sided verification") {
    const Potential h = make_riesz(2.0);
    const QuadratureRule r = quadrature_rule(3, 3, 6.0);
    HermiteScheme s;
    for (double x : r.nodes) s.nodes.push_back({x, 2});
    const Poly F = interpolate(s, h);
    const MarginReport below = verify_one_sided(F, h, -1.0, 1.0 - 1e-6, Relation::below);
    CHECK(below.passes);
    CHECK(below.min_margin >= -1e-9);

    const Potential same = make_poly(Poly{0.5, 1.0, 0.25});
    const MarginReport zero = verify_one_sided(Poly{0.5, 1.0, 0.25}, same, -1.0, 1.0, Relation::below);
    CHECK(std::abs(zero.min_margin) <= 1e-15);

    const MarginReport bad = verify_one_sided(Poly{1.0}, h, -1.0, 0.0, Relation::below);
    CHECK_FALSE(bad.passes);
    CHECK(bad.argmin == Approx(-1.0));

    // chord over [l, u] lies above a convex potential
    const double l = -0.6;
    const double u = 0.2;
    const double slope = (h(u) - h(l)) / (u - l);
    const Poly chord{h(l) - slope * l, slope};
    CHECK(verify_one_sided(chord, h, l, u, Relation::above).passes);
    CHECK_FALSE(verify_one_sided(chord, h, l, u + 0.1, Relation::above).passes);
  }

  TEST_CASE("refinement locates the minimum between grid points") {
    const Potential h = make_poly(Poly{0.0});
    const double c = 0.1234567;
    const Poly f = Poly{-1e-6} + Poly{c * c, -2 * c, 1.0} * -1.0 + Poly{1e-10};
    const MarginReport r = verify_one_sided(f, h, -1.0, 1.0, Relation::below, 1001, 1e-9);
    CHECK(r.argmin == Approx(c).epsilon(1e-3));
  }
}
