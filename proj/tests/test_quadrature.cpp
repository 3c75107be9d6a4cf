#include <doctest.h>

#include <cmath>
#include <vector>

#include "maxentloss/quadrature.hpp"

using namespace maxent;

TEST_CASE("Gauss-Legendre weights sum to 2 and nodes are symmetric") {
    for (int n : {4, 16, 24, 64}) {
        const GaussLegendre& gl = gauss_legendre(n);
        REQUIRE(gl.nodes.size() == static_cast<std::size_t>(n));
        double wsum = 0.0;
        for (double w : gl.weights) wsum += w;
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
        for (int i = 0; i < n; ++i)
            CHECK(gl.nodes[i] == doctest::Approx(-gl.nodes[n - 1 - i]).epsilon(1e-13));
    }
}

TEST_CASE("an n-point rule is exact on polynomials up to degree 2n-1") {
    const GaussLegendre& gl = gauss_legendre(8);
    // int_{-1}^{1} x^k dx = 0 (odd) or 2/(k+1) (even), exact through x^15.
    for (int k = 0; k <= 15; ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i)
            acc += gl.weights[i] * std::pow(gl.nodes[i], k);
        double exact = (k % 2 == 1) ? 0.0 : 2.0 / (k + 1);
        CHECK(acc == doctest::Approx(exact).epsilon(1e-13).scale(1.0));
    }
}

TEST_CASE("composite rule integrates smooth functions to near machine precision") {
    const CompositeRule& rule = CompositeRule::unit_grid();
    CHECK(rule.integrate([](double) { return 1.0; }) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rule.integrate([](double y) { return y; }) == doctest::Approx(0.5).epsilon(1e-14));
    // int_0^1 exp(-sqrt(y)) dy = 2 - 4/e.
    double target = 2.0 - 4.0 / std::exp(1.0);
    CHECK(rule.integrate([](double y) { return std::exp(-std::sqrt(y)); }) ==
          doctest::Approx(target).epsilon(5e-13));
    // Fractional powers with unbounded derivative at 0 (the graded panels
    // near 0 exist exactly for these).
    for (double a : {0.1875, 0.25, 0.375, 0.75, 1.5}) {
        CHECK(rule.integrate([a](double y) { return std::pow(y, a); }) ==
              doctest::Approx(1.0 / (a + 1.0)).epsilon(5e-12));
    }
}

TEST_CASE("prefix_integral agrees with direct integration at arbitrary cuts") {
    const CompositeRule& rule = CompositeRule::unit_grid();
    auto f = [](double y) { return std::exp(-2.0 * y); };
    std::vector<double> panels = rule.panel_integrals(f);
    // Inclusive prefix sums, one entry per panel (the cache contract).
    std::vector<double> prefix(panels.size(), 0.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
        acc += panels[i];
        prefix[i] = acc;
    }

    auto exact = [](double t) { return (1.0 - std::exp(-2.0 * t)) / 2.0; };
    for (double t : {1e-7, 3e-4, 0.01, 0.2, 0.5, 0.77, 0.999, 1.0}) {
        CHECK(rule.prefix_integral(f, prefix, t) == doctest::Approx(exact(t)).epsilon(1e-12));
    }
    CHECK(rule.prefix_integral(f, prefix, 0.0) == doctest::Approx(0.0));
    // Full prefix equals the plain integral.
    CHECK(rule.prefix_integral(f, prefix, 1.0) ==
          doctest::Approx(rule.integrate(f)).epsilon(1e-14));
}

TEST_CASE("uniform composite rule and convenience integrate") {
    CompositeRule rule = CompositeRule::uniform(0.0, 3.0, 6, 16);
    CHECK(rule.integrate([](double s) { return std::exp(-s); }) ==
          doctest::Approx(1.0 - std::exp(-3.0)).epsilon(1e-13));
    CHECK(integrate([](double s) { return s * s; }, 0.0, 2.0) ==
          doctest::Approx(8.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("Neumaier summation survives cancellation that breaks naive sums") {
    NeumaierSum acc;
    acc.add(1.0);
    acc.add(1e100);
    acc.add(1.0);
    acc.add(-1e100);
    CHECK(acc.value() == doctest::Approx(2.0));
}
