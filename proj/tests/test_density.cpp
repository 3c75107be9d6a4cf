#include <doctest.h>

#include <cmath>

#include "maxentloss/density.hpp"

using namespace maxent;

TEST_CASE("uniform f_Y maps to the unit exponential on S") {
    DensityOnS d([](double) { return 1.0; });
    REQUIRE(d.valid());
    CHECK(d.total_mass() == doctest::Approx(1.0).epsilon(1e-12));

    for (double s : {0.1, 0.5, 1.0, 2.5, 7.0}) {
        CHECK(d.pdf(s) == doctest::Approx(std::exp(-s)).epsilon(1e-12));
        CHECK(d.cdf(s) == doctest::Approx(1.0 - std::exp(-s)).epsilon(1e-12));
    }
    CHECK(d.pdf(0.0) == 0.0);
    CHECK(d.cdf(0.0) == 0.0);
    CHECK(d.cdf(-1.0) == 0.0);

    // E[exp(-alpha S)] = int y^alpha dy = 1/(alpha+1).
    CHECK(d.y_moment(1.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d.y_moment(0.5) == doctest::Approx(2.0 / 3.0).epsilon(1e-11));

    // Quantile inverts the CDF: F^{-1}(g) = -log(1-g).
    for (double g : {0.1, 0.5, 0.9, 0.99, 0.999}) {
        CHECK(d.quantile(g) == doctest::Approx(-std::log1p(-g)).epsilon(1e-8));
    }

    double ub = d.upper_bound(1e-10);
    CHECK(1.0 - d.cdf(ub) <= 1e-10);
}

TEST_CASE("unnormalized input densities are renormalized internally") {
    // f_Y = 2 (mass 2): every query must behave as if f_Y = 1.
    DensityOnS d([](double) { return 2.0; });
    CHECK(d.total_mass() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(d.cdf(1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    CHECK(d.pdf(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(d.y_moment(1.0) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("triangular f_Y = 2y has closed-form transforms") {
    DensityOnS d([](double y) { return 2.0 * y; });
    // F_Y(y) = y^2, so F_S(s) = 1 - e^{-2s}: S ~ Exp(2).
    for (double s : {0.2, 1.0, 3.0}) {
        CHECK(d.cdf(s) == doctest::Approx(1.0 - std::exp(-2.0 * s)).epsilon(1e-11));
        CHECK(d.pdf(s) == doctest::Approx(2.0 * std::exp(-2.0 * s)).epsilon(1e-11));
    }
    CHECK(d.y_moment(1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(d.quantile(0.5) == doctest::Approx(std::log(2.0) / 2.0).epsilon(1e-8));
}

TEST_CASE("cdf is monotone and pdf integrates back to the cdf") {
    DensityOnS d([](double y) { return 0.5 + y; });  // valid: integrates to 1
    double prev = 0.0;
    for (double s = 0.0; s <= 8.0; s += 0.05) {
        double c = d.cdf(s);
        CHECK(c >= prev - 1e-14);
        prev = c;
    }
    CHECK(prev <= 1.0 + 1e-12);

    // d/ds CDF = pdf (central difference check at a few points).
    for (double s : {0.3, 1.1, 2.7}) {
        double h = 1e-6;
        double fd = (d.cdf(s + h) - d.cdf(s - h)) / (2 * h);
        CHECK(fd == doctest::Approx(d.pdf(s)).epsilon(1e-6));
    }
}

TEST_CASE("default-constructed density is inert") {
    DensityOnS d;
    CHECK_FALSE(d.valid());
}
