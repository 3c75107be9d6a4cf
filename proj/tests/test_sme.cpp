#include <doctest.h>

#include <cmath>
#include <vector>

#include "maxentloss/density.hpp"
#include "maxentloss/moments.hpp"
#include "maxentloss/quadrature.hpp"
#include "maxentloss/rng.hpp"
#include "maxentloss/sme.hpp"

using namespace maxent;

namespace {

// Moments synthesized from a density on [0,1] given its exact power moments.
FractionalMoments synthetic_moments(const AlphaGrid& grid,
                                    const std::function<double(double)>& moment_of_alpha) {
    std::vector<double> mu(grid.size()), psi(grid.size());
    mu[0] = psi[0] = 1.0;
    for (std::size_t i = 1; i < grid.size(); ++i) mu[i] = psi[i] = moment_of_alpha(grid[i]);
    return FractionalMoments{grid, mu, psi, 1.0, 0};
}

}  // namespace

TEST_CASE("partition function closed forms") {
    AlphaGrid g1({0.0, 1.0});
    std::vector<double> zero{0.0};
    CHECK(partition_function(zero, g1) == doctest::Approx(1.0).epsilon(1e-12));

    // int_0^1 e^{-y} dy = 1 - 1/e.
    std::vector<double> one{1.0};
    CHECK(partition_function(one, g1) ==
          doctest::Approx(0.6321205588285577).epsilon(1e-10));

    // int_0^1 e^{-sqrt(y)} dy = 2 - 4/e (frozen independent value); the
    // same integral is also cross-checked against a 10x-resolution rule.
    AlphaGrid ghalf({0.0, 0.5});
    CHECK(partition_function(one, ghalf) ==
          doctest::Approx(0.5284822353142307).epsilon(1e-10));
    double brute = 0.0;
    {
        CompositeRule fine({0.0, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 0.1, 0.5, 1.0}, 128);
        brute = fine.integrate([](double y) { return std::exp(-std::sqrt(y)); });
    }
    CHECK(partition_function(one, ghalf) == doctest::Approx(brute).epsilon(1e-12));

    CHECK(log_partition_function(one, g1) ==
          doctest::Approx(std::log(0.6321205588285577)).epsilon(1e-10));
}

TEST_CASE("dual objective and gradient closed forms at K=1") {
    AlphaGrid grid({0.0, 1.0});
    FractionalMoments m =
        synthetic_moments(grid, [](double) { return 0.5; });  // mu(1) = 0.5
    std::vector<double> lambda{1.0};

    // D = ln(1 - e^{-1}) + 0.5.
    CHECK(dual_objective(lambda, m) == doctest::Approx(0.0413248546129181).epsilon(1e-9));

    // g = 0.5 - (1 - 2 e^{-1})/(1 - e^{-1}).
    std::vector<double> g = dual_gradient(lambda, m);
    REQUIRE(g.size() == 1);
    CHECK(g[0] == doctest::Approx(0.0819767068693264).epsilon(1e-9));

    // D(0) = ln Z(0) + <0, mu> = 0.
    std::vector<double> zero{0.0};
    CHECK(dual_objective(zero, m) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("gradient vanishes at uniform-consistent moments") {
    AlphaGrid grid = AlphaGrid::harmonic(8);
    FractionalMoments m =
        synthetic_moments(grid, [](double a) { return 1.0 / (a + 1.0); });
    std::vector<double> zero(8, 0.0);
    for (double g : dual_gradient(zero, m)) CHECK(std::abs(g) <= 1e-10);
}

TEST_CASE("gradient matches central finite differences at 100 random points") {
    AlphaGrid grid = AlphaGrid::harmonic(8);
    FractionalMoments m =
        synthetic_moments(grid, [](double a) { return 1.0 / (a + 1.0); });
    Rng rng(20260814);
    const double h = 1e-5;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> lambda(8);
        for (double& v : lambda) v = 10.0 * rng.uniform01() - 5.0;  // |lambda|_inf <= 5
        std::vector<double> g = dual_gradient(lambda, m);
        for (int k = 0; k < 8; ++k) {
            std::vector<double> up = lambda, dn = lambda;
            up[k] += h;
            dn[k] -= h;
            double fd = (dual_objective(up, m) - dual_objective(dn, m)) / (2 * h);
            worst = std::max(worst, std::abs(fd - g[k]));
        }
    }
    CHECK(worst <= 1e-5);
}

TEST_CASE("dual is midpoint convex on 100 random pairs") {
    AlphaGrid grid = AlphaGrid::harmonic(8);
    FractionalMoments m =
        synthetic_moments(grid, [](double a) { return 1.0 / (a + 1.5); });
    Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> a(8), b(8), mid(8);
        for (int k = 0; k < 8; ++k) {
            a[k] = 8.0 * rng.uniform01() - 4.0;
            b[k] = 8.0 * rng.uniform01() - 4.0;
            mid[k] = 0.5 * (a[k] + b[k]);
        }
        double lhs = dual_objective(mid, m);
        double rhs = 0.5 * (dual_objective(a, m) + dual_objective(b, m));
        CHECK(lhs <= rhs + 1e-12);
    }
}

TEST_CASE("uniform-consistent moments recover lambda = 0") {
    AlphaGrid grid = AlphaGrid::harmonic(8);
    FractionalMoments m =
        synthetic_moments(grid, [](double a) { return 1.0 / (a + 1.0); });
    SmeDensity fit = fit_sme(m);
    for (std::size_t k = 1; k < fit.lambda.size(); ++k) CHECK(std::abs(fit.lambda[k]) <= 1e-4);
    CHECK(std::abs(fit.lambda[0]) <= 1e-4);  // log Z(~0) ~ 0
    for (double y : {0.05, 0.3, 0.8}) CHECK(fit.density_y(y) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("fitting moments of f_Y = 2y reconstructs it within L1 <= 0.05") {
    AlphaGrid grid = AlphaGrid::harmonic(8);
    // E[y^alpha] under 2y dy is 2/(alpha + 2).
    FractionalMoments m =
        synthetic_moments(grid, [](double a) { return 2.0 / (a + 2.0); });
    SmeDensity fit = fit_sme(m);

    // Moment reproduction at the solution.
    for (double r : fit.residuals) CHECK(std::abs(r) <= 1e-6);

    // L1 against the analytic target (many panels: |.| has kinks).
    CompositeRule fine = CompositeRule::uniform(0.0, 1.0, 200, 16);
    double l1 = fine.integrate([&](double y) { return std::abs(fit.density_y(y) - 2.0 * y); });
    CHECK(l1 <= 0.05);
}

TEST_CASE("scale coherence: moments from a strictly positive density reproduce") {
    AlphaGrid grid = AlphaGrid::harmonic(8);
    // f_Y(y) = 0.5 + y integrates to 1; E[y^a] = 0.5/(a+1) + 1/(a+2).
    FractionalMoments m = synthetic_moments(
        grid, [](double a) { return 0.5 / (a + 1.0) + 1.0 / (a + 2.0); });
    SmeDensity fit = fit_sme(m);
    const CompositeRule& rule = CompositeRule::unit_grid();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double rep = rule.integrate(
            [&](double y) { return std::pow(y, grid[i]) * fit.density_y(y); });
        CHECK(std::abs(rep - m.mu[i]) <= 1e-6);
    }
}

TEST_CASE("density_on_s wraps the fit as a distribution of S") {
    AlphaGrid grid = AlphaGrid::harmonic(8);
    FractionalMoments m =
        synthetic_moments(grid, [](double a) { return 1.0 / (a + 1.0); });
    SmeDensity fit = fit_sme(m);
    DensityOnS d = density_on_s(fit);

    // lambda ~ 0 -> f_S ~ unit exponential; total mass 1 within 1e-8.
    CHECK(d.total_mass() == doctest::Approx(1.0).epsilon(1e-8));
    for (double s : {0.2, 1.0, 3.0})
        CHECK(d.pdf(s) == doctest::Approx(std::exp(-s)).epsilon(1e-3));

    // Normalized integral over S equals 1 within 1e-8.
    double mass_s = integrate([&](double s) { return d.pdf(s); }, 0.0, d.upper_bound(1e-12),
                              64, 24);
    CHECK(mass_s == doctest::Approx(1.0).epsilon(1e-8));
}
