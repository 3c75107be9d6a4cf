#include <doctest.h>

#include <cmath>
#include <vector>

#include "maxentloss/errors.hpp"
#include "maxentloss/model.hpp"
#include "maxentloss/moments.hpp"

using namespace maxent;

TEST_CASE("harmonic alpha grid") {
    AlphaGrid grid = AlphaGrid::harmonic(8);
    REQUIRE(grid.size() == 9);
    CHECK(grid[0] == 0.0);
    CHECK(grid[1] == doctest::Approx(1.5));
    CHECK(grid[3] == doctest::Approx(0.5));
    CHECK(grid[8] == doctest::Approx(1.5 / 8.0));
    CHECK(grid.K() == 8);

    AlphaGrid coarse = AlphaGrid::harmonic(4, 2.0);
    CHECK(coarse[1] == doctest::Approx(2.0));
    CHECK(coarse[4] == doctest::Approx(0.5));
}

TEST_CASE("alpha grid validation") {
    CHECK_THROWS_AS(AlphaGrid({1.0, 2.0}), InputError);        // missing zero slot
    CHECK_THROWS_AS(AlphaGrid({0.0, 1.0, 1.0}), InputError);   // duplicate
    CHECK_THROWS_AS(AlphaGrid({0.0, -0.5}), InputError);       // negative
    CHECK_THROWS_AS(AlphaGrid({0.0}), InputError);             // no working exponents
    CHECK_NOTHROW(AlphaGrid({0.0, 0.5, 1.5, 1.0}));            // order preserved
    CHECK(AlphaGrid({0.0, 0.5, 1.5, 1.0})[2] == 1.5);
}

TEST_CASE("empirical laplace transform") {
    LossSample s(std::vector<double>{std::log(2.0)});
    CHECK(empirical_laplace(s, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(empirical_laplace(s, 0.0) == doctest::Approx(1.0));

    LossSample zeros(std::vector<double>{0.0, 0.0});
    CHECK(empirical_laplace(zeros, 3.7) == doctest::Approx(1.0));

    CHECK_THROWS_AS(empirical_laplace(LossSample{}, 1.0), InputError);
}

TEST_CASE("conditional moments implement the atom correction") {
    // Sample built so psi_hat is easy to control: half zeros, half at ln 2.
    LossSample s(std::vector<double>{0.0, std::log(2.0), 0.0, std::log(2.0)});
    AlphaGrid grid({0.0, 1.0});
    double ell = -std::log(0.5);  // atom exactly matches the zero fraction
    FractionalMoments m = conditional_moments(s, grid, ell);
    REQUIRE(m.mu.size() == 2);
    CHECK(m.mu[0] == 1.0);
    // psi = 0.5 + 0.5*0.5 = 0.75; mu = (0.75 - 0.5) / 0.5 = 0.5.
    CHECK(m.psi[1] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(m.mu[1] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(m.ell == ell);
    CHECK(m.n == 4);

    // Overload that infers ell from the zero fraction gives the same here.
    FractionalMoments m2 = conditional_moments(s, grid);
    CHECK(m2.mu[1] == doctest::Approx(m.mu[1]));

    // An ell whose atom exceeds psi_hat (e^-0.05 > 0.75) drives mu negative.
    CHECK_THROWS_WITH_AS(conditional_moments(s, grid, 0.05), doctest::Contains("alpha"),
                         InputError);
}

TEST_CASE("moment re-summation oracle on a simulated sample") {
    CompoundModel model{3.0, 0.0, 0.25};
    LossSample sample = simulate_compound(model, 8000, 20260814);
    AlphaGrid grid = AlphaGrid::harmonic(8);
    FractionalMoments m = conditional_moments(sample, grid, model.ell);

    double atom = std::exp(-3.0);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        // Brute-force re-summation of Eq-style conditional moments.
        double acc = 0.0;
        for (double v : sample.values()) acc += std::exp(-grid[i] * v);
        double psi = acc / static_cast<double>(sample.size());
        CHECK(m.psi[i] == doctest::Approx(psi).epsilon(1e-12));
        CHECK(m.mu[i] == doctest::Approx((psi - atom) / (1.0 - atom)).epsilon(1e-12));
    }

    SUBCASE("monotone in alpha") {
        // Rearranged ascending: mu must be nonincreasing in alpha.
        for (std::size_t i = 2; i < grid.size(); ++i) {
            if (grid[i] > grid[i - 1]) {
                CHECK(m.mu[i] <= m.mu[i - 1] + 1e-12);
            } else {
                CHECK(m.mu[i] >= m.mu[i - 1] - 1e-12);
            }
        }
    }

    SUBCASE("Hankel spot check where both alpha and 2 alpha are on the grid") {
        // E[y^{2a}] >= E[y^a]^2 (Cauchy-Schwarz); harmonic grid pairs
        // (alpha_{2i} , alpha_i) satisfy 2*alpha_{2i} = alpha_i.
        for (std::size_t i = 2; i < grid.size(); i += 2) {
            double det = m.mu[i / 2] - m.mu[i] * m.mu[i];
            CHECK(det >= -1e-9);
        }
    }

    SUBCASE("deterministic under fixed seed") {
        LossSample sample2 = simulate_compound(model, 8000, 20260814);
        FractionalMoments m2 = conditional_moments(sample2, grid, model.ell);
        for (std::size_t i = 0; i < m.mu.size(); ++i) CHECK(m.mu[i] == m2.mu[i]);
    }
}
