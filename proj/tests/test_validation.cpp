#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "maxentloss/density.hpp"
#include "maxentloss/errors.hpp"
#include "maxentloss/model.hpp"
#include "maxentloss/quadrature.hpp"
#include "maxentloss/rng.hpp"
#include "maxentloss/special.hpp"
#include "maxentloss/validation.hpp"

using namespace maxent;

namespace {

std::vector<double> shuffled(std::vector<double> v, std::uint64_t seed) {
    Rng rng(seed);
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
    return v;
}

// PIT at ECDF midpoints (2j-1)/(2n): the configuration that minimizes the
// EDF statistics for a given n.
std::vector<double> midpoint_pit(std::size_t n) {
    std::vector<double> p(n);
    for (std::size_t j = 0; j < n; ++j) p[j] = (2.0 * j + 1.0) / (2.0 * n);
    return p;
}

}  // namespace

TEST_CASE("histogram construction") {
    SUBCASE("equal width") {
        HistogramSpec h = HistogramSpec::equal_width(0.0, 2.0, 4);
        REQUIRE(h.bins() == 4);
        CHECK(h.edges.front() == 0.0);
        CHECK(h.edges.back() == 2.0);
        CHECK(h.edges[1] == doctest::Approx(0.5));
    }
    SUBCASE("Freedman-Diaconis stays within the clamp") {
        Rng rng(1);
        std::vector<double> v;
        for (int i = 0; i < 5000; ++i) v.push_back(-std::log(rng.uniform01()));
        std::sort(v.begin(), v.end());
        HistogramSpec h = HistogramSpec::freedman_diaconis(v);
        CHECK(h.bins() >= 10);
        CHECK(h.bins() <= 400);
        CHECK(h.edges.front() == doctest::Approx(v.front()));
        CHECK(h.edges.back() >= v.back());
    }
}

TEST_CASE("density distances vanish when the fit equals the histogram") {
    // Bin edges chosen so the y-images e^{-s} line up with the quadrature
    // breakpoints: the piecewise density is then integrated exactly.
    const double b0 = std::log(2.0), b1 = std::log(10.0), b2 = std::log(100.0);
    HistogramSpec spec;
    spec.edges = {b0, b1, b2};

    // Three observations in bin 1, one in bin 2.
    std::vector<double> values{0.8, 1.2, 2.0, 3.0};
    LossSample sample(values);
    double f1 = 3.0 / (4.0 * (b1 - b0));
    double f2 = 1.0 / (4.0 * (b2 - b1));

    // f_S(s) = f_n(s)  <=>  f_Y(y) = f_n(-ln y) / y.
    DensityOnS fit([=](double y) {
        double s = -std::log(y);
        if (s >= b0 && s < b1) return f1 / y;
        if (s >= b1 && s < b2) return f2 / y;
        return 0.0;
    });

    DensityDistances d = density_distances(fit, sample, spec);
    CHECK(d.l1 <= 1e-9);
    CHECK(d.l2 <= 1e-9);
}

TEST_CASE("density distances match a hand integral on a simple mismatch") {
    // Uniform-exponential fit against a single-bin histogram.
    DensityOnS fit([](double) { return 1.0; });  // f_S = e^{-s}
    std::vector<double> values{1.0, 1.0, 1.0, 1.0};
    LossSample sample(values);
    HistogramSpec spec;
    spec.edges = {0.5, 1.5};  // f_n = 1 on [0.5, 1.5]

    DensityDistances d = density_distances(fit, sample, spec);
    double inside = integrate([](double s) { return std::abs(std::exp(-s) - 1.0); }, 0.5,
                              1.5, 32, 16);
    double tail = std::exp(-1.5);  // fitted mass beyond the last edge
    // The fit also has e^{-0}-e^{-0.5} mass below the first bin, which the
    // L1 measure ignores by construction (head not in the formula).
    CHECK(d.l1 == doctest::Approx(inside + tail).epsilon(1e-6));
}

TEST_CASE("cdf distances") {
    DensityOnS fit([](double) { return 1.0; });
    SUBCASE("single point") {
        // F*(s) = 1 - e^{-s} = 0.3 at s = -ln(0.7); ECDF jumps to 1 there.
        LossSample s(std::vector<double>{-std::log(0.7)});
        CdfDistances d = cdf_distances(fit, s);
        CHECK(d.mae == doctest::Approx(0.7).epsilon(1e-9));
        CHECK(d.rmse == doctest::Approx(0.7).epsilon(1e-9));
        CHECK(d.max_abs == doctest::Approx(0.7).epsilon(1e-9));
    }
    SUBCASE("mae <= rmse <= max") {
        Rng rng(2);
        std::vector<double> v;
        for (int i = 0; i < 500; ++i) v.push_back(-std::log(rng.uniform01()));
        LossSample s(v);
        CdfDistances d = cdf_distances(fit, s);
        CHECK(d.mae <= d.rmse + 1e-15);
        CHECK(d.rmse <= d.max_abs + 1e-15);
        CHECK(d.max_abs <= 1.0);
    }
}

TEST_CASE("pit values") {
    DensityOnS fit([](double) { return 1.0; });  // F_S = 1 - e^{-s}
    SUBCASE("closed form at ln 2") {
        LossSample s(std::vector<double>{std::log(2.0)});
        std::vector<double> p = pit_values(fit, s);
        REQUIRE(p.size() == 1);
        CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-10));
    }
    SUBCASE("constant sample gives constant pit; zeros are dropped") {
        LossSample s(std::vector<double>{1.0, 0.0, 1.0, 1.0});
        std::vector<double> p = pit_values(fit, s);
        REQUIRE(p.size() == 3);
        CHECK(p[0] == p[1]);
        CHECK(p[1] == p[2]);
    }
}

TEST_CASE("KS statistic") {
    SUBCASE("single point at one half") {
        TestResult r = ks_test({0.5});
        CHECK(r.statistic == doctest::Approx(0.5).epsilon(1e-12));
        CHECK_FALSE(r.reject_95);
    }
    SUBCASE("midpoint pit attains the 1/(2 sqrt n) floor") {
        std::size_t n = 100;
        TestResult r = ks_test(midpoint_pit(n));
        CHECK(r.statistic == doctest::Approx(std::sqrt(double(n)) * 0.5 / n).epsilon(1e-10));
    }
    SUBCASE("permutation invariant and flags against both envelopes") {
        std::vector<double> pit;
        Rng rng(8);
        for (int i = 0; i < 400; ++i) pit.push_back(rng.uniform01());
        TestResult a = ks_test(pit);
        TestResult b = ks_test(shuffled(pit, 99));
        CHECK(a.statistic == doctest::Approx(b.statistic).epsilon(1e-15));
        CHECK(a.critical_95 == 1.36);
        CHECK(a.critical_99 == 1.63);
        CHECK(a.reject_95 == (a.statistic > 1.36));
        // A gross misfit is caught.
        std::vector<double> bad;
        for (int i = 0; i < 400; ++i) bad.push_back(0.25 * (i + 0.5) / 400);
        CHECK(ks_test(bad).reject_99);
    }
}

TEST_CASE("AD and CvM statistics agree with their defining integrals") {
    // W^2 = n int (F_n(u) - u)^2 du ; A^2 adds the 1/(u(1-u)) weight.  Both
    // integrals evaluate piecewise (F_n is constant between order stats).
    std::vector<double> pit{0.03, 0.11, 0.24, 0.38, 0.41, 0.49, 0.58, 0.66,
                            0.71, 0.79, 0.84, 0.9,  0.93, 0.97, 0.983, 0.991};
    std::size_t n = pit.size();

    std::vector<double> cuts = pit;
    cuts.insert(cuts.begin(), 0.0);
    cuts.push_back(1.0);
    double w2 = 0.0, a2 = 0.0;
    for (std::size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
        double fn = double(seg) / n;
        w2 += integrate([fn](double u) { return (fn - u) * (fn - u); }, cuts[seg],
                        cuts[seg + 1], 4, 24);
        a2 += integrate(
            [fn](double u) { return (fn - u) * (fn - u) / std::max(u * (1 - u), 1e-300); },
            cuts[seg], cuts[seg + 1], 16, 24);
    }
    w2 *= n;
    a2 *= n;

    CHECK(cvm_test(pit).statistic == doctest::Approx(w2).epsilon(1e-8));
    CHECK(ad_test(pit).statistic == doctest::Approx(a2).epsilon(1e-4));

    SUBCASE("midpoint pit gives the closed-form CvM minimum 1/(12n)") {
        TestResult r = cvm_test(midpoint_pit(50));
        CHECK(r.statistic == doctest::Approx(1.0 / (12.0 * 50.0)).epsilon(1e-10));
    }
    SUBCASE("permutation invariance") {
        CHECK(ad_test(shuffled(pit, 5)).statistic ==
              doctest::Approx(ad_test(pit).statistic).epsilon(1e-15));
        CHECK(cvm_test(shuffled(pit, 5)).statistic ==
              doctest::Approx(cvm_test(pit).statistic).epsilon(1e-15));
    }
    SUBCASE("extreme pit values do not produce non-finite statistics") {
        std::vector<double> hard{0.0, 0.2, 0.5, 0.8, 1.0, 0.3, 0.6, 0.1};
        CHECK(std::isfinite(ad_test(hard).statistic));
        CHECK(std::isfinite(cvm_test(hard).statistic));
    }
}

TEST_CASE("Berkowitz LR3") {
    const std::size_t n = 1500;
    SUBCASE("calibrated data are accepted") {
        Rng rng(20260814);
        std::vector<double> pit(n);
        for (double& p : pit) p = normal_cdf(normal_draw(rng));
        TestResult r = berkowitz_test(pit);
        CHECK(r.critical_95 == 7.815);
        CHECK(r.critical_99 == 11.34);
        CHECK(r.statistic >= 0.0);
        CHECK_FALSE(r.reject_95);
    }
    SUBCASE("a unit mean shift is rejected") {
        Rng rng(1);
        std::vector<double> pit(n);
        for (double& p : pit) p = normal_cdf(normal_draw(rng) + 1.0);
        CHECK(berkowitz_test(pit).reject_99);
    }
    SUBCASE("strong autocorrelation is rejected") {
        Rng rng(2);
        std::vector<double> pit(n);
        double z = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            z = 0.8 * z + std::sqrt(1.0 - 0.64) * normal_draw(rng);
            pit[t] = normal_cdf(z);
        }
        CHECK(berkowitz_test(pit).reject_99);
    }
    SUBCASE("degenerate inputs") {
        CHECK_THROWS_AS(berkowitz_test(std::vector<double>(5, 0.5)), InputError);
        // Boundary pit values survive via clamping.
        std::vector<double> hard{0.0, 1.0, 0.5, 0.2, 0.9, 0.4, 0.6, 0.8, 0.3, 0.7};
        CHECK(std::isfinite(berkowitz_test(hard).statistic));
    }
}

TEST_CASE("Jarque-Bera and its robust variant") {
    SUBCASE("symmetric two-point sample has JB = n/6") {
        std::vector<double> z;
        for (int i = 0; i < 48; ++i) z.push_back(i % 2 == 0 ? 1.0 : -1.0);
        TestResult r = jarque_bera_test(z);
        // Skewness 0, kurtosis 1 -> JB = (n/6)(0 + (1-3)^2/4) = n/6.
        CHECK(r.statistic == doctest::Approx(48.0 / 6.0).epsilon(1e-12));
        CHECK(r.reject_95);       // 8 > 5.991
        CHECK_FALSE(r.reject_99);  // 8 < 9.210
    }
    SUBCASE("gaussian data are accepted, heavy tails are rejected") {
        Rng rng(3);
        std::vector<double> z(2000);
        for (double& v : z) v = normal_draw(rng);
        CHECK_FALSE(jarque_bera_test(z).reject_95);
        CHECK_FALSE(robust_jarque_bera_test(z).reject_95);

        // Cubing normal draws produces excess kurtosis both tests catch.
        std::vector<double> heavy = z;
        for (double& v : heavy) v = v * v * v;
        CHECK(jarque_bera_test(heavy).reject_99);
        CHECK(robust_jarque_bera_test(heavy).reject_99);
    }
    SUBCASE("permutation invariance") {
        Rng rng(4);
        std::vector<double> z(300);
        for (double& v : z) v = normal_draw(rng);
        CHECK(jarque_bera_test(shuffled(z, 1)).statistic ==
              doctest::Approx(jarque_bera_test(z).statistic).epsilon(1e-12));
        CHECK(robust_jarque_bera_test(shuffled(z, 1)).statistic ==
              doctest::Approx(robust_jarque_bera_test(z).statistic).epsilon(1e-12));
    }
}

TEST_CASE("pit correlograms") {
    SUBCASE("period-2 pattern has lag-2 autocorrelation exactly +1") {
        std::vector<double> pit;
        for (int i = 0; i < 200; ++i) pit.push_back(i % 2 == 0 ? 0.3 : 0.7);
        Correlogram c = pit_correlogram(pit, 1, 4);
        REQUIRE(c.r.size() == 4);
        CHECK(c.r[1] == doctest::Approx(1.0).epsilon(1e-12));  // lag 2
        CHECK(c.r[0] == doctest::Approx(-1.0).epsilon(0.02));  // lag 1 near -1
        CHECK_FALSE(c.degenerate);
        CHECK(c.band == doctest::Approx(1.96 / std::sqrt(200.0)));
    }
    SUBCASE("constant series is flagged degenerate") {
        Correlogram c = pit_correlogram(std::vector<double>(50, 0.4), 2, 5);
        CHECK(c.degenerate);
        for (double r : c.r) CHECK(r == 0.0);
        CHECK(c.exceedances() == 0);
    }
    SUBCASE("iid series stays mostly inside the band") {
        // >= 93% of lags inside the white-noise band, averaged over seeded
        // replications (each lag is outside with ~5% probability).
        for (int power : {1, 2, 3}) {
            std::size_t outside = 0;
            for (std::uint64_t rep = 0; rep < 10; ++rep) {
                Rng rng(derive_seed(6, "acf", rep));
                std::vector<double> pit(8000);
                for (double& p : pit) p = rng.uniform01();
                outside += pit_correlogram(pit, power, 20).exceedances();
            }
            CHECK(double(outside) <= 0.07 * 200);
        }
    }
}

TEST_CASE("reliability and marginal calibration diagrams") {
    DensityOnS fit([](double) { return 1.0; });
    // Sample placed at exact quantiles j/(n+1): both diagrams sit within
    // 1/n of their targets.
    const std::size_t n = 200;
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = -std::log1p(-double(j + 1) / (n + 1));
    LossSample sample(shuffled(v, 17));

    auto rel = reliability_points(fit, sample);
    REQUIRE(rel.size() == n);
    for (std::size_t j = 0; j < n; ++j) {
        CHECK(rel[j][0] == doctest::Approx(double(j + 1) / n).epsilon(1e-12));
        CHECK(std::abs(rel[j][1] - rel[j][0]) <= 1.0 / n + 1e-9);
    }

    auto cal = marginal_calibration_points(fit, sample);
    REQUIRE(cal.size() == n);
    std::vector<double> sorted = sample.sorted_positives();
    for (std::size_t j = 0; j < n; ++j) {
        CHECK(cal[j][0] == sorted[j]);
        CHECK(std::abs(cal[j][1]) <= 1.0 / n + 1e-9);
    }
}

TEST_CASE("evaluate_gof bundles a coherent report") {
    DensityOnS fit([](double) { return 1.0; });
    // Draw the test sample from the fitted law itself (exact inverse CDF)
    // with some zeros mixed in; everything should look calibrated.
    Rng rng(20260814);
    std::vector<double> v;
    for (int i = 0; i < 1500; ++i)
        v.push_back(i % 25 == 0 ? 0.0 : -std::log(rng.uniform01()));
    LossSample test(v);

    GofReport rep = evaluate_gof(fit, test);
    CHECK(rep.n_positive == test.size() - test.zero_count());
    CHECK(rep.cdf.mae <= 0.05);
    CHECK(rep.density.l1 <= 0.25);
    CHECK(rep.reliability.size() == rep.n_positive);
    CHECK(rep.calibration.size() == rep.n_positive);
    REQUIRE(rep.acf1.r.size() == 20);

    // Flags are pure functions of statistic vs critical value.
    for (const TestResult* t : {&rep.ks, &rep.ad, &rep.cvm, &rep.berkowitz, &rep.jb, &rep.rjb}) {
        CHECK(std::isfinite(t->statistic));
        CHECK(t->reject_95 == (t->statistic > t->critical_95));
        CHECK(t->reject_99 == (t->statistic > t->critical_99));
        CHECK(t->critical_99 > t->critical_95);
    }
}
