#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "maxentloss/rng.hpp"

using namespace maxent;

TEST_CASE("streams are deterministic and decoupled") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    // Different stream ids diverge immediately.
    Rng c(42, 1);
    bool all_equal = true;
    Rng d(42);
    for (int i = 0; i < 16; ++i) all_equal = all_equal && (c.next_u64() == d.next_u64());
    CHECK_FALSE(all_equal);
}

TEST_CASE("derive_seed separates tags and indices") {
    std::uint64_t root = 20260814;
    CHECK(derive_seed(root, "observed") == derive_seed(root, "observed"));
    CHECK(derive_seed(root, "observed") != derive_seed(root, "test"));
    CHECK(derive_seed(root, "resample", 0) != derive_seed(root, "resample", 1));
    CHECK(derive_seed(root, "resample", 7) != derive_seed(root + 1, "resample", 7));
}

TEST_CASE("uniform01 stays strictly inside (0, 1)") {
    Rng rng(7);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 200000; ++i) {
        double u = rng.uniform01();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    // The range is actually exercised.
    CHECK(lo < 1e-4);
    CHECK(hi > 1.0 - 1e-4);
}

TEST_CASE("below is unbiased over a small range") {
    Rng rng(11);
    std::vector<int> counts(5, 0);
    const int n = 100000;
    for (int i = 0; i < n; ++i) ++counts[rng.below(5)];
    for (int k = 0; k < 5; ++k) {
        // 5 sigma around n/5 with sigma = sqrt(n * p (1-p)).
        double sigma = std::sqrt(n * 0.2 * 0.8);
        CHECK(std::abs(counts[k] - n / 5.0) < 5 * sigma);
    }
}

TEST_CASE("poisson_draw matches mean and variance, small and large mean") {
    for (double mean : {0.3, 3.0, 47.0, 120.0}) {
        Rng rng(123);
        const int n = 200000;
        double sum = 0.0, sumsq = 0.0;
        for (int i = 0; i < n; ++i) {
            long k = poisson_draw(rng, mean);
            CHECK(k >= 0);
            sum += static_cast<double>(k);
            sumsq += static_cast<double>(k) * static_cast<double>(k);
        }
        double mhat = sum / n;
        double vhat = sumsq / n - mhat * mhat;
        double se_mean = std::sqrt(mean / n);
        CHECK(std::abs(mhat - mean) < 5 * se_mean);
        // Poisson variance equals the mean; allow a 3% band at this n.
        CHECK(vhat == doctest::Approx(mean).epsilon(0.03));
    }
    Rng rng(5);
    CHECK(poisson_draw(rng, 0.0) == 0);
}

TEST_CASE("normal and lognormal draws have the right first two moments") {
    Rng rng(99);
    const int n = 200000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        double z = normal_draw(rng);
        sum += z;
        sumsq += z * z;
    }
    CHECK(std::abs(sum / n) <= 5.0 / std::sqrt(double(n)));
    CHECK(sumsq / n == doctest::Approx(1.0).epsilon(0.02));

    // E[exp(mu + sigma Z)] = exp(mu + sigma^2/2).
    double mu = 0.1, sigma = 0.25;
    Rng rng2(100);
    double lsum = 0.0;
    for (int i = 0; i < n; ++i) lsum += lognormal_draw(rng2, mu, sigma);
    CHECK(lsum / n == doctest::Approx(std::exp(mu + sigma * sigma / 2)).epsilon(0.01));
}
