#pragma once

#include <cstdint>
#include <string_view>

namespace maxent {

// Finalizer step of the splitmix64 generator.  Used both to expand a root
// seed into xoshiro state and to derive independent stream seeds.
std::uint64_t splitmix64_next(std::uint64_t& state);

// Deterministically derive a sub-seed from a root seed and a textual tag
// (plus an optional index), so that e.g. the observed sample, the test
// sample and every bootstrap replicate get decoupled streams.
std::uint64_t derive_seed(std::uint64_t root, std::string_view tag, std::uint64_t index = 0);

// xoshiro256++ generator (Blackman & Vigna).  Small, fast, and with 2^256-1
// period; state is seeded from splitmix64 so that any 64-bit seed is valid.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();

    // Uniform draw strictly inside (0, 1): (x >> 11 | 1) * 2^-53 keeps the
    // value away from 0 so that log/quantile transforms stay finite.
    double uniform01();

    // Uniform integer in [0, bound) by rejection (no modulo bias).
    std::uint64_t below(std::uint64_t bound);

private:
    std::uint64_t s_[4];
};

// Poisson draw by sequential inversion.  The CDF walk is chunked so one
// uniform covers up to `chunk` candidate counts before a refresh, which
// keeps the draw exact while bounding the uniforms consumed for large means.
long poisson_draw(Rng& rng, double mean);

// Standard normal draw via the inverse CDF (monotone in the uniform input).
double normal_draw(Rng& rng);

// exp(mu + sigma * Z) with Z standard normal.
double lognormal_draw(Rng& rng, double mu, double sigma);

}  // namespace maxent
