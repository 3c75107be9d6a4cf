#include "maxentloss/rng.hpp"

#include <cmath>

#include "maxentloss/errors.hpp"
#include "maxentloss/special.hpp"

namespace maxent {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::string_view tag, std::uint64_t index) {
    // FNV-1a over the tag, then mix root and index in through the splitmix64
    // finalizer so that nearby (root, index) pairs map to unrelated seeds.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : tag) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    std::uint64_t mixed = splitmix64_mix(root ^ h);
    mixed = splitmix64_mix(mixed ^ (index + 0x632be59bd9b4e019ULL));
    return mixed;
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t sm = splitmix64_mix(seed ^ splitmix64_mix(stream));
    for (auto& word : s_) {
        word = splitmix64_next(sm);
    }
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform01() {
    // 53-bit mantissa shifted to the cell center: values lie in
    // [2^-54, 1 - 2^-54], never exactly 0 or 1.
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) throw InputError("Rng::below: bound must be positive");
    // Rejection sampling over the largest multiple of bound.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t draw;
    do {
        draw = next_u64();
    } while (draw >= limit);
    return draw % bound;
}

long poisson_draw(Rng& rng, double mean) {
    if (!(mean >= 0.0) || !std::isfinite(mean)) {
        throw InputError("poisson_draw: mean must be nonnegative and finite");
    }
    // CDF inversion, one uniform per draw.  Means above 40 are split into
    // independent Poisson chunks (additivity), so exp(-chunk) never
    // underflows and the walk per uniform stays short.
    long total = 0;
    double remaining = mean;
    do {
        const double chunk = std::min(remaining, 40.0);
        remaining -= chunk;
        const double u = rng.uniform01();
        double p = std::exp(-chunk);
        double cumulative = p;
        long k = 0;
        while (u > cumulative) {
            ++k;
            p *= chunk / static_cast<double>(k);
            cumulative += p;
            if (p < 1e-300) break;  // tail numerically exhausted
        }
        total += k;
    } while (remaining > 0.0);
    return total;
}

double normal_draw(Rng& rng) {
    return normal_quantile(rng.uniform01());
}

double lognormal_draw(Rng& rng, double mu, double sigma) {
    return std::exp(mu + sigma * normal_draw(rng));
}

}  // namespace maxent
