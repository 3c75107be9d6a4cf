#include "maxentloss/moments.hpp"

#include <cmath>
#include <set>
#include <string>

#include "maxentloss/errors.hpp"
#include "maxentloss/quadrature.hpp"

namespace maxent {

AlphaGrid::AlphaGrid(std::vector<double> alphas) : alphas_(std::move(alphas)) {
    if (alphas_.size() < 2) {
        throw InputError("AlphaGrid: need alpha_0 = 0 plus at least one exponent");
    }
    if (alphas_.front() != 0.0) {
        throw InputError("AlphaGrid: alpha_0 must be 0");
    }
    std::set<double> seen;
    for (double a : alphas_) {
        if (!(a >= 0.0) || !std::isfinite(a)) {
            throw InputError("AlphaGrid: exponents must be finite and nonnegative");
        }
        if (!seen.insert(a).second) {
            throw InputError("AlphaGrid: exponents must be pairwise distinct");
        }
    }
}

AlphaGrid AlphaGrid::harmonic(std::size_t K, double scale) {
    if (K < 1) throw InputError("AlphaGrid::harmonic: K must be >= 1");
    if (!(scale > 0.0)) throw InputError("AlphaGrid::harmonic: scale must be positive");
    std::vector<double> alphas(K + 1, 0.0);
    for (std::size_t i = 1; i <= K; ++i) {
        alphas[i] = scale / static_cast<double>(i);
    }
    return AlphaGrid(std::move(alphas));
}

double empirical_laplace(const LossSample& sample, double alpha) {
    if (sample.empty()) throw InputError("empirical_laplace: sample must be nonempty");
    if (!(alpha >= 0.0)) throw InputError("empirical_laplace: alpha must be >= 0");
    NeumaierSum sum;
    for (double s : sample.values()) {
        sum.add(std::exp(-alpha * s));
    }
    return sum.value() / static_cast<double>(sample.size());
}

FractionalMoments conditional_moments(const LossSample& sample, const AlphaGrid& grid,
                                      double ell) {
    if (!(ell > 0.0) || !std::isfinite(ell)) {
        throw InputError("conditional_moments: ell must be positive and finite");
    }
    const double atom = std::exp(-ell);
    FractionalMoments out{grid, {}, {}, ell, sample.size()};
    out.mu.reserve(grid.size());
    out.psi.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double psi = empirical_laplace(sample, grid[i]);
        out.psi.push_back(psi);
        if (i == 0) {
            out.mu.push_back(1.0);
            continue;
        }
        const double mu = (psi - atom) / (1.0 - atom);
        if (!(mu > 0.0) || mu > 1.0) {
            throw InputError(
                "conditional_moments: moment at alpha=" + std::to_string(grid[i]) +
                " is " + std::to_string(mu) +
                " after removing the atom; ell is inconsistent with the sample");
        }
        out.mu.push_back(mu);
    }
    return out;
}

FractionalMoments conditional_moments(const LossSample& sample, const AlphaGrid& grid) {
    const double zero_fraction = sample.zero_fraction();
    if (!(zero_fraction > 0.0)) {
        throw InputError(
            "conditional_moments: no zeros in sample, cannot infer ell; pass it explicitly");
    }
    return conditional_moments(sample, grid, -std::log(zero_fraction));
}

}  // namespace maxent
