#pragma once

#include <cstddef>
#include <vector>

#include "maxentloss/model.hpp"

namespace maxent {

// Fractional exponents 0 = alpha_0 < alpha_1, ..., alpha_K used both for the
// moment constraints and for the decompounding step.  The working rule is
// alpha_i = scale / i, which crowds the exponents toward 0 where the Laplace
// transform of a positive variable carries most of its information.
class AlphaGrid {
public:
    // `alphas` must start with 0 and contain K further distinct positive
    // entries.  Kept in the given order.
    explicit AlphaGrid(std::vector<double> alphas);

    static AlphaGrid harmonic(std::size_t K, double scale = 1.5);

    std::size_t K() const { return alphas_.size() - 1; }  // nonzero exponents
    std::size_t size() const { return alphas_.size(); }   // K + 1
    double operator[](std::size_t i) const { return alphas_[i]; }
    const std::vector<double>& values() const { return alphas_; }

private:
    std::vector<double> alphas_;
};

// Empirical Laplace transform psi_hat(alpha) = (1/n) sum_j exp(-alpha s_j),
// evaluated over the full sample (zeros included).
double empirical_laplace(const LossSample& sample, double alpha);

// Moment data handed to the maxent solvers: mu_i = E[Y^alpha_i | S > 0]
// where Y = exp(-S).  The S = 0 atom of weight exp(-ell) is removed from
// the unconditional transform before fitting, and mu_0 = 1 carries the
// normalization constraint.
struct FractionalMoments {
    AlphaGrid grid;
    std::vector<double> mu;   // size K + 1, mu[0] == 1
    std::vector<double> psi;  // raw Laplace values psi_hat(alpha_i), for decompounding
    double ell = 0.0;         // frequency used for the atom correction
    std::size_t n = 0;        // sample size behind the estimates

    std::size_t K() const { return grid.K(); }
};

// Build conditional moments from a sample:
//   mu(alpha) = (psi_hat(alpha) - exp(-ell)) / (1 - exp(-ell)).
// Throws InputError if some mu_i falls outside (0, 1], which signals an
// ell inconsistent with the sample's zero fraction.
FractionalMoments conditional_moments(const LossSample& sample, const AlphaGrid& grid,
                                      double ell);

// Same, with ell estimated from the sample as -log(zero fraction).
FractionalMoments conditional_moments(const LossSample& sample, const AlphaGrid& grid);

}  // namespace maxent
