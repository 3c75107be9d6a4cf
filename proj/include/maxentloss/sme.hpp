#pragma once

#include <span>
#include <vector>

#include "maxentloss/density.hpp"
#include "maxentloss/moments.hpp"
#include "maxentloss/solver.hpp"

namespace maxent {

// Standard maximum entropy density for Y = exp(-S) on [0, 1]:
//
//   f_Y(y) = exp(-sum_{k=0}^{K} lambda_k y^{alpha_k})
//
// with lambda_0 = log Z(lambda_1..K) enforcing normalization.
struct SmeDensity {
    AlphaGrid grid;
    std::vector<double> lambda;     // size K + 1; lambda[0] = log Z
    std::vector<double> residuals;  // fitted-moment errors, size K + 1
    int iterations = 0;
    double grad_norm = 0.0;

    // f_Y(y); safe for y in [0, 1].
    double density_y(double y) const;
};

// Z(lambda) = int_0^1 exp(-sum_k lambda_k y^{alpha_k}) dy over the nonzero
// exponents (lambda has size K, matching grid indices 1..K).
double partition_function(std::span<const double> lambda, const AlphaGrid& grid);
double log_partition_function(std::span<const double> lambda, const AlphaGrid& grid);

// Dual objective D(lambda) = log Z(lambda) + sum_k lambda_k mu_k and its
// gradient g_k = mu_k - E_lambda[y^{alpha_k}].  Both take the K nonzero
// multipliers.
double dual_objective(std::span<const double> lambda, const FractionalMoments& moments);
std::vector<double> dual_gradient(std::span<const double> lambda,
                                  const FractionalMoments& moments);

// Fit the K multipliers by minimizing the dual (see solver.hpp for the
// iteration scheme), then attach lambda_0 = log Z.  Success means every
// reproduced moment (re-integrated independently of the solver) is within
// opts.moment_tol of its input; otherwise throws ConvergenceError carrying
// the best iterate, unless opts.throw_on_failure is false.
SmeDensity fit_sme(const FractionalMoments& moments, const SolverOptions& opts = {});

// Wrap the fitted density as a distribution of S.
DensityOnS density_on_s(const SmeDensity& fit);

}  // namespace maxent
