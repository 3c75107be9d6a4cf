#pragma once

#include <vector>

#include "maxentloss/density.hpp"
#include "maxentloss/mem.hpp"
#include "maxentloss/moments.hpp"
#include "maxentloss/sme.hpp"

namespace maxent {

// Laplace-transform values of the aggregate loss implied by a fitted
// conditional density:  psi(alpha) = exp(-ell) + (1 - exp(-ell)) E[y^alpha].
std::vector<double> aggregate_laplace(const DensityOnS& fit, const AlphaGrid& grid,
                                      double ell);

// Invert the compound structure on the transform side:
//   phi(alpha) = 1 + log(psi(alpha)) / ell
// gives the fractional moments E[exp(-alpha X)] of a single loss X.  Values
// must land in (0, 1]; anything else means psi/ell are inconsistent.
std::vector<double> severity_moments(const std::vector<double>& psi, const AlphaGrid& grid,
                                     double ell);

// Package severity moments for the maxent solvers (mu_0 = 1 is prepended in
// the moment struct itself; `grid` supplies the exponents).
FractionalMoments severity_as_moments(const std::vector<double>& phi, const AlphaGrid& grid);

// Delta-method standard deviation of each phi entry when the transform was
// estimated from `sample_size` aggregate observations:
//   var phi(alpha) = (psi(2 alpha) - psi(alpha)^2) / (n ell^2 psi(alpha)^2),
// with psi evaluated under the fitted aggregate density.  Slot 0 (alpha = 0)
// is exactly 0.  This is the noise floor of everything a decompounder can
// see; fitting phi closer than this reproduces sampling error, not signal.
std::vector<double> severity_noise(const DensityOnS& aggregate_fit, const AlphaGrid& grid,
                                   double ell, std::size_t sample_size);

// Aggregate fit -> severity density in one call, reusing either solver.
//
// With sample_size = 0 the severity moments are treated as exact and the
// refit must reproduce them to moment_tol.  With sample_size > 0 the fit
// instead maximizes entropy subject to the moments only up to their sampling
// noise (a tikhonov penalty of sigma_k^2 on each multiplier, the dual form
// of Gaussian moment errors).  The distinction matters: phi derived from an
// empirical transform is typically *slightly outside* the moment cone of
// densities on [0,1], where the exact-constraint dual is unbounded below and
// chasing it drives the fit toward boundary spikes.
struct DecompoundResult {
    std::vector<double> psi;    // aggregate transform at the grid exponents
    std::vector<double> phi;    // severity moments at the grid exponents
    std::vector<double> sigma;  // noise scale of phi (empty when sample_size = 0)
    DensityOnS severity;        // reconstructed density of a single loss
};
DecompoundResult decompound_sme(const DensityOnS& aggregate_fit, const AlphaGrid& grid,
                                double ell, const SolverOptions& opts = {},
                                std::size_t sample_size = 0);
DecompoundResult decompound_mem(const DensityOnS& aggregate_fit, const AlphaGrid& grid,
                                double ell, const MemOptions& opts = {},
                                std::size_t sample_size = 0);

}  // namespace maxent
