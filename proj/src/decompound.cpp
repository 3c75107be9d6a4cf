#include "maxentloss/decompound.hpp"

#include <cmath>
#include <string>

#include "maxentloss/errors.hpp"

namespace maxent {

std::vector<double> aggregate_laplace(const DensityOnS& fit, const AlphaGrid& grid,
                                      double ell) {
    if (!(ell > 0.0) || !std::isfinite(ell)) {
        throw InputError("aggregate_laplace: ell must be positive and finite");
    }
    const double atom = std::exp(-ell);
    std::vector<double> psi(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        psi[i] = (i == 0) ? 1.0 : atom + (1.0 - atom) * fit.y_moment(grid[i]);
    }
    return psi;
}

std::vector<double> severity_moments(const std::vector<double>& psi, const AlphaGrid& grid,
                                     double ell) {
    if (!(ell > 0.0) || !std::isfinite(ell)) {
        throw InputError("severity_moments: ell must be positive and finite");
    }
    if (psi.size() != grid.size()) {
        throw InputError("severity_moments: psi must match the alpha grid");
    }
    std::vector<double> phi(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        if (!(psi[i] > 0.0) || psi[i] > 1.0 + 1e-12) {
            throw InputError("severity_moments: psi(alpha) outside (0,1] at alpha=" +
                             std::to_string(grid[i]));
        }
        phi[i] = 1.0 + std::log(psi[i]) / ell;
        if (i == 0) {
            phi[i] = 1.0;  // psi(0) = 1 by construction; pin the slot exactly
            continue;
        }
        if (!(phi[i] > 0.0) || phi[i] > 1.0) {
            // psi dipped to exp(-ell) or below: the transform carries no
            // usable severity signal at this exponent.
            throw InputError(
                "severity_moments: infeasible decompounding at alpha=" +
                std::to_string(grid[i]) + " (phi=" + std::to_string(phi[i]) + ")");
        }
    }
    // Moments of exp(-alpha X) must decrease in alpha; a violation beyond
    // rounding means the psi inputs were inconsistent.  The grid keeps its
    // caller-supplied order, so compare each consecutive pair by alpha.
    for (std::size_t i = 2; i < phi.size(); ++i) {
        const bool ascending = grid[i] > grid[i - 1];
        const double at_larger_alpha = ascending ? phi[i] : phi[i - 1];
        const double at_smaller_alpha = ascending ? phi[i - 1] : phi[i];
        if (at_larger_alpha > at_smaller_alpha + 1e-12) {
            throw InputError("severity_moments: phi is not decreasing at alpha=" +
                             std::to_string(grid[i]));
        }
    }
    return phi;
}

FractionalMoments severity_as_moments(const std::vector<double>& phi,
                                      const AlphaGrid& grid) {
    if (phi.size() != grid.size() || phi[0] != 1.0) {
        throw InputError("severity_as_moments: phi must carry phi(0) = 1 plus K entries");
    }
    FractionalMoments moments{grid, phi, phi, 0.0, 0};
    return moments;
}

std::vector<double> severity_noise(const DensityOnS& aggregate_fit, const AlphaGrid& grid,
                                   double ell, std::size_t sample_size) {
    if (sample_size == 0) {
        throw InputError("severity_noise: sample_size must be positive");
    }
    const std::vector<double> psi = aggregate_laplace(aggregate_fit, grid, ell);
    const double n = static_cast<double>(sample_size);
    std::vector<double> sigma(grid.size(), 0.0);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double atom = std::exp(-ell);
        const double psi2 = atom + (1.0 - atom) * aggregate_fit.y_moment(2.0 * grid[i]);
        const double var_psi = std::max(psi2 - psi[i] * psi[i], 0.0) / n;
        sigma[i] = std::sqrt(var_psi) / (ell * psi[i]);
    }
    return sigma;
}

namespace {

// Shared front half of both decompounders: transform inversion plus the
// noise-derived tikhonov weights (sigma_k^2) when a sample size is given.
std::vector<double> noise_weights(DecompoundResult& out, const DensityOnS& aggregate_fit,
                                  const AlphaGrid& grid, double ell,
                                  std::size_t sample_size) {
    out.psi = aggregate_laplace(aggregate_fit, grid, ell);
    out.phi = severity_moments(out.psi, grid, ell);
    std::vector<double> weights;
    if (sample_size > 0) {
        out.sigma = severity_noise(aggregate_fit, grid, ell, sample_size);
        weights.assign(out.sigma.begin() + 1, out.sigma.end());
        for (double& w : weights) w *= w;
    }
    return weights;
}

}  // namespace

DecompoundResult decompound_sme(const DensityOnS& aggregate_fit, const AlphaGrid& grid,
                                double ell, const SolverOptions& opts,
                                std::size_t sample_size) {
    DecompoundResult out;
    SolverOptions inner = opts;
    if (std::vector<double> w = noise_weights(out, aggregate_fit, grid, ell, sample_size);
        !w.empty()) {
        inner.tikhonov = std::move(w);
    }
    const SmeDensity fit = fit_sme(severity_as_moments(out.phi, grid), inner);
    out.severity = density_on_s(fit);
    return out;
}

DecompoundResult decompound_mem(const DensityOnS& aggregate_fit, const AlphaGrid& grid,
                                double ell, const MemOptions& opts,
                                std::size_t sample_size) {
    DecompoundResult out;
    MemOptions inner = opts;
    if (std::vector<double> w = noise_weights(out, aggregate_fit, grid, ell, sample_size);
        !w.empty()) {
        inner.solver.tikhonov = std::move(w);
    }
    const MemSolution fit = fit_mem(severity_as_moments(out.phi, grid), inner);
    out.severity = interpolate_density(fit);
    return out;
}

}  // namespace maxent
