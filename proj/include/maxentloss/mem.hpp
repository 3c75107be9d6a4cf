#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "maxentloss/density.hpp"
#include "maxentloss/moments.hpp"
#include "maxentloss/solver.hpp"

namespace maxent {

// Midpoint discretization of the constraint operator on [0, 1]:
//   a[i][j] = m_j^{alpha_i},  m_j = (2j - 1) / (2M),  j = 1..M,
// with the i = 0 row identically 1 (normalization).
struct DesignMatrix {
    std::size_t M = 0;
    AlphaGrid grid;
    std::vector<double> a;  // (K + 1) x M, row-major

    double at(std::size_t i, std::size_t j) const { return a[i * M + j]; }
    double midpoint(std::size_t j) const;  // m_j for j = 0..M-1
};

DesignMatrix build_design_matrix(std::size_t M, const AlphaGrid& grid);

// Maximum entropy in the mean with a Poisson(eta) reference measure on each
// cell weight.  The normalization multiplier is eliminated in closed form,
// leaving the reduced dual over the K nonzero rows:
//
//   d(lambda) = log( z(lambda) / M ) + sum_k lambda_k mu_k,
//   z(lambda) = sum_j exp( -sum_k lambda_k a[k][j] ),
//
// shifted so d(0) = 0.  The reference intensity cancels once the cell
// masses are renormalized, so eta only enters validation; it stays in the
// signature because it is part of the reference-measure contract.
double mem_dual(std::span<const double> lambda, const FractionalMoments& moments,
                const DesignMatrix& design, double eta = 2.0);
std::vector<double> mem_dual_gradient(std::span<const double> lambda,
                                      const FractionalMoments& moments,
                                      const DesignMatrix& design, double eta = 2.0);

// MEM solution: cell masses x_j >= 0 summing to 1; x_j * M approximates the
// density of Y at the midpoint m_j.
struct MemSolution {
    DesignMatrix design;
    double eta = 2.0;
    std::vector<double> lambda;     // K reduced multipliers
    std::vector<double> x;          // M cell masses, sum = 1
    std::vector<double> residuals;  // A x - mu over all K + 1 rows
    int iterations = 0;
    double grad_norm = 0.0;

    // Piecewise view: density value at midpoint j is x[j] * M.
    double density_at_midpoint(std::size_t j) const { return x[j] * static_cast<double>(design.M); }
};

struct MemOptions {
    std::size_t M = 200;
    double eta = 2.0;
    SolverOptions solver;
};

// Success means every design-row constraint holds to opts.solver.moment_tol
// after renormalization; otherwise throws ConvergenceError with the best
// iterate, unless opts.solver.throw_on_failure is false.
MemSolution fit_mem(const FractionalMoments& moments, const MemOptions& opts = {});

// Monotone cubic (PCHIP) interpolant through the midpoint density values,
// extended flat to y = 0 and y = 1.  Exposed separately so the node values
// can be checked before renormalization.
class MidpointInterpolant {
public:
    MidpointInterpolant(std::vector<double> xs, std::vector<double> ys);
    double operator()(double y) const;

private:
    std::vector<double> xs_, ys_, d_;  // nodes, values, node slopes
};

// Continuous density of S from the cell masses: interpolate x_j * M over the
// midpoints, renormalize to unit mass on [0, 1], and change variables.
DensityOnS interpolate_density(const MemSolution& fit);

}  // namespace maxent
