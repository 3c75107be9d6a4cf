#pragma once

#include <functional>
#include <vector>

namespace maxent {

// Knobs shared by both dual solvers.
struct SolverOptions {
    double grad_tol = 1e-8;     // infinity norm of the dual gradient
    double moment_tol = 1e-6;   // infinity norm of the moment residuals
    int max_iter = 5000;        // Barzilai-Borwein iteration budget
    int newton_iter = 60;       // polish budget after the BB phase
    bool throw_on_failure = true;
    // Optional quadratic penalty 1/2 sum_k tikhonov[k] x[k]^2 added to the
    // dual.  This is the dual form of fitting moments known only up to
    // Gaussian noise: with tikhonov[k] = var(moment k) the minimizer matches
    // each moment to within tikhonov[k] * |x[k]| instead of exactly
    // (stationarity gives residual_k = -tikhonov[k] * x[k]).  It also makes
    // the dual strongly convex, so slightly infeasible moment vectors -- for
    // which the exact dual is unbounded below -- keep a finite solution.
    // Empty means no penalty; otherwise the size must equal the problem
    // dimension.
    std::vector<double> tikhonov;
};

// Objective bundle for an unconstrained smooth convex problem.  `hessian`
// is row-major dim x dim and only filled when requested (the polish phase);
// first-order callers pass nullptr.
using DualFunction = std::function<double(const std::vector<double>& x,
                                          std::vector<double>& grad,
                                          std::vector<double>* hessian)>;

struct MinimizeResult {
    std::vector<double> x;
    std::vector<double> gradient;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Minimize a convex dual from x = 0:
//   1. Barzilai-Borwein (BB1) steps guarded by a nonmonotone (max over the
//      last 10 values) backtracking line search.  The raw BB step is reset
//      to 1e-3 whenever it is non-finite, non-positive or above 1e6.
//   2. A damped Newton polish: the BB phase stalls near machine noise on
//      these duals (the Hessians are Hankel-like with condition numbers
//      around 1e15), while a few regularized Newton steps push the gradient
//      the remaining three orders of magnitude.
// Throws ConvergenceError (carrying the best iterate) if the tolerance is
// still unmet afterwards, unless opts.throw_on_failure is false.
MinimizeResult minimize_dual(const DualFunction& f, int dim, const SolverOptions& opts);

// Solve (A + ridge I) x = b for a symmetric positive semidefinite A
// (row-major), escalating the ridge by 10x until the factorization succeeds.
// Small dense problems only (dim <= a few dozen).
std::vector<double> solve_spd(std::vector<double> a, std::vector<double> b, int dim,
                              double ridge);

}  // namespace maxent
