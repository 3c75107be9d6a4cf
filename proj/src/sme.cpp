#include "maxentloss/sme.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maxentloss/errors.hpp"

namespace maxent {

namespace {

void check_finite(std::span<const double> lambda) {
    for (double l : lambda) {
        if (!std::isfinite(l)) throw InputError("lambda must be finite");
    }
}

// Node powers y_i^{alpha_k} on the shared unit grid, row k = 1..K.
// Precomputed once per fit so a dual evaluation is a K x nodes sweep.
struct NodePowers {
    const CompositeRule* rule;
    std::size_t K;
    std::vector<double> pw;  // K x nodes, row-major

    explicit NodePowers(const AlphaGrid& grid)
        : rule(&CompositeRule::unit_grid()), K(grid.K()) {
        const auto& nodes = rule->nodes();
        pw.resize(K * nodes.size());
        for (std::size_t k = 0; k < K; ++k) {
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                pw[k * nodes.size() + i] = std::pow(nodes[i], grid[k + 1]);
            }
        }
    }

    // Shifted-exponent evaluation of log Z, the moment expectations and
    // (optionally) their covariance matrix under f_lambda.
    double eval(const std::vector<double>& lambda, std::vector<double>& expect,
                std::vector<double>* cov) const {
        const auto& nodes = rule->nodes();
        const auto& weights = rule->weights();
        const std::size_t nn = nodes.size();
        std::vector<double> u(nn, 0.0);
        for (std::size_t k = 0; k < K; ++k) {
            const double lk = lambda[k];
            if (lk == 0.0) continue;
            const double* row = &pw[k * nn];
            for (std::size_t i = 0; i < nn; ++i) u[i] += lk * row[i];
        }
        const double shift = *std::min_element(u.begin(), u.end());
        std::vector<double> w(nn);
        NeumaierSum z;
        for (std::size_t i = 0; i < nn; ++i) {
            w[i] = weights[i] * std::exp(-(u[i] - shift));
            z.add(w[i]);
        }
        const double z_shifted = z.value();
        expect.assign(K, 0.0);
        for (std::size_t k = 0; k < K; ++k) {
            const double* row = &pw[k * nn];
            NeumaierSum num;
            for (std::size_t i = 0; i < nn; ++i) num.add(w[i] * row[i]);
            expect[k] = num.value() / z_shifted;
        }
        if (cov) {
            cov->assign(K * K, 0.0);
            for (std::size_t k = 0; k < K; ++k) {
                const double* rk = &pw[k * nn];
                for (std::size_t m = k; m < K; ++m) {
                    const double* rm = &pw[m * nn];
                    NeumaierSum num;
                    for (std::size_t i = 0; i < nn; ++i) num.add(w[i] * rk[i] * rm[i]);
                    const double second = num.value() / z_shifted;
                    const double c = second - expect[k] * expect[m];
                    (*cov)[k * K + m] = c;
                    (*cov)[m * K + k] = c;
                }
            }
        }
        return std::log(z_shifted) - shift;  // log Z
    }
};

}  // namespace

double SmeDensity::density_y(double y) const {
    double u = lambda[0];
    for (std::size_t k = 1; k < lambda.size(); ++k) {
        u += lambda[k] * std::pow(y, grid[k]);
    }
    return std::exp(-u);
}

double log_partition_function(std::span<const double> lambda, const AlphaGrid& grid) {
    if (lambda.size() != grid.K()) {
        throw InputError("log_partition_function: lambda must have K entries");
    }
    check_finite(lambda);
    NodePowers powers(grid);
    std::vector<double> lam(lambda.begin(), lambda.end());
    std::vector<double> expect;
    return powers.eval(lam, expect, nullptr);
}

double partition_function(std::span<const double> lambda, const AlphaGrid& grid) {
    return std::exp(log_partition_function(lambda, grid));
}

double dual_objective(std::span<const double> lambda, const FractionalMoments& moments) {
    double value = log_partition_function(lambda, moments.grid);
    for (std::size_t k = 0; k < lambda.size(); ++k) {
        value += lambda[k] * moments.mu[k + 1];
    }
    return value;
}

std::vector<double> dual_gradient(std::span<const double> lambda,
                                  const FractionalMoments& moments) {
    const std::size_t K = moments.grid.K();
    if (lambda.size() != K) throw InputError("dual_gradient: lambda must have K entries");
    check_finite(lambda);
    NodePowers powers(moments.grid);
    std::vector<double> lam(lambda.begin(), lambda.end());
    std::vector<double> expect;
    powers.eval(lam, expect, nullptr);
    std::vector<double> grad(K);
    for (std::size_t k = 0; k < K; ++k) {
        grad[k] = moments.mu[k + 1] - expect[k];
    }
    return grad;
}

SmeDensity fit_sme(const FractionalMoments& moments, const SolverOptions& opts) {
    const std::size_t K = moments.grid.K();
    if (moments.mu.size() != K + 1 || moments.mu[0] != 1.0) {
        throw InputError("fit_sme: moments must carry mu_0 = 1 plus K entries");
    }
    NodePowers powers(moments.grid);

    DualFunction dual = [&](const std::vector<double>& lam, std::vector<double>& grad,
                            std::vector<double>* hessian) {
        std::vector<double> expect;
        const double log_z = powers.eval(lam, expect, hessian);
        grad.resize(K);
        double value = log_z;
        for (std::size_t k = 0; k < K; ++k) {
            grad[k] = moments.mu[k + 1] - expect[k];
            value += lam[k] * moments.mu[k + 1];
        }
        return value;
    };

    // The solver runs in reporting mode here: the authoritative failure check
    // below re-verifies the raw moments, so a best-effort iterate is wanted
    // even when the gradient tolerance is missed.
    SolverOptions inner = opts;
    inner.throw_on_failure = false;
    MinimizeResult sol = minimize_dual(dual, static_cast<int>(K), inner);

    SmeDensity fit{moments.grid, {}, {}, sol.iterations, 0.0};
    fit.lambda.resize(K + 1);
    {
        std::vector<double> expect;
        fit.lambda[0] = powers.eval(sol.x, expect, nullptr);  // log Z
    }
    std::copy(sol.x.begin(), sol.x.end(), fit.lambda.begin() + 1);
    fit.grad_norm = 0.0;
    for (double g : sol.gradient) fit.grad_norm = std::max(fit.grad_norm, std::abs(g));

    // Re-verify the moments independently of the solver's own bookkeeping:
    // raw integrals of y^{alpha_k} f_Y against the inputs (k = 0 checks
    // normalization against 1).
    const CompositeRule& rule = CompositeRule::unit_grid();
    fit.residuals.resize(K + 1);
    double max_excess = 0.0, max_residual = 0.0;
    for (std::size_t k = 0; k <= K; ++k) {
        const double alpha = moments.grid[k];
        const double reproduced = rule.integrate([&](double y) {
            return (k == 0 ? 1.0 : std::pow(y, alpha)) * fit.density_y(y);
        });
        fit.residuals[k] = reproduced - moments.mu[k];
        max_residual = std::max(max_residual, std::abs(fit.residuals[k]));
        // Under a tikhonov penalty the stationary point deliberately misses
        // moment k by tikhonov[k] * |lambda_k|, so that slack is allowed on
        // top of moment_tol.
        double allowed = opts.moment_tol;
        if (k > 0 && !opts.tikhonov.empty()) {
            allowed += opts.tikhonov[k - 1] * std::abs(fit.lambda[k]);
        }
        max_excess = std::max(max_excess, std::abs(fit.residuals[k]) - allowed);
    }

    // Failure is judged by the independent moment check, not the raw gradient:
    // near the Hessian's noise floor the gradient can stall a decade above
    // grad_tol while every moment is already reproduced to moment_tol.
    if (max_excess > 0.0 && opts.throw_on_failure) {
        throw ConvergenceError(
            "fit_sme: no convergence after " + std::to_string(sol.iterations) +
                " iterations (gradient " + std::to_string(fit.grad_norm) +
                ", worst moment residual " + std::to_string(max_residual) + ")",
            fit.lambda, fit.residuals, sol.iterations);
    }
    return fit;
}

DensityOnS density_on_s(const SmeDensity& fit) {
    return DensityOnS([fit](double y) { return fit.density_y(y); });
}

}  // namespace maxent
