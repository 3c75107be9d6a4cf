#include "maxentloss/mem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "maxentloss/errors.hpp"

namespace maxent {

namespace {

void check_eta(double eta) {
    if (!(eta > 0.0) || !std::isfinite(eta)) {
        throw InputError("mem: eta must be positive and finite");
    }
}

// One dual evaluation over the K nonzero design rows: log z (shifted
// against overflow), tilted cell masses, expectations and optionally their
// covariance.  `a` points at rows 1..K of the design matrix.
struct TiltedCells {
    const DesignMatrix* design;
    std::size_t K, M;

    explicit TiltedCells(const DesignMatrix& d) : design(&d), K(d.grid.K()), M(d.M) {}

    double row(std::size_t k, std::size_t j) const { return design->at(k + 1, j); }

    double eval(const std::vector<double>& lambda, std::vector<double>& cell_mass,
                std::vector<double>& expect, std::vector<double>* cov) const {
        std::vector<double> v(M, 0.0);
        for (std::size_t k = 0; k < K; ++k) {
            const double lk = lambda[k];
            if (lk == 0.0) continue;
            for (std::size_t j = 0; j < M; ++j) v[j] += lk * row(k, j);
        }
        const double shift = *std::min_element(v.begin(), v.end());
        cell_mass.resize(M);
        NeumaierSum z;
        for (std::size_t j = 0; j < M; ++j) {
            cell_mass[j] = std::exp(-(v[j] - shift));
            z.add(cell_mass[j]);
        }
        const double z_shifted = z.value();
        for (std::size_t j = 0; j < M; ++j) cell_mass[j] /= z_shifted;
        expect.assign(K, 0.0);
        for (std::size_t k = 0; k < K; ++k) {
            NeumaierSum num;
            for (std::size_t j = 0; j < M; ++j) num.add(cell_mass[j] * row(k, j));
            expect[k] = num.value();
        }
        if (cov) {
            cov->assign(K * K, 0.0);
            for (std::size_t k = 0; k < K; ++k) {
                for (std::size_t m = k; m < K; ++m) {
                    NeumaierSum num;
                    for (std::size_t j = 0; j < M; ++j) {
                        num.add(cell_mass[j] * row(k, j) * row(m, j));
                    }
                    const double c = num.value() - expect[k] * expect[m];
                    (*cov)[k * K + m] = c;
                    (*cov)[m * K + k] = c;
                }
            }
        }
        return std::log(z_shifted) - shift;  // log z(lambda)
    }
};

}  // namespace

double DesignMatrix::midpoint(std::size_t j) const {
    return (2.0 * static_cast<double>(j) + 1.0) / (2.0 * static_cast<double>(M));
}

DesignMatrix build_design_matrix(std::size_t M, const AlphaGrid& grid) {
    if (M < 2) throw InputError("build_design_matrix: M must be >= 2");
    DesignMatrix out{M, grid, {}};
    out.a.resize(grid.size() * M);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = 0; j < M; ++j) {
            out.a[i * M + j] = (i == 0) ? 1.0 : std::pow(out.midpoint(j), grid[i]);
        }
    }
    return out;
}

double mem_dual(std::span<const double> lambda, const FractionalMoments& moments,
                const DesignMatrix& design, double eta) {
    check_eta(eta);
    const std::size_t K = moments.grid.K();
    if (lambda.size() != K) throw InputError("mem_dual: lambda must have K entries");
    for (double l : lambda) {
        if (!std::isfinite(l)) throw InputError("mem_dual: lambda must be finite");
    }
    TiltedCells cells(design);
    std::vector<double> lam(lambda.begin(), lambda.end());
    std::vector<double> mass, expect;
    double value = cells.eval(lam, mass, expect, nullptr);
    value -= std::log(static_cast<double>(design.M));
    for (std::size_t k = 0; k < K; ++k) value += lambda[k] * moments.mu[k + 1];
    return value;
}

std::vector<double> mem_dual_gradient(std::span<const double> lambda,
                                      const FractionalMoments& moments,
                                      const DesignMatrix& design, double eta) {
    check_eta(eta);
    const std::size_t K = moments.grid.K();
    if (lambda.size() != K) {
        throw InputError("mem_dual_gradient: lambda must have K entries");
    }
    TiltedCells cells(design);
    std::vector<double> lam(lambda.begin(), lambda.end());
    std::vector<double> mass, expect;
    cells.eval(lam, mass, expect, nullptr);
    std::vector<double> grad(K);
    for (std::size_t k = 0; k < K; ++k) grad[k] = moments.mu[k + 1] - expect[k];
    return grad;
}

MemSolution fit_mem(const FractionalMoments& moments, const MemOptions& opts) {
    check_eta(opts.eta);
    const std::size_t K = moments.grid.K();
    if (moments.mu.size() != K + 1 || moments.mu[0] != 1.0) {
        throw InputError("fit_mem: moments must carry mu_0 = 1 plus K entries");
    }
    DesignMatrix design = build_design_matrix(opts.M, moments.grid);
    TiltedCells cells(design);
    const double log_m = std::log(static_cast<double>(opts.M));

    std::vector<double> mass;
    DualFunction dual = [&](const std::vector<double>& lam, std::vector<double>& grad,
                            std::vector<double>* hessian) {
        std::vector<double> expect;
        const double log_z = cells.eval(lam, mass, expect, hessian);
        grad.resize(K);
        double value = log_z - log_m;
        for (std::size_t k = 0; k < K; ++k) {
            grad[k] = moments.mu[k + 1] - expect[k];
            value += lam[k] * moments.mu[k + 1];
        }
        return value;
    };

    // Reporting mode: the residual check below decides failure, and its
    // exception carries the renormalized masses' constraint residuals rather
    // than the bare dual gradient.
    SolverOptions inner = opts.solver;
    inner.throw_on_failure = false;
    MinimizeResult sol = minimize_dual(dual, static_cast<int>(K), inner);

    // Final cell masses at the solution, renormalized to sum exactly 1.
    {
        std::vector<double> expect;
        cells.eval(sol.x, mass, expect, nullptr);
    }
    NeumaierSum total;
    for (double m : mass) total.add(m);
    for (double& m : mass) m /= total.value();

    MemSolution fit{std::move(design), opts.eta, sol.x, std::move(mass), {},
                    sol.iterations, 0.0};
    for (double g : sol.gradient) fit.grad_norm = std::max(fit.grad_norm, std::abs(g));

    // Independent residual check over all K + 1 design rows.
    fit.residuals.resize(K + 1);
    double max_excess = 0.0, max_residual = 0.0;
    for (std::size_t i = 0; i <= K; ++i) {
        NeumaierSum sum;
        for (std::size_t j = 0; j < fit.design.M; ++j) {
            sum.add(fit.design.at(i, j) * fit.x[j]);
        }
        fit.residuals[i] = sum.value() - moments.mu[i];
        max_residual = std::max(max_residual, std::abs(fit.residuals[i]));
        // A tikhonov-penalized stationary point misses row i by
        // tikhonov[i-1] * |lambda_i| by construction; allow that slack.
        double allowed = opts.solver.moment_tol;
        if (i > 0 && !opts.solver.tikhonov.empty()) {
            allowed += opts.solver.tikhonov[i - 1] * std::abs(fit.lambda[i - 1]);
        }
        max_excess = std::max(max_excess, std::abs(fit.residuals[i]) - allowed);
    }

    // As in fit_sme, the renormalized constraint residuals decide failure.
    if (max_excess > 0.0 && opts.solver.throw_on_failure) {
        throw ConvergenceError(
            "fit_mem: no convergence after " + std::to_string(sol.iterations) +
                " iterations (gradient " + std::to_string(fit.grad_norm) +
                ", worst constraint residual " + std::to_string(max_residual) + ")",
            sol.x, fit.residuals, sol.iterations);
    }
    return fit;
}

MidpointInterpolant::MidpointInterpolant(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
    const std::size_t n = xs_.size();
    if (n < 2 || ys_.size() != n) {
        throw InputError("MidpointInterpolant: need two or more matching nodes");
    }
    if (!std::is_sorted(xs_.begin(), xs_.end())) {
        throw InputError("MidpointInterpolant: nodes must be ascending");
    }
    // Fritsch-Carlson monotone slopes: interpolation never overshoots the
    // data, so nonnegative masses yield a nonnegative density.
    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = xs_[i + 1] - xs_[i];
        delta[i] = (ys_[i + 1] - ys_[i]) / h[i];
    }
    d_.assign(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            d_[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    auto edge = [&](double h0, double h1, double d0, double d1) {
        double slope = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (slope * d0 <= 0.0) {
            slope = 0.0;
        } else if (d0 * d1 < 0.0 && std::abs(slope) > 3.0 * std::abs(d0)) {
            slope = 3.0 * d0;
        }
        return slope;
    };
    if (n == 2) {
        d_[0] = d_[1] = delta[0];
    } else {
        d_[0] = edge(h[0], h[1], delta[0], delta[1]);
        d_[n - 1] = edge(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }
}

double MidpointInterpolant::operator()(double x) const {
    // Flat extension beyond the first/last node.
    if (x <= xs_.front()) return ys_.front();
    if (x >= xs_.back()) return ys_.back();
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
    const double h = xs_[i + 1] - xs_[i];
    const double t = (x - xs_[i]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    const double h10 = t3 - 2.0 * t2 + t;
    const double h01 = -2.0 * t3 + 3.0 * t2;
    const double h11 = t3 - t2;
    return h00 * ys_[i] + h10 * h * d_[i] + h01 * ys_[i + 1] + h11 * h * d_[i + 1];
}

DensityOnS interpolate_density(const MemSolution& fit) {
    const std::size_t M = fit.design.M;
    std::vector<double> xs(M), ys(M);
    for (std::size_t j = 0; j < M; ++j) {
        xs[j] = fit.design.midpoint(j);
        ys[j] = fit.density_at_midpoint(j);
    }
    MidpointInterpolant interp(std::move(xs), std::move(ys));
    // DensityOnS renormalizes by the quadrature mass, which completes the
    // "interpolate then renormalize" contract.
    return DensityOnS([interp](double y) { return interp(y); });
}

}  // namespace maxent
