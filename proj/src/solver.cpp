#include "maxentloss/solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "maxentloss/errors.hpp"

namespace maxent {

namespace {

double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Plain Cholesky; returns false if a pivot is not strictly positive.
bool cholesky(std::vector<double>& a, int n) {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = a[static_cast<std::size_t>(i) * n + j];
            for (int k = 0; k < j; ++k) {
                sum -= a[static_cast<std::size_t>(i) * n + k] *
                       a[static_cast<std::size_t>(j) * n + k];
            }
            if (i == j) {
                if (!(sum > 0.0) || !std::isfinite(sum)) return false;
                a[static_cast<std::size_t>(i) * n + j] = std::sqrt(sum);
            } else {
                a[static_cast<std::size_t>(i) * n + j] =
                    sum / a[static_cast<std::size_t>(j) * n + j];
            }
        }
    }
    return true;
}

}  // namespace

std::vector<double> solve_spd(std::vector<double> a, std::vector<double> b, int dim,
                              double ridge) {
    const std::size_t n = static_cast<std::size_t>(dim);
    if (a.size() != n * n || b.size() != n) {
        throw InputError("solve_spd: dimension mismatch");
    }
    double shift = std::max(ridge, 0.0);
    for (int attempt = 0; attempt < 40; ++attempt) {
        std::vector<double> chol = a;
        for (std::size_t i = 0; i < n; ++i) chol[i * n + i] += shift;
        if (cholesky(chol, dim)) {
            // Forward then backward substitution.
            std::vector<double> x = b;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t k = 0; k < i; ++k) x[i] -= chol[i * n + k] * x[k];
                x[i] /= chol[i * n + i];
            }
            for (std::size_t i = n; i-- > 0;) {
                for (std::size_t k = i + 1; k < n; ++k) x[i] -= chol[k * n + i] * x[k];
                x[i] /= chol[i * n + i];
            }
            return x;
        }
        shift = (shift > 0.0) ? shift * 10.0 : 1e-20;
    }
    throw Error("solve_spd: matrix not positive definite even after regularization");
}

MinimizeResult minimize_dual(const DualFunction& raw, int dim, const SolverOptions& opts) {
    const std::size_t n = static_cast<std::size_t>(dim);
    if (!opts.tikhonov.empty() && opts.tikhonov.size() != n) {
        throw InputError("minimize_dual: tikhonov size " +
                         std::to_string(opts.tikhonov.size()) + " does not match dimension " +
                         std::to_string(dim));
    }
    for (double t : opts.tikhonov) {
        if (!std::isfinite(t) || t < 0.0) {
            throw InputError("minimize_dual: tikhonov weights must be finite and >= 0");
        }
    }
    const std::vector<double> tik = opts.tikhonov;  // copy; opts outlives f calls anyway
    const DualFunction penalized = [&raw, &tik, n](const std::vector<double>& xx,
                                                   std::vector<double>& gg,
                                                   std::vector<double>* hess) {
        double v = raw(xx, gg, hess);
        for (std::size_t i = 0; i < n; ++i) {
            v += 0.5 * tik[i] * xx[i] * xx[i];
            gg[i] += tik[i] * xx[i];
            if (hess) (*hess)[i * n + i] += tik[i];
        }
        return v;
    };
    const DualFunction& f = tik.empty() ? raw : penalized;

    std::vector<double> x(n, 0.0), grad(n, 0.0);
    double value = f(x, grad, nullptr);

    std::vector<double> best_x = x, best_grad = grad;
    double best_norm = inf_norm(grad);
    double best_value = value;
    auto remember = [&](const std::vector<double>& xx, const std::vector<double>& gg,
                        double vv) {
        const double norm = inf_norm(gg);
        if (norm < best_norm) {
            best_x = xx;
            best_grad = gg;
            best_norm = norm;
            best_value = vv;
        }
    };

    // --- Phase 1: Barzilai-Borwein (BB1) with a nonmonotone line search. ---
    // The reference value is the max over the last 10 accepted objectives
    // (Grippo-Lampariello-Lucidi), which lets the characteristic BB
    // non-monotonicity through while still barring divergence.
    const double bb_floor = std::max(opts.grad_tol, 1e-5);  // hand off to Newton here
    std::deque<double> history{value};
    std::vector<double> prev_x, prev_grad;
    int iterations = 0;
    for (; iterations < opts.max_iter && best_norm > bb_floor; ++iterations) {
        double step = 1e-3;
        if (!prev_x.empty()) {
            double ss = 0.0, sy = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double si = x[i] - prev_x[i];
                const double yi = grad[i] - prev_grad[i];
                ss += si * si;
                sy += si * yi;
            }
            step = ss / sy;
        }
        if (!std::isfinite(step) || step <= 0.0 || step > 1e6) step = 1e-3;

        const double f_ref = *std::max_element(history.begin(), history.end());
        const double gg = dot(grad, grad);
        std::vector<double> x_new(n), grad_new(n);
        double value_new = value;
        double t = step;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] - t * grad[i];
            value_new = f(x_new, grad_new, nullptr);
            if (std::isfinite(value_new) && value_new <= f_ref - 1e-4 * t * gg) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            // Keep the last (tiny) trial step; if it goes nowhere the best
            // iterate stops improving and the budget runs out honestly.
            for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] - t * grad[i];
            value_new = f(x_new, grad_new, nullptr);
        }
        prev_x = std::move(x);
        prev_grad = std::move(grad);
        x = std::move(x_new);
        grad = std::move(grad_new);
        value = value_new;
        remember(x, grad, value);
        history.push_back(value);
        if (history.size() > 10) history.pop_front();
    }

    // --- Phase 2: damped Newton polish from the best BB iterate. ---
    // The duals here are smooth and convex but badly conditioned (Hankel-like
    // Hessians, cond ~ 1e15), which caps pure first-order progress around
    // gradient norms of 1e-5..1e-6; a few regularized Newton steps close the
    // remaining gap to 1e-8 and below.
    x = best_x;
    grad = best_grad;
    value = best_value;
    std::vector<double> hessian(n * n, 0.0);
    for (int it = 0; it < opts.newton_iter && best_norm > opts.grad_tol; ++it) {
        value = f(x, grad, &hessian);
        remember(x, grad, value);
        if (inf_norm(grad) <= opts.grad_tol) break;

        double trace = 0.0;
        for (std::size_t i = 0; i < n; ++i) trace += hessian[i * n + i];
        const double ridge = 1e-14 * std::max(trace / static_cast<double>(n), 1e-30);
        std::vector<double> neg_grad(n);
        for (std::size_t i = 0; i < n; ++i) neg_grad[i] = -grad[i];
        std::vector<double> dir = solve_spd(hessian, neg_grad, dim, ridge);

        const double slope = dot(grad, dir);
        if (!(slope < 0.0)) break;  // not a descent direction; give up polishing
        double t = 1.0;
        std::vector<double> x_new(n), grad_new(n);
        bool moved = false;
        for (int ls = 0; ls < 60; ++ls) {
            for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + t * dir[i];
            std::vector<double> g_tmp(n);
            const double v_new = f(x_new, g_tmp, nullptr);
            if (std::isfinite(v_new) && v_new <= value + 1e-4 * t * slope) {
                grad_new = std::move(g_tmp);
                value = v_new;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if (!moved) break;
        x = std::move(x_new);
        grad = std::move(grad_new);
        remember(x, grad, value);
        ++iterations;
    }

    MinimizeResult result;
    result.x = best_x;
    result.gradient = best_grad;
    result.value = best_value;
    result.iterations = iterations;
    result.converged = best_norm <= opts.grad_tol;
    if (!result.converged && opts.throw_on_failure) {
        throw ConvergenceError(
            "minimize_dual: gradient norm " + std::to_string(best_norm) +
                " above tolerance after " + std::to_string(iterations) + " iterations",
            result.x, result.gradient, result.iterations);
    }
    return result;
}

}  // namespace maxent
