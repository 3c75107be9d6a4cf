#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace maxent {

// Compensated (Neumaier) accumulator: running sums of quadrature weights and
// of long ECDF/statistic loops stay reproducible at the last bit regardless
// of accumulation order drift between optimization levels.
class NeumaierSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Nodes/weights of the n-point Gauss-Legendre rule on [-1, 1].
// Computed once per order by Newton iteration on the Legendre polynomial
// and cached.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int n);

// Composite Gauss-Legendre rule over consecutive panels.  The panel layout
// is part of the type so that integrals, prefix integrals (CDFs) and moment
// evaluations all share the same fixed node set.
class CompositeRule {
public:
    // Panels given by breakpoints b0 < b1 < ... < bm, `points` nodes each.
    CompositeRule(std::vector<double> breakpoints, int points_per_panel);

    // Default rule for densities on [0, 1] arising from y = exp(-s):
    // panels graded toward 0 (where y^alpha has unbounded derivatives and
    // where the right tail of s lands) plus wide panels over the bulk.
    static const CompositeRule& unit_grid();

    // Uniform panels over [a, b].
    static CompositeRule uniform(double a, double b, int panels, int points_per_panel);

    const std::vector<double>& breakpoints() const { return breaks_; }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    double lower() const { return breaks_.front(); }
    double upper() const { return breaks_.back(); }
    std::size_t panel_count() const { return breaks_.size() - 1; }
    std::size_t points_per_panel() const { return points_; }

    // Integral of f over the full range (compensated accumulation).
    double integrate(const std::function<double(double)>& f) const;

    // Integrals of f over each panel, in order.  Callers cache the prefix
    // sums to evaluate CDFs.
    std::vector<double> panel_integrals(const std::function<double(double)>& f) const;

    // Integral of f over [lower(), t] for t inside the range: full panels
    // from the cache plus a fresh Gauss-Legendre pass over the partial panel.
    double prefix_integral(const std::function<double(double)>& f,
                           const std::vector<double>& panel_prefix, double t) const;

private:
    std::vector<double> breaks_;
    std::size_t points_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

// One-off adaptive-free integral of f over [a, b] with `panels` uniform
// panels of a `points`-node rule.  Convenience for tests and oracles.
double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels = 16, int points = 32);

}  // namespace maxent
