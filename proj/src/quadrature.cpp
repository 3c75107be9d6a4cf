#include "maxentloss/quadrature.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "maxentloss/errors.hpp"

namespace maxent {

namespace {

// Nodes by Newton iteration on P_n with the three-term recurrence;
// symmetric pairs are filled together.
GaussLegendre compute_gauss_legendre(int n) {
    GaussLegendre rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const int mid = (n + 1) / 2;
    for (int i = 0; i < mid; ++i) {
        // Tricomi-style initial guess for the i-th root (descending order).
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                // One last correction to polish to full precision.
                p0 = 1.0;
                p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                x -= p1 / dp;
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;  // ascending order
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
    if (n < 1) throw InputError("gauss_legendre: order must be >= 1");
    static std::map<int, GaussLegendre> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, compute_gauss_legendre(n)).first;
    }
    return it->second;
}

CompositeRule::CompositeRule(std::vector<double> breakpoints, int points_per_panel)
    : breaks_(std::move(breakpoints)), points_(static_cast<std::size_t>(points_per_panel)) {
    if (breaks_.size() < 2) throw InputError("CompositeRule: need at least one panel");
    if (points_per_panel < 1) throw InputError("CompositeRule: need at least one node");
    if (!std::is_sorted(breaks_.begin(), breaks_.end()) ||
        std::adjacent_find(breaks_.begin(), breaks_.end()) != breaks_.end()) {
        throw InputError("CompositeRule: breakpoints must be strictly increasing");
    }
    const GaussLegendre& gl = gauss_legendre(points_per_panel);
    nodes_.reserve(points_ * panel_count());
    weights_.reserve(points_ * panel_count());
    for (std::size_t p = 0; p + 1 < breaks_.size(); ++p) {
        const double half = 0.5 * (breaks_[p + 1] - breaks_[p]);
        const double mid = 0.5 * (breaks_[p + 1] + breaks_[p]);
        for (std::size_t q = 0; q < points_; ++q) {
            nodes_.push_back(mid + half * gl.nodes[q]);
            weights_.push_back(half * gl.weights[q]);
        }
    }
}

const CompositeRule& CompositeRule::unit_grid() {
    // 8 panels, 64 nodes each.  The dyadic-ish grading toward 0 keeps the
    // relative error of integrating y^alpha (alpha down to ~0.15) below
    // 1e-12 despite the unbounded derivative at the origin; the right half
    // is smooth and two wide panels suffice.
    static const CompositeRule rule(
        {0.0, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1, 0.5, 1.0}, 64);
    return rule;
}

CompositeRule CompositeRule::uniform(double a, double b, int panels, int points_per_panel) {
    if (!(a < b)) throw InputError("CompositeRule::uniform: need a < b");
    if (panels < 1) throw InputError("CompositeRule::uniform: need at least one panel");
    std::vector<double> breaks(static_cast<std::size_t>(panels) + 1);
    for (int i = 0; i <= panels; ++i) {
        breaks[static_cast<std::size_t>(i)] = a + (b - a) * static_cast<double>(i) / panels;
    }
    return CompositeRule(std::move(breaks), points_per_panel);
}

double CompositeRule::integrate(const std::function<double(double)>& f) const {
    NeumaierSum sum;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        sum.add(weights_[i] * f(nodes_[i]));
    }
    return sum.value();
}

std::vector<double> CompositeRule::panel_integrals(
    const std::function<double(double)>& f) const {
    std::vector<double> out(panel_count(), 0.0);
    for (std::size_t p = 0; p < panel_count(); ++p) {
        NeumaierSum sum;
        for (std::size_t q = 0; q < points_; ++q) {
            const std::size_t i = p * points_ + q;
            sum.add(weights_[i] * f(nodes_[i]));
        }
        out[p] = sum.value();
    }
    return out;
}

double CompositeRule::prefix_integral(const std::function<double(double)>& f,
                                      const std::vector<double>& panel_prefix,
                                      double t) const {
    if (panel_prefix.size() != panel_count()) {
        throw InputError("prefix_integral: panel cache size mismatch");
    }
    if (t <= breaks_.front()) return 0.0;
    if (t >= breaks_.back()) return panel_prefix.back();
    // Locate the panel containing t.
    const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
    const std::size_t p = static_cast<std::size_t>(it - breaks_.begin()) - 1;
    double full = (p == 0) ? 0.0 : panel_prefix[p - 1];
    // Fresh rule over the partial panel [breaks_[p], t].
    const GaussLegendre& gl = gauss_legendre(static_cast<int>(points_));
    const double half = 0.5 * (t - breaks_[p]);
    const double mid = 0.5 * (t + breaks_[p]);
    NeumaierSum sum;
    for (std::size_t q = 0; q < points_; ++q) {
        sum.add(half * gl.weights[q] * f(mid + half * gl.nodes[q]));
    }
    return full + sum.value();
}

double integrate(const std::function<double(double)>& f, double a, double b, int panels,
                 int points) {
    return CompositeRule::uniform(a, b, panels, points).integrate(f);
}

}  // namespace maxent
