#include "maxentloss/density.hpp"

#include <algorithm>
#include <cmath>

#include "maxentloss/errors.hpp"

namespace maxent {

DensityOnS::DensityOnS(std::function<double(double)> f_y, const CompositeRule& rule)
    : f_y_(std::move(f_y)), rule_(&rule) {
    if (!f_y_) throw InputError("DensityOnS: density callable must be set");
    std::vector<double> per_panel = rule_->panel_integrals(f_y_);
    panel_prefix_.resize(per_panel.size());
    NeumaierSum running;
    for (std::size_t i = 0; i < per_panel.size(); ++i) {
        running.add(per_panel[i]);
        panel_prefix_[i] = running.value();
    }
    mass_ = panel_prefix_.back();
    if (!(mass_ > 0.0) || !std::isfinite(mass_)) {
        throw InputError("DensityOnS: density must have positive finite mass");
    }
    // All queries are normalized by the computed mass so the CDF hits 0 and
    // 1 exactly; callers can still read total_mass() to check the input was
    // properly normalized to begin with.
}

double DensityOnS::pdf_y(double y) const {
    if (y < 0.0 || y > 1.0) return 0.0;
    return f_y_(y) / mass_;
}

double DensityOnS::cdf_y(double y) const {
    if (y <= 0.0) return 0.0;
    if (y >= 1.0) return 1.0;
    const double raw = rule_->prefix_integral(f_y_, panel_prefix_, y) / mass_;
    return std::clamp(raw, 0.0, 1.0);
}

double DensityOnS::pdf(double s) const {
    if (s <= 0.0) return 0.0;
    const double y = std::exp(-s);
    return y * f_y_(y) / mass_;
}

double DensityOnS::cdf(double s) const {
    if (s <= 0.0) return 0.0;
    return 1.0 - cdf_y(std::exp(-s));
}

double DensityOnS::y_moment(double alpha) const {
    if (!(alpha >= 0.0)) throw InputError("y_moment: alpha must be >= 0");
    const double value = rule_->integrate(
        [&](double y) { return std::pow(y, alpha) * f_y_(y); });
    return value / mass_;
}

double DensityOnS::total_mass() const {
    return mass_;
}

double DensityOnS::quantile(double gamma) const {
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw InputError("quantile: gamma must lie strictly inside (0,1)");
    }
    // Expand an upper bracket, then bisect F_S(s) = gamma down to 1e-10.
    double lo = 0.0;
    double hi = 1.0;
    while (cdf(hi) < gamma) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e8) throw Error("quantile: upper bracket expansion failed");
    }
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) < gamma) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double DensityOnS::upper_bound(double tail_mass) const {
    if (!(tail_mass > 0.0 && tail_mass < 1.0)) {
        throw InputError("upper_bound: tail mass must lie in (0,1)");
    }
    double hi = 1.0;
    while (cdf(hi) < 1.0 - tail_mass) {
        hi *= 2.0;
        if (hi > 1e8) throw Error("upper_bound: tail expansion failed");
    }
    return hi;
}

}  // namespace maxent
