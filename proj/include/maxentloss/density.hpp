#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "maxentloss/quadrature.hpp"

namespace maxent {

// Density of the positive aggregate loss S reconstructed from a density of
// Y = exp(-S) on [0, 1]:
//
//   f_S(s) = exp(-s) * f_Y(exp(-s)),      F_S(s) = 1 - F_Y(exp(-s)).
//
// All integrals against f_Y run on one shared composite Gauss-Legendre rule;
// per-panel integrals are cached up front so CDF evaluations are cheap and
// deterministic.
class DensityOnS {
public:
    DensityOnS() = default;
    explicit DensityOnS(std::function<double(double)> f_y,
                        const CompositeRule& rule = CompositeRule::unit_grid());

    bool valid() const { return static_cast<bool>(f_y_); }

    double pdf(double s) const;    // 0 for s <= 0
    double cdf(double s) const;    // 0 for s <= 0
    double pdf_y(double y) const;  // underlying density on [0, 1]
    double cdf_y(double y) const;

    // integral of y^alpha f_Y(y) dy = E[exp(-alpha S)] under the fit.
    double y_moment(double alpha) const;

    // Total mass of f_Y over [0, 1]; ~1 up to quadrature error for a
    // properly normalized reconstruction.
    double total_mass() const;

    // Smallest level a with F_S(a) >= gamma, by bracketing + bisection.
    double quantile(double gamma) const;

    // A point s with 1 - F_S(s) <= tail_mass, used to truncate integrals
    // over the S axis.
    double upper_bound(double tail_mass = 1e-10) const;

private:
    std::function<double(double)> f_y_;
    const CompositeRule* rule_ = nullptr;
    std::vector<double> panel_prefix_;  // cumulative panel integrals of f_Y
    double mass_ = 0.0;
};

}  // namespace maxent
