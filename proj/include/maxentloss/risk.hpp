#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "maxentloss/density.hpp"
#include "maxentloss/model.hpp"

namespace maxent {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double v) const { return lo <= v && v <= hi; }
    double width() const { return hi - lo; }
};

// VaR_gamma = F*^{-1}(gamma) of the conditional (positive) loss via
// bisection, and TVaR_gamma = VaR + E[(S - VaR)+]/(1 - gamma) from the same
// density.  TVaR is also checked internally against the direct tail average.
struct RiskMeasures {
    double var = 0.0;
    double tvar = 0.0;
};
RiskMeasures risk_from_density(const DensityOnS& fit, double gamma);

// Empirical counterparts on the sorted positive part of a sample:
//   VaR_hat  = s_([N gamma])   (1-based order statistic),
//   TVaR_hat = mean of s_(j) for j >= [N gamma].
RiskMeasures empirical_risk(const LossSample& sample, double gamma);

// 95% resampling bands for the empirical VaR/TVaR: B subsamples without
// replacement of round(frac * N) positives, estimator recomputed on each,
// and the 2.5%/97.5% quantiles of the B values reported.
struct RiskBands {
    Interval var;
    Interval tvar;
};
RiskBands resample_risk_bands(const LossSample& sample, double gamma, int B = 1000,
                              double frac = 0.9, std::uint64_t seed = 20260814);

// One gamma-ladder row combining the fitted and empirical views.
struct RiskRow {
    double gamma = 0.0;
    RiskMeasures fitted;
    RiskMeasures empirical;
    RiskBands bands;
    bool var_in_band = false;
    bool tvar_in_band = false;
};
std::vector<RiskRow> risk_ladder(const DensityOnS& fit, const LossSample& sample,
                                 const std::vector<double>& gammas, int B = 1000,
                                 double frac = 0.9, std::uint64_t seed = 20260814);

// Default ladder: 0.900, 0.910, ..., 0.990, 0.995, 0.999.
std::vector<double> default_gamma_ladder();

}  // namespace maxent
