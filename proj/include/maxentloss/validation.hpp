#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "maxentloss/density.hpp"
#include "maxentloss/model.hpp"

namespace maxent {

// Histogram bin layout over the positive losses.  Default rule is
// Freedman-Diaconis (bin width 2 IQR n^{-1/3}), clamped to [10, 400] bins.
struct HistogramSpec {
    std::vector<double> edges;  // ascending, size bins + 1

    static HistogramSpec freedman_diaconis(const std::vector<double>& sorted_positives);
    static HistogramSpec equal_width(double lo, double hi, std::size_t bins);

    std::size_t bins() const { return edges.empty() ? 0 : edges.size() - 1; }
};

// Histogram estimate f_n over the positive part of the sample, plus the
// L1/L2 distances between f_n and a fitted density integrated bin by bin
// (with the fitted mass beyond the last edge added, so a perfect fit of a
// truncated histogram still pays for unmatched tail mass).
struct DensityDistances {
    double l1 = 0.0;
    double l2 = 0.0;
};
DensityDistances density_distances(const DensityOnS& fit, const LossSample& sample,
                                   const HistogramSpec& bins);

// Mean absolute / root mean squared distance between the fitted CDF and the
// ECDF of the positive losses, evaluated at the sorted sample points.
struct CdfDistances {
    double mae = 0.0;
    double rmse = 0.0;
    double max_abs = 0.0;
};
CdfDistances cdf_distances(const DensityOnS& fit, const LossSample& sample);

// Probability integral transforms p_j = F*(s_j) over the positive losses in
// draw order, clamped to [1e-10, 1 - 1e-10] for the log-based statistics.
std::vector<double> pit_values(const DensityOnS& fit, const LossSample& sample);

// One goodness-of-fit statistic with its fixed-level decisions.  The paper
// works with printed critical values, so no p-values are attached.
struct TestResult {
    std::string name;
    double statistic = 0.0;
    double critical_95 = 0.0;
    double critical_99 = 0.0;
    bool reject_95 = false;
    bool reject_99 = false;
};

// Classical EDF statistics on the PIT sample against U(0,1).
TestResult ks_test(const std::vector<double>& pit);        // sqrt(n) D_n
TestResult ad_test(const std::vector<double>& pit);        // A^2
TestResult cvm_test(const std::vector<double>& pit);       // W^2

// Berkowitz LR_3: transform z_j = Phi^{-1}(p_j), fit a Gaussian AR(1) by
// exact maximum likelihood, and test (mean, variance, autocorrelation) =
// (0, 1, 0) with a chi-square(3) likelihood ratio.
TestResult berkowitz_test(const std::vector<double>& pit);

// Normality checks on the z. Jarque-Bera and its robust variant (kurtosis
// and skewness standardized by the mean absolute deviation around the
// median, J_n).  Both compared to chi-square(2) critical values.
TestResult jarque_bera_test(const std::vector<double>& z);
TestResult robust_jarque_bera_test(const std::vector<double>& z);

// Sample autocorrelations r_1..r_max of (p - mean(p))^k for k = 1, 2, 3,
// with the +-1.96/sqrt(n) white-noise band.  A constant series is flagged
// degenerate and its correlations reported as zero.
struct Correlogram {
    int power = 1;
    std::vector<double> r;  // lags 1..max_lag
    double band = 0.0;
    bool degenerate = false;
    std::size_t exceedances() const;
};
Correlogram pit_correlogram(const std::vector<double>& pit, int power, std::size_t max_lag);

// Reliability diagram: pairs (F_n(s_(j)), F*(s_(j))) over the sorted
// positive sample; on target they sit on the diagonal.
std::vector<std::array<double, 2>> reliability_points(const DensityOnS& fit,
                                                      const LossSample& sample);

// Marginal calibration: pairs (s_(j), F*(s_(j)) - F_n(s_(j))) over the
// sorted positive sample; on target they fluctuate around zero.
std::vector<std::array<double, 2>> marginal_calibration_points(const DensityOnS& fit,
                                                               const LossSample& sample);

// Everything above in one pass over a held-out sample.
struct GofReport {
    DensityDistances density;
    CdfDistances cdf;
    TestResult ks, ad, cvm, berkowitz, jb, rjb;
    Correlogram acf1, acf2, acf3;
    std::vector<std::array<double, 2>> reliability;
    std::vector<std::array<double, 2>> calibration;
    std::size_t n_positive = 0;
};
GofReport evaluate_gof(const DensityOnS& fit, const LossSample& test,
                       const HistogramSpec* bins = nullptr, std::size_t max_lag = 20);

}  // namespace maxent
