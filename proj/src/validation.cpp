#include "maxentloss/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "maxentloss/errors.hpp"
#include "maxentloss/quadrature.hpp"
#include "maxentloss/special.hpp"

namespace maxent {

namespace {

constexpr double kPitClamp = 1e-10;

// Critical values as printed in the source tables.
constexpr double kKs95 = 1.36, kKs99 = 1.63;
constexpr double kAd95 = 2.492, kAd99 = 3.857;
constexpr double kCvm95 = 0.461, kCvm99 = 0.743;
constexpr double kChi3_95 = 7.815, kChi3_99 = 11.34;
constexpr double kChi2_95 = 5.991, kChi2_99 = 9.21;

TestResult make_result(std::string name, double statistic, double cv95, double cv99) {
    TestResult r;
    r.name = std::move(name);
    r.statistic = statistic;
    r.critical_95 = cv95;
    r.critical_99 = cv99;
    r.reject_95 = statistic > cv95;
    r.reject_99 = statistic > cv99;
    return r;
}

double clamp_pit(double p) {
    return std::clamp(p, kPitClamp, 1.0 - kPitClamp);
}

// Linear-interpolation sample quantile (the common "type 7" rule).
double sample_quantile(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double pos = p * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= n) return sorted[n - 1];
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return (n % 2 == 1) ? values[n / 2]
                        : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

// Right-continuous ECDF of `sorted` evaluated at x.
double ecdf(const std::vector<double>& sorted, double x) {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
    return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

std::vector<double> standard_normal_scores(const std::vector<double>& pit) {
    std::vector<double> z(pit.size());
    for (std::size_t i = 0; i < pit.size(); ++i) {
        z[i] = normal_quantile(clamp_pit(pit[i]));
    }
    return z;
}

}  // namespace

HistogramSpec HistogramSpec::freedman_diaconis(const std::vector<double>& sorted) {
    if (sorted.size() < 2) throw InputError("freedman_diaconis: need two or more points");
    const double lo = sorted.front(), hi = sorted.back();
    if (!(hi > lo)) throw InputError("freedman_diaconis: degenerate sample range");
    const double n = static_cast<double>(sorted.size());
    const double iqr = sample_quantile(sorted, 0.75) - sample_quantile(sorted, 0.25);
    std::size_t bins;
    if (iqr > 0.0) {
        const double width = 2.0 * iqr * std::pow(n, -1.0 / 3.0);
        bins = static_cast<std::size_t>(std::ceil((hi - lo) / width));
    } else {
        bins = static_cast<std::size_t>(std::ceil(std::sqrt(n)));
    }
    bins = std::clamp<std::size_t>(bins, 10, 400);
    return equal_width(lo, hi, bins);
}

HistogramSpec HistogramSpec::equal_width(double lo, double hi, std::size_t bins) {
    if (!(lo < hi)) throw InputError("equal_width: need lo < hi");
    if (bins < 1) throw InputError("equal_width: need at least one bin");
    HistogramSpec spec;
    spec.edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) {
        spec.edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
    }
    spec.edges.back() = hi;  // guard the last edge against rounding
    return spec;
}

DensityDistances density_distances(const DensityOnS& fit, const LossSample& sample,
                                   const HistogramSpec& bins) {
    const std::vector<double> pos = sample.sorted_positives();
    if (pos.empty()) throw InputError("density_distances: no positive losses");
    if (bins.bins() < 1) throw InputError("density_distances: empty histogram spec");
    const double n = static_cast<double>(pos.size());

    // Bin counts: [b_k, b_{k+1}), last bin closed on the right.
    std::vector<double> f_n(bins.bins(), 0.0);
    for (double s : pos) {
        if (s < bins.edges.front() || s > bins.edges.back()) continue;
        auto it = std::upper_bound(bins.edges.begin(), bins.edges.end(), s);
        std::size_t k = static_cast<std::size_t>(it - bins.edges.begin());
        k = (k == 0) ? 0 : k - 1;
        if (k >= bins.bins()) k = bins.bins() - 1;
        f_n[k] += 1.0;
    }
    for (std::size_t k = 0; k < bins.bins(); ++k) {
        const double width = bins.edges[k + 1] - bins.edges[k];
        f_n[k] /= n * width;
    }

    NeumaierSum l1, l2;
    for (std::size_t k = 0; k < bins.bins(); ++k) {
        const double level = f_n[k];
        // A few subpanels per bin keep the |.| kink error negligible.
        const CompositeRule rule = CompositeRule::uniform(bins.edges[k], bins.edges[k + 1], 8, 16);
        l1.add(rule.integrate([&](double s) { return std::abs(fit.pdf(s) - level); }));
        l2.add(rule.integrate([&](double s) {
            const double d = fit.pdf(s) - level;
            return d * d;
        }));
    }
    // Fitted mass beyond the last edge: exact via the CDF for L1, quadrature
    // to the 1e-10 tail point for L2.
    const double tail_mass = 1.0 - fit.cdf(bins.edges.back());
    l1.add(tail_mass);
    if (tail_mass > 0.0) {
        const double s_up = fit.upper_bound(1e-10);
        if (s_up > bins.edges.back()) {
            const CompositeRule rule = CompositeRule::uniform(bins.edges.back(), s_up, 16, 16);
            l2.add(rule.integrate([&](double s) {
                const double p = fit.pdf(s);
                return p * p;
            }));
        }
    }
    return {l1.value(), std::sqrt(std::max(l2.value(), 0.0))};
}

CdfDistances cdf_distances(const DensityOnS& fit, const LossSample& sample) {
    const std::vector<double> pos = sample.sorted_positives();
    if (pos.empty()) throw InputError("cdf_distances: no positive losses");
    const double n = static_cast<double>(pos.size());
    NeumaierSum abs_sum, sq_sum;
    double max_abs = 0.0;
    for (std::size_t j = 0; j < pos.size(); ++j) {
        const double diff = fit.cdf(pos[j]) - ecdf(pos, pos[j]);
        abs_sum.add(std::abs(diff));
        sq_sum.add(diff * diff);
        max_abs = std::max(max_abs, std::abs(diff));
    }
    return {abs_sum.value() / n, std::sqrt(sq_sum.value() / n), max_abs};
}

std::vector<double> pit_values(const DensityOnS& fit, const LossSample& sample) {
    std::vector<double> p;
    p.reserve(sample.size() - sample.zero_count());
    for (double s : sample.values()) {
        if (s > 0.0) p.push_back(fit.cdf(s));
    }
    if (p.empty()) throw InputError("pit_values: no positive losses");
    return p;
}

TestResult ks_test(const std::vector<double>& pit) {
    if (pit.empty()) throw InputError("ks_test: empty input");
    std::vector<double> sorted = pit;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    double d = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double hi = static_cast<double>(j + 1) / static_cast<double>(n);
        const double lo = static_cast<double>(j) / static_cast<double>(n);
        d = std::max(d, std::max(hi - sorted[j], sorted[j] - lo));
    }
    return make_result("ks", std::sqrt(static_cast<double>(n)) * d, kKs95, kKs99);
}

TestResult ad_test(const std::vector<double>& pit) {
    if (pit.empty()) throw InputError("ad_test: empty input");
    std::vector<double> sorted = pit;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    NeumaierSum sum;
    for (std::size_t j = 0; j < n; ++j) {
        const double a = std::log(clamp_pit(sorted[j]));
        const double b = std::log(1.0 - clamp_pit(sorted[n - 1 - j]));
        sum.add((2.0 * static_cast<double>(j) + 1.0) * (a + b));
    }
    const double nn = static_cast<double>(n);
    return make_result("ad", -nn - sum.value() / nn, kAd95, kAd99);
}

TestResult cvm_test(const std::vector<double>& pit) {
    if (pit.empty()) throw InputError("cvm_test: empty input");
    std::vector<double> sorted = pit;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double nn = static_cast<double>(n);
    NeumaierSum sum;
    for (std::size_t j = 0; j < n; ++j) {
        const double target = (2.0 * static_cast<double>(j) + 1.0) / (2.0 * nn);
        const double d = sorted[j] - target;
        sum.add(d * d);
    }
    return make_result("cvm", sum.value() + 1.0 / (12.0 * nn), kCvm95, kCvm99);
}

namespace {

// Exact Gaussian AR(1) log-likelihood in the regression parametrization
// z_t = mu + rho z_{t-1} + eps_t: stationary density for the first point,
// conditional densities for the rest.
double ar1_loglik(const std::vector<double>& z, double mu, double var, double rho) {
    if (!(var > 0.0) || std::abs(rho) >= 1.0) return -1e300;
    const std::size_t n = z.size();
    const double stat_mean = mu / (1.0 - rho);
    const double stat_var = var / (1.0 - rho * rho);
    double ll = -0.5 * std::log(2.0 * M_PI * stat_var) -
                (z[0] - stat_mean) * (z[0] - stat_mean) / (2.0 * stat_var);
    const double log_norm = -0.5 * std::log(2.0 * M_PI * var);
    NeumaierSum sum;
    for (std::size_t t = 1; t < n; ++t) {
        const double e = z[t] - mu - rho * z[t - 1];
        sum.add(log_norm - e * e / (2.0 * var));
    }
    return ll + sum.value();
}

// Nelder-Mead on an unconstrained reparametrization (mu, log var, atanh rho).
std::vector<double> nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                std::vector<double> start, double scale, int max_iter) {
    const std::size_t d = start.size();
    std::vector<std::vector<double>> simplex(d + 1, start);
    for (std::size_t i = 0; i < d; ++i) simplex[i + 1][i] += scale;
    std::vector<double> value(d + 1);
    for (std::size_t i = 0; i <= d; ++i) value[i] = f(simplex[i]);

    for (int it = 0; it < max_iter; ++it) {
        // Order best..worst.
        std::vector<std::size_t> idx(d + 1);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
        const std::size_t best = idx[0], worst = idx[d], second = idx[d - 1];
        if (std::abs(value[worst] - value[best]) <
            1e-12 * (1.0 + std::abs(value[best]))) {
            break;
        }
        std::vector<double> centroid(d, 0.0);
        for (std::size_t i = 0; i <= d; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < d; ++k) centroid[k] += simplex[i][k];
        }
        for (double& c : centroid) c /= static_cast<double>(d);

        auto blend = [&](double t) {
            std::vector<double> p(d);
            for (std::size_t k = 0; k < d; ++k) {
                p[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
            }
            return p;
        };
        std::vector<double> reflected = blend(-1.0);
        const double fr = f(reflected);
        if (fr < value[best]) {
            std::vector<double> expanded = blend(-2.0);
            const double fe = f(expanded);
            if (fe < fr) {
                simplex[worst] = std::move(expanded);
                value[worst] = fe;
            } else {
                simplex[worst] = std::move(reflected);
                value[worst] = fr;
            }
        } else if (fr < value[second]) {
            simplex[worst] = std::move(reflected);
            value[worst] = fr;
        } else {
            std::vector<double> contracted = blend(0.5);
            const double fc = f(contracted);
            if (fc < value[worst]) {
                simplex[worst] = std::move(contracted);
                value[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= d; ++i) {
                    if (i == best) continue;
                    for (std::size_t k = 0; k < d; ++k) {
                        simplex[i][k] = 0.5 * (simplex[i][k] + simplex[best][k]);
                    }
                    value[i] = f(simplex[i]);
                }
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i <= d; ++i) {
        if (value[i] < value[best]) best = i;
    }
    return simplex[best];
}

}  // namespace

TestResult berkowitz_test(const std::vector<double>& pit) {
    if (pit.size() < 8) throw InputError("berkowitz_test: need at least 8 points");
    const std::vector<double> z = standard_normal_scores(pit);
    const std::size_t n = z.size();

    // Conditional least squares start for (mu, rho, var).
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t t = 1; t < n; ++t) {
        sx += z[t - 1];
        sy += z[t];
        sxx += z[t - 1] * z[t - 1];
        sxy += z[t - 1] * z[t];
    }
    const double m = static_cast<double>(n - 1);
    const double denom = sxx - sx * sx / m;
    double rho0 = (denom > 0.0) ? (sxy - sx * sy / m) / denom : 0.0;
    rho0 = std::clamp(rho0, -0.99, 0.99);
    const double mu0 = (sy - rho0 * sx) / m;
    double rss = 0.0;
    for (std::size_t t = 1; t < n; ++t) {
        const double e = z[t] - mu0 - rho0 * z[t - 1];
        rss += e * e;
    }
    double var0 = std::max(rss / m, 1e-10);

    // Maximize the exact likelihood over the unconstrained transform
    // (mu, log var, atanh rho).
    auto negloglik = [&](const std::vector<double>& p) {
        return -ar1_loglik(z, p[0], std::exp(p[1]), std::tanh(p[2]));
    };
    std::vector<double> start{mu0, std::log(var0), std::atanh(rho0)};
    if (negloglik(start) > 1e299) start = {0.0, 0.0, 0.0};
    const std::vector<double> opt = nelder_mead(negloglik, start, 0.05, 500);

    const double l_null = ar1_loglik(z, 0.0, 1.0, 0.0);
    const double l_hat = std::max(-negloglik(opt), l_null);
    const double lr = -2.0 * (l_null - l_hat);
    return make_result("berkowitz", lr, kChi3_95, kChi3_99);
}

TestResult jarque_bera_test(const std::vector<double>& z) {
    if (z.size() < 4) throw InputError("jarque_bera_test: need at least 4 points");
    const double n = static_cast<double>(z.size());
    double mean = 0.0;
    for (double v : z) mean += v;
    mean /= n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : z) {
        const double d = v - mean;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (!(m2 > 0.0)) throw InputError("jarque_bera_test: zero-variance input");
    const double skew = m3 / std::pow(m2, 1.5);
    const double kurt = m4 / (m2 * m2);
    const double jb = n / 6.0 * (skew * skew + 0.25 * (kurt - 3.0) * (kurt - 3.0));
    return make_result("jb", jb, kChi2_95, kChi2_99);
}

TestResult robust_jarque_bera_test(const std::vector<double>& z) {
    if (z.size() < 4) throw InputError("robust_jarque_bera_test: need at least 4 points");
    const double n = static_cast<double>(z.size());
    const double med = median_of(z);
    double mean = 0.0;
    for (double v : z) mean += v;
    mean /= n;
    double m3 = 0.0, m4 = 0.0, abs_dev = 0.0;
    for (double v : z) {
        const double d = v - mean;
        m3 += d * d * d;
        m4 += d * d * d * d;
        abs_dev += std::abs(v - med);
    }
    m3 /= n;
    m4 /= n;
    const double j_n = std::sqrt(M_PI / 2.0) * abs_dev / n;
    if (!(j_n > 0.0)) throw InputError("robust_jarque_bera_test: zero-spread input");
    const double j3 = j_n * j_n * j_n;
    const double j4 = j3 * j_n;
    const double rjb =
        n / 6.0 * (m3 / j3) * (m3 / j3) + n / 64.0 * (m4 / j4 - 3.0) * (m4 / j4 - 3.0);
    return make_result("rjb", rjb, kChi2_95, kChi2_99);
}

Correlogram pit_correlogram(const std::vector<double>& pit, int power,
                            std::size_t max_lag) {
    if (power < 1 || power > 3) throw InputError("pit_correlogram: power must be 1..3");
    if (pit.size() < max_lag + 2) throw InputError("pit_correlogram: sample too short");
    const std::size_t n = pit.size();
    double p_bar = 0.0;
    for (double p : pit) p_bar += p;
    p_bar /= static_cast<double>(n);

    std::vector<double> w(n);
    for (std::size_t t = 0; t < n; ++t) {
        const double c = pit[t] - p_bar;
        w[t] = (power == 1) ? c : (power == 2 ? c * c : c * c * c);
    }
    double w_bar = 0.0;
    for (double v : w) w_bar += v;
    w_bar /= static_cast<double>(n);
    double denom = 0.0;
    for (double v : w) denom += (v - w_bar) * (v - w_bar);
    denom /= static_cast<double>(n);

    Correlogram out;
    out.power = power;
    out.band = 1.96 / std::sqrt(static_cast<double>(n));
    if (!(denom > 0.0)) {
        out.degenerate = true;
        out.r.assign(max_lag, 0.0);
        return out;
    }
    out.r.resize(max_lag);
    for (std::size_t h = 1; h <= max_lag; ++h) {
        NeumaierSum cov;
        for (std::size_t t = 0; t + h < n; ++t) {
            cov.add((w[t] - w_bar) * (w[t + h] - w_bar));
        }
        out.r[h - 1] = cov.value() / static_cast<double>(n - h) / denom;
    }
    return out;
}

std::size_t Correlogram::exceedances() const {
    std::size_t count = 0;
    for (double v : r) {
        if (std::abs(v) > band) ++count;
    }
    return count;
}

std::vector<std::array<double, 2>> reliability_points(const DensityOnS& fit,
                                                      const LossSample& sample) {
    const std::vector<double> pos = sample.sorted_positives();
    std::vector<std::array<double, 2>> pts;
    pts.reserve(pos.size());
    for (double s : pos) {
        pts.push_back({ecdf(pos, s), fit.cdf(s)});
    }
    return pts;
}

std::vector<std::array<double, 2>> marginal_calibration_points(const DensityOnS& fit,
                                                               const LossSample& sample) {
    const std::vector<double> pos = sample.sorted_positives();
    std::vector<std::array<double, 2>> pts;
    pts.reserve(pos.size());
    for (double s : pos) {
        pts.push_back({s, fit.cdf(s) - ecdf(pos, s)});
    }
    return pts;
}

GofReport evaluate_gof(const DensityOnS& fit, const LossSample& test,
                       const HistogramSpec* bins, std::size_t max_lag) {
    GofReport report;
    const std::vector<double> pos = test.sorted_positives();
    report.n_positive = pos.size();
    HistogramSpec spec = bins ? *bins : HistogramSpec::freedman_diaconis(pos);
    report.density = density_distances(fit, test, spec);
    report.cdf = cdf_distances(fit, test);
    const std::vector<double> pit = pit_values(fit, test);
    const std::vector<double> z = standard_normal_scores(pit);
    report.ks = ks_test(pit);
    report.ad = ad_test(pit);
    report.cvm = cvm_test(pit);
    report.berkowitz = berkowitz_test(pit);
    report.jb = jarque_bera_test(z);
    report.rjb = robust_jarque_bera_test(z);
    report.acf1 = pit_correlogram(pit, 1, max_lag);
    report.acf2 = pit_correlogram(pit, 2, max_lag);
    report.acf3 = pit_correlogram(pit, 3, max_lag);
    report.reliability = reliability_points(fit, test);
    report.calibration = marginal_calibration_points(fit, test);
    return report;
}

}  // namespace maxent
