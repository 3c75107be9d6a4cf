#include "maxentloss/risk.hpp"

#include <algorithm>
#include <cmath>

#include "maxentloss/errors.hpp"
#include "maxentloss/quadrature.hpp"
#include "maxentloss/rng.hpp"

namespace maxent {

namespace {

// U(a) = a + E[(S - a)+] / (1 - gamma); the Rockafellar-Uryasev objective
// whose minimizer is the gamma-quantile and whose minimum is TVaR.
double shortfall_objective(const DensityOnS& fit, double a, double gamma, double s_max) {
    double integral = 0.0;
    if (s_max > a) {
        const CompositeRule rule = CompositeRule::uniform(a, s_max, 24, 24);
        integral = rule.integrate([&](double t) { return (t - a) * fit.pdf(t); });
    }
    return a + integral / (1.0 - gamma);
}

double quantile_type7(const std::vector<double>& sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double pos = p * static_cast<double>(n - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= n) return sorted[n - 1];
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

// 1-based order-statistic index [N gamma], guarded against 89.999...
// style rounding of exact decimal products.
std::size_t var_index(std::size_t n, double gamma) {
    const auto idx = static_cast<std::size_t>(
        std::floor(static_cast<double>(n) * gamma + 1e-9));
    if (idx < 1) throw InputError("empirical_risk: sample too small for gamma");
    return std::min(idx, n);
}

void check_gamma(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw InputError("risk: gamma must lie strictly inside (0,1)");
    }
}

}  // namespace

RiskMeasures risk_from_density(const DensityOnS& fit, double gamma) {
    check_gamma(gamma);
    const double var = fit.quantile(gamma);
    const double s_max = fit.upper_bound(1e-12);
    const double tvar = shortfall_objective(fit, var, gamma, s_max);
    // The objective is convex with its minimum at the quantile; a drift
    // below the value at the root signals quadrature/CDF disagreement.
    const double delta = 1e-3;
    const double up = shortfall_objective(fit, var + delta, gamma, s_max);
    const double down = shortfall_objective(fit, std::max(var - delta, 0.0), gamma, s_max);
    if (up < tvar - 1e-9 || down < tvar - 1e-9) {
        throw Error("risk_from_density: shortfall objective is not minimal at the quantile");
    }
    return {var, tvar};
}

RiskMeasures empirical_risk(const LossSample& sample, double gamma) {
    check_gamma(gamma);
    const std::vector<double> pos = sample.sorted_positives();
    if (pos.empty()) throw InputError("empirical_risk: no positive losses");
    const std::size_t idx = var_index(pos.size(), gamma);
    const double var = pos[idx - 1];
    NeumaierSum tail;
    for (std::size_t j = idx - 1; j < pos.size(); ++j) tail.add(pos[j]);
    const double tvar = tail.value() / static_cast<double>(pos.size() - idx + 1);
    return {var, tvar};
}

namespace {

struct LadderEstimates {
    std::vector<double> var;   // one entry per gamma
    std::vector<double> tvar;
};

// VaR/TVaR at several gammas from one sorted subsample, sharing a suffix
// prefix-sum so each replicate costs one sort.
LadderEstimates estimates_for(const std::vector<double>& sorted,
                              const std::vector<double>& gammas) {
    LadderEstimates est;
    est.var.reserve(gammas.size());
    est.tvar.reserve(gammas.size());
    const std::size_t n = sorted.size();
    std::vector<double> suffix(n + 1, 0.0);
    for (std::size_t j = n; j-- > 0;) suffix[j] = suffix[j + 1] + sorted[j];
    for (double gamma : gammas) {
        const std::size_t idx = var_index(n, gamma);
        est.var.push_back(sorted[idx - 1]);
        est.tvar.push_back(suffix[idx - 1] / static_cast<double>(n - idx + 1));
    }
    return est;
}

}  // namespace

RiskBands resample_risk_bands(const LossSample& sample, double gamma, int B, double frac,
                              std::uint64_t seed) {
    check_gamma(gamma);
    std::vector<RiskRow> rows =
        risk_ladder(DensityOnS(), sample, {gamma}, B, frac, seed);
    return rows[0].bands;
}

std::vector<RiskRow> risk_ladder(const DensityOnS& fit, const LossSample& sample,
                                 const std::vector<double>& gammas, int B, double frac,
                                 std::uint64_t seed) {
    if (gammas.empty()) throw InputError("risk_ladder: no gammas given");
    for (double g : gammas) check_gamma(g);
    if (B < 100) throw InputError("risk_ladder: need at least 100 resamples");
    if (!(frac > 0.0 && frac <= 1.0)) throw InputError("risk_ladder: frac must be in (0,1]");

    const std::vector<double> pos = sample.sorted_positives();
    if (pos.empty()) throw InputError("risk_ladder: no positive losses");
    const std::size_t n = pos.size();
    const auto m = static_cast<std::size_t>(
        std::llround(frac * static_cast<double>(n)));
    if (m < 2) throw InputError("risk_ladder: subsample too small");
    for (double g : gammas) var_index(m, g);  // fail fast if m is too small

    // B subsamples without replacement; each replicate has its own derived
    // stream, so the set is reproducible and order-independent.
    std::vector<std::vector<double>> var_draws(gammas.size());
    std::vector<std::vector<double>> tvar_draws(gammas.size());
    for (auto& v : var_draws) v.reserve(static_cast<std::size_t>(B));
    for (auto& v : tvar_draws) v.reserve(static_cast<std::size_t>(B));

    std::vector<std::size_t> base(n);
    for (std::size_t i = 0; i < n; ++i) base[i] = i;
    std::vector<std::size_t> idx;
    std::vector<double> sub(m);
    for (int b = 0; b < B; ++b) {
        Rng rng(derive_seed(seed, "resample", static_cast<std::uint64_t>(b)));
        idx = base;
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
            std::swap(idx[i], idx[j]);
        }
        for (std::size_t i = 0; i < m; ++i) sub[i] = pos[idx[i]];
        std::sort(sub.begin(), sub.end());
        const LadderEstimates est = estimates_for(sub, gammas);
        for (std::size_t g = 0; g < gammas.size(); ++g) {
            var_draws[g].push_back(est.var[g]);
            tvar_draws[g].push_back(est.tvar[g]);
        }
    }

    std::vector<RiskRow> rows(gammas.size());
    for (std::size_t g = 0; g < gammas.size(); ++g) {
        RiskRow& row = rows[g];
        row.gamma = gammas[g];
        row.empirical = empirical_risk(sample, gammas[g]);
        std::sort(var_draws[g].begin(), var_draws[g].end());
        std::sort(tvar_draws[g].begin(), tvar_draws[g].end());
        row.bands.var = {quantile_type7(var_draws[g], 0.025),
                         quantile_type7(var_draws[g], 0.975)};
        row.bands.tvar = {quantile_type7(tvar_draws[g], 0.025),
                          quantile_type7(tvar_draws[g], 0.975)};
        if (fit.valid()) {
            row.fitted = risk_from_density(fit, gammas[g]);
            row.var_in_band = row.bands.var.contains(row.fitted.var);
            row.tvar_in_band = row.bands.tvar.contains(row.fitted.tvar);
        }
    }
    return rows;
}

std::vector<double> default_gamma_ladder() {
    std::vector<double> gammas;
    for (int i = 90; i <= 99; ++i) gammas.push_back(static_cast<double>(i) / 100.0);
    gammas.push_back(0.995);
    gammas.push_back(0.999);
    return gammas;
}

}  // namespace maxent
