#include "maxentloss/serialize.hpp"

#include "maxentloss/errors.hpp"

namespace maxent {

namespace {

using nlohmann::json;

std::vector<double> doubles(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array()) {
        throw InputError(std::string("json: missing array field '") + key + "'");
    }
    return j[key].get<std::vector<double>>();
}

json test_to_json(const TestResult& t) {
    return json{{"name", t.name},
                {"statistic", t.statistic},
                {"critical_95", t.critical_95},
                {"critical_99", t.critical_99},
                {"reject_95", t.reject_95},
                {"reject_99", t.reject_99}};
}

json acf_to_json(const Correlogram& c) {
    return json{{"power", c.power},
                {"r", c.r},
                {"band", c.band},
                {"degenerate", c.degenerate}};
}

}  // namespace

json moments_to_json(const FractionalMoments& moments) {
    return json{{"alphas", moments.grid.values()},
                {"mu", moments.mu},
                {"psi", moments.psi},
                {"ell", moments.ell},
                {"n", moments.n}};
}

FractionalMoments moments_from_json(const json& j) {
    AlphaGrid grid(doubles(j, "alphas"));
    FractionalMoments moments{std::move(grid), doubles(j, "mu"), doubles(j, "psi"),
                              j.at("ell").get<double>(),
                              j.value("n", std::size_t{0})};
    if (moments.mu.size() != moments.grid.size()) {
        throw InputError("moments json: mu length does not match alphas");
    }
    return moments;
}

json sme_to_json(const SmeDensity& fit) {
    return json{{"alphas", fit.grid.values()},
                {"lambda", fit.lambda},
                {"residuals", fit.residuals},
                {"iterations", fit.iterations},
                {"grad_norm", fit.grad_norm}};
}

SmeDensity sme_from_json(const json& j) {
    SmeDensity fit{AlphaGrid(doubles(j, "alphas")), doubles(j, "lambda"),
                   doubles(j, "residuals"), j.value("iterations", 0),
                   j.value("grad_norm", 0.0)};
    if (fit.lambda.size() != fit.grid.size()) {
        throw InputError("sme json: lambda length does not match alphas");
    }
    return fit;
}

json mem_to_json(const MemSolution& fit) {
    return json{{"alphas", fit.design.grid.values()},
                {"lambda_hat", fit.lambda},
                {"eta", fit.eta},
                {"M", fit.design.M},
                {"x", fit.x},
                {"residuals", fit.residuals},
                {"iterations", fit.iterations},
                {"grad_norm", fit.grad_norm}};
}

MemSolution mem_from_json(const json& j) {
    AlphaGrid grid(doubles(j, "alphas"));
    const auto M = j.at("M").get<std::size_t>();
    MemSolution fit{build_design_matrix(M, grid),
                    j.value("eta", 2.0),
                    doubles(j, "lambda_hat"),
                    doubles(j, "x"),
                    j.contains("residuals") ? doubles(j, "residuals")
                                            : std::vector<double>{},
                    j.value("iterations", 0),
                    j.value("grad_norm", 0.0)};
    if (fit.x.size() != M) throw InputError("mem json: x length does not match M");
    return fit;
}

json gof_to_json(const GofReport& report) {
    json acf = json::array({acf_to_json(report.acf1), acf_to_json(report.acf2),
                            acf_to_json(report.acf3)});
    return json{{"l1", report.density.l1},
                {"l2", report.density.l2},
                {"mae", report.cdf.mae},
                {"rmse", report.cdf.rmse},
                {"max_cdf_diff", report.cdf.max_abs},
                {"n_positive", report.n_positive},
                {"ks", test_to_json(report.ks)},
                {"ad", test_to_json(report.ad)},
                {"cvm", test_to_json(report.cvm)},
                {"berkowitz", test_to_json(report.berkowitz)},
                {"jb", test_to_json(report.jb)},
                {"rjb", test_to_json(report.rjb)},
                {"acf", acf}};
}

json config_to_json(const RunConfig& cfg) {
    return json{{"case",
                 {{"label", cfg.spec.label},
                  {"ell", cfg.spec.model.ell},
                  {"mu", cfg.spec.model.mu},
                  {"sigma", cfg.spec.model.sigma},
                  {"n_observed", cfg.spec.n_observed},
                  {"n_test", cfg.spec.n_test}}},
                {"method", cfg.method},
                {"K", cfg.K},
                {"alpha_scale", cfg.alpha_scale},
                {"M", cfg.M},
                {"eta", cfg.eta},
                {"solver",
                 {{"grad_tol", cfg.solver.grad_tol},
                  {"moment_tol", cfg.solver.moment_tol},
                  {"max_iter", cfg.solver.max_iter},
                  {"newton_iter", cfg.solver.newton_iter}}},
                {"gammas", cfg.gammas},
                {"bins", cfg.bins},
                {"resample_B", cfg.resample_B},
                {"resample_frac", cfg.resample_frac},
                {"seed", cfg.seed},
                {"independent_test", cfg.independent_test},
                {"out_dir", cfg.out_dir}};
}

RunConfig config_from_json(const json& j) {
    RunConfig cfg;
    if (j.contains("case")) {
        const json& c = j["case"];
        cfg.spec.label = c.value("label", cfg.spec.label);
        cfg.spec.model.ell = c.value("ell", cfg.spec.model.ell);
        cfg.spec.model.mu = c.value("mu", cfg.spec.model.mu);
        cfg.spec.model.sigma = c.value("sigma", cfg.spec.model.sigma);
        cfg.spec.n_observed = c.value("n_observed", cfg.spec.n_observed);
        cfg.spec.n_test = c.value("n_test", cfg.spec.n_test);
    }
    cfg.method = j.value("method", cfg.method);
    cfg.K = j.value("K", cfg.K);
    cfg.alpha_scale = j.value("alpha_scale", cfg.alpha_scale);
    cfg.M = j.value("M", cfg.M);
    cfg.eta = j.value("eta", cfg.eta);
    if (j.contains("solver")) {
        const json& s = j["solver"];
        cfg.solver.grad_tol = s.value("grad_tol", cfg.solver.grad_tol);
        cfg.solver.moment_tol = s.value("moment_tol", cfg.solver.moment_tol);
        cfg.solver.max_iter = s.value("max_iter", cfg.solver.max_iter);
        cfg.solver.newton_iter = s.value("newton_iter", cfg.solver.newton_iter);
    }
    if (j.contains("gammas")) cfg.gammas = doubles(j, "gammas");
    cfg.bins = j.value("bins", cfg.bins);
    cfg.resample_B = j.value("resample_B", cfg.resample_B);
    cfg.resample_frac = j.value("resample_frac", cfg.resample_frac);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.independent_test = j.value("independent_test", cfg.independent_test);
    cfg.out_dir = j.value("out_dir", cfg.out_dir);
    cfg.validate();
    return cfg;
}

json risk_rows_to_json(const std::vector<RiskRow>& rows) {
    json arr = json::array();
    for (const RiskRow& row : rows) {
        arr.push_back(json{{"gamma", row.gamma},
                           {"var", row.fitted.var},
                           {"tvar", row.fitted.tvar},
                           {"var_empirical", row.empirical.var},
                           {"tvar_empirical", row.empirical.tvar},
                           {"var_ci", {row.bands.var.lo, row.bands.var.hi}},
                           {"tvar_ci", {row.bands.tvar.lo, row.bands.tvar.hi}},
                           {"var_in_ci", row.var_in_band},
                           {"tvar_in_ci", row.tvar_in_band}});
    }
    return arr;
}

}  // namespace maxent
