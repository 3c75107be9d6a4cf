#include "maxentloss/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "maxentloss/decompound.hpp"
#include "maxentloss/errors.hpp"
#include "maxentloss/rng.hpp"
#include "maxentloss/serialize.hpp"
#include "maxentloss/special.hpp"

namespace maxent {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
}

json read_json_file(const fs::path& path, const std::string& needed_by) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("missing artifact " + path.string() + " required by '" +
                         needed_by + "'; run the upstream command first");
    }
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError("cannot parse " + path.string() + ": " + e.what());
    }
    return j;
}

AlphaGrid grid_for(const RunConfig& cfg) {
    return AlphaGrid::harmonic(cfg.K, cfg.alpha_scale);
}

std::vector<std::string> methods_for(const RunConfig& cfg) {
    if (cfg.method == "both") return {"sme", "mem"};
    return {cfg.method};
}

std::vector<double> gammas_for(const RunConfig& cfg) {
    return cfg.gammas.empty() ? default_gamma_ladder() : cfg.gammas;
}

// Load a fitted density back from the fit artifact of either method.
DensityOnS density_from_artifact(const RunConfig& cfg, const std::string& method) {
    const fs::path path = fs::path(cfg.out_dir) / ("fit_" + method + ".json");
    const json j = read_json_file(path, "downstream of fit");
    if (method == "sme") return density_on_s(sme_from_json(j));
    return interpolate_density(mem_from_json(j));
}

LossSample sample_from_artifact(const RunConfig& cfg, const std::string& name,
                                const std::string& needed_by) {
    const fs::path path = fs::path(cfg.out_dir) / name;
    if (!fs::exists(path)) {
        throw InputError("missing artifact " + path.string() + " required by '" +
                         needed_by + "'; run the upstream command first");
    }
    return read_losses_csv_file(path.string());
}

void update_manifest(const RunConfig& cfg, const std::string& command,
                     const std::vector<std::string>& artifacts) {
    const fs::path path = fs::path(cfg.out_dir) / "manifest.json";
    json manifest;
    if (fs::exists(path)) {
        std::ifstream in(path);
        try {
            in >> manifest;
        } catch (const std::exception&) {
            manifest = json::object();  // rebuild a corrupted manifest
        }
    }
    const std::uint64_t hash = config_hash(cfg);
    char hash_hex[20];
    std::snprintf(hash_hex, sizeof hash_hex, "%016llx",
                  static_cast<unsigned long long>(hash));
    if (manifest.value("config_hash", "") != hash_hex) {
        manifest = json::object();  // artifacts belong to a different config
    }
    manifest["config"] = config_to_json(cfg);
    manifest["config_hash"] = hash_hex;
    manifest["seed"] = cfg.seed;
    manifest["last_command"] = command;
    std::vector<std::string> all =
        manifest.value("artifacts", std::vector<std::string>{});
    all.insert(all.end(), artifacts.begin(), artifacts.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    manifest["artifacts"] = all;
    const std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    manifest["generated_at"] = stamp;
    write_text(path, manifest.dump(2) + "\n");
}

void write_density_csv(const fs::path& path, const DensityOnS& density) {
    const double upper = density.upper_bound(1e-9);
    std::ostringstream out;
    out << "s,pdf,cdf\n";
    const int points = 400;
    for (int i = 0; i <= points; ++i) {
        const double s = upper * static_cast<double>(i) / points;
        out << fmt(s) << ',' << fmt(density.pdf(s)) << ',' << fmt(density.cdf(s))
            << '\n';
    }
    write_text(path, out.str());
}

HistogramSpec bins_for(const RunConfig& cfg, const std::vector<double>& sorted_positives) {
    if (cfg.bins > 0) {
        return HistogramSpec::equal_width(sorted_positives.front(),
                                          sorted_positives.back(), cfg.bins);
    }
    return HistogramSpec::freedman_diaconis(sorted_positives);
}

// Lognormal severity density/CDF of the generative model, for the
// decompounding comparison tables.
double lognormal_pdf(double x, double mu, double sigma) {
    if (!(x > 0.0)) return 0.0;
    const double z = (std::log(x) - mu) / sigma;
    return std::exp(-0.5 * z * z) / (x * sigma * std::sqrt(2.0 * M_PI));
}

struct SeverityComparison {
    double l1 = 0.0;        // vs the true lognormal density
    double l2 = 0.0;
    double mae = 0.0;       // vs the ECDF of a simulated severity sample
    double rmse = 0.0;
    double l1_observed = 0.0;  // vs the histogram of that sample
    double l2_observed = 0.0;
};

SeverityComparison compare_severity(const DensityOnS& severity, const CompoundModel& model,
                                    const LossSample& severity_sample,
                                    const HistogramSpec& bins) {
    SeverityComparison cmp;
    const double upper =
        std::max(severity.upper_bound(1e-10),
                 std::exp(model.mu + model.sigma * normal_quantile(1.0 - 1e-10)));
    const CompositeRule rule = CompositeRule::uniform(1e-12, upper, 64, 16);
    cmp.l1 = rule.integrate([&](double x) {
        return std::abs(severity.pdf(x) - lognormal_pdf(x, model.mu, model.sigma));
    });
    cmp.l2 = std::sqrt(rule.integrate([&](double x) {
        const double d = severity.pdf(x) - lognormal_pdf(x, model.mu, model.sigma);
        return d * d;
    }));
    const CdfDistances cdf = cdf_distances(severity, severity_sample);
    cmp.mae = cdf.mae;
    cmp.rmse = cdf.rmse;
    const DensityDistances dens = density_distances(severity, severity_sample, bins);
    cmp.l1_observed = dens.l1;
    cmp.l2_observed = dens.l2;
    return cmp;
}

}  // namespace

void RunConfig::validate() const {
    spec.model.validate();
    if (spec.n_observed < 1) throw InputError("config: n_observed must be >= 1");
    if (spec.label.empty()) throw InputError("config: case label must be set");
    if (method != "sme" && method != "mem" && method != "both") {
        throw InputError("config: method must be sme, mem or both");
    }
    if (K < 1) throw InputError("config: K must be >= 1");
    if (!(alpha_scale > 0.0)) throw InputError("config: alpha_scale must be positive");
    if (M < 2) throw InputError("config: M must be >= 2");
    if (!(eta > 0.0)) throw InputError("config: eta must be positive");
    if (!(solver.grad_tol > 0.0) || !(solver.moment_tol > 0.0)) {
        throw InputError("config: solver tolerances must be positive");
    }
    if (solver.max_iter < 1) throw InputError("config: max_iter must be >= 1");
    for (double g : gammas) {
        if (!(g > 0.0 && g < 1.0)) throw InputError("config: gammas must lie in (0,1)");
    }
    if (resample_B < 100) throw InputError("config: resample_B must be >= 100");
    if (!(resample_frac > 0.0 && resample_frac <= 1.0)) {
        throw InputError("config: resample_frac must lie in (0,1]");
    }
    if (out_dir.empty()) throw InputError("config: out_dir must be set");
}

RunConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw InputError(std::string("config: invalid JSON: ") + e.what());
    }
    return config_from_json(j);
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return config_from_json_text(buf.str());
}

std::string config_to_json_text(const RunConfig& cfg) {
    return config_to_json(cfg).dump(2) + "\n";
}

std::uint64_t config_hash(const RunConfig& cfg) {
    const std::string text = config_to_json(cfg).dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void cmd_simulate(const RunConfig& cfg) {
    cfg.validate();
    fs::create_directories(cfg.out_dir);
    LossSample observed, test;
    if (cfg.independent_test) {
        observed = simulate_compound(cfg.spec.model, cfg.spec.n_observed,
                                     derive_seed(cfg.seed, "observed"));
        if (cfg.spec.n_test > 0) {
            test = simulate_compound(cfg.spec.model, cfg.spec.n_test,
                                     derive_seed(cfg.seed, "test"));
        }
    } else {
        LossSample joint = simulate_compound(cfg.spec.model,
                                             cfg.spec.n_observed + cfg.spec.n_test,
                                             derive_seed(cfg.seed, "joint"));
        std::tie(observed, test) = split_observed_test(joint, cfg.spec.n_test, cfg.seed);
    }
    std::vector<std::string> artifacts{"sample.csv"};
    {
        std::ostringstream out;
        write_losses_csv(out, observed);
        write_text(fs::path(cfg.out_dir) / "sample.csv", out.str());
    }
    if (!test.empty()) {
        std::ostringstream out;
        write_losses_csv(out, test);
        write_text(fs::path(cfg.out_dir) / "sample_test.csv", out.str());
        artifacts.push_back("sample_test.csv");
    }
    update_manifest(cfg, "simulate", artifacts);
}

void cmd_moments(const RunConfig& cfg) {
    cfg.validate();
    const LossSample observed = sample_from_artifact(cfg, "sample.csv", "moments");
    const FractionalMoments moments =
        conditional_moments(observed, grid_for(cfg), cfg.spec.model.ell);
    json j = moments_to_json(moments);
    // Diagnostic: the sample's own zero fraction next to the model atom.
    j["zero_fraction"] = observed.zero_fraction();
    j["atom"] = cfg.spec.model.atom();
    write_text(fs::path(cfg.out_dir) / "moments.json", j.dump(2) + "\n");
    update_manifest(cfg, "moments", {"moments.json"});
}

void cmd_fit(const RunConfig& cfg) {
    cfg.validate();
    const json mj = read_json_file(fs::path(cfg.out_dir) / "moments.json", "fit");
    const FractionalMoments moments = moments_from_json(mj);
    std::vector<std::string> artifacts;
    for (const std::string& method : methods_for(cfg)) {
        if (method == "sme") {
            const SmeDensity fit = fit_sme(moments, cfg.solver);
            write_text(fs::path(cfg.out_dir) / "fit_sme.json",
                       sme_to_json(fit).dump(2) + "\n");
            write_density_csv(fs::path(cfg.out_dir) / "density_sme.csv",
                              density_on_s(fit));
        } else {
            const MemSolution fit = fit_mem(moments, {cfg.M, cfg.eta, cfg.solver});
            write_text(fs::path(cfg.out_dir) / "fit_mem.json",
                       mem_to_json(fit).dump(2) + "\n");
            write_density_csv(fs::path(cfg.out_dir) / "density_mem.csv",
                              interpolate_density(fit));
        }
        artifacts.push_back("fit_" + method + ".json");
        artifacts.push_back("density_" + method + ".csv");
    }
    update_manifest(cfg, "fit", artifacts);
}

void cmd_validate(const RunConfig& cfg) {
    cfg.validate();
    const LossSample test = sample_from_artifact(cfg, "sample_test.csv", "validate");
    fs::create_directories(fs::path(cfg.out_dir) / "plotdata");
    std::vector<std::string> artifacts;
    const std::vector<double> pos = test.sorted_positives();
    const HistogramSpec bins = bins_for(cfg, pos);
    for (const std::string& method : methods_for(cfg)) {
        const DensityOnS density = density_from_artifact(cfg, method);
        const GofReport report = evaluate_gof(density, test, &bins);
        write_text(fs::path(cfg.out_dir) / ("gof_" + method + ".json"),
                   gof_to_json(report).dump(2) + "\n");
        artifacts.push_back("gof_" + method + ".json");

        // Tidy plot data.  PIT histogram over 20 equal cells:
        const std::vector<double> pit = pit_values(density, test);
        {
            std::ostringstream out;
            out << "bin_lo,bin_hi,count,density\n";
            const std::size_t cells = 20;
            std::vector<std::size_t> counts(cells, 0);
            for (double p : pit) {
                auto c = static_cast<std::size_t>(p * static_cast<double>(cells));
                if (c >= cells) c = cells - 1;
                ++counts[c];
            }
            for (std::size_t c = 0; c < cells; ++c) {
                const double lo = static_cast<double>(c) / cells;
                const double hi = static_cast<double>(c + 1) / cells;
                const double dens = static_cast<double>(counts[c]) * cells /
                                    static_cast<double>(pit.size());
                out << fmt(lo) << ',' << fmt(hi) << ',' << counts[c] << ','
                    << fmt(dens) << '\n';
            }
            write_text(fs::path(cfg.out_dir) / "plotdata" / ("pit_hist_" + method + ".csv"),
                       out.str());
            artifacts.push_back("plotdata/pit_hist_" + method + ".csv");
        }
        {
            std::ostringstream out;
            out << "lag,r1,r2,r3,band\n";
            for (std::size_t h = 0; h < report.acf1.r.size(); ++h) {
                out << (h + 1) << ',' << fmt(report.acf1.r[h]) << ','
                    << fmt(report.acf2.r[h]) << ',' << fmt(report.acf3.r[h]) << ','
                    << fmt(report.acf1.band) << '\n';
            }
            write_text(fs::path(cfg.out_dir) / "plotdata" / ("acf_" + method + ".csv"),
                       out.str());
            artifacts.push_back("plotdata/acf_" + method + ".csv");
        }
        {
            std::ostringstream out;
            out << "f_empirical,f_fitted\n";
            for (const auto& pt : report.reliability) {
                out << fmt(pt[0]) << ',' << fmt(pt[1]) << '\n';
            }
            write_text(fs::path(cfg.out_dir) / "plotdata" /
                           ("reliability_" + method + ".csv"),
                       out.str());
            artifacts.push_back("plotdata/reliability_" + method + ".csv");
        }
        {
            std::ostringstream out;
            out << "s,cdf_diff\n";
            for (const auto& pt : report.calibration) {
                out << fmt(pt[0]) << ',' << fmt(pt[1]) << '\n';
            }
            write_text(fs::path(cfg.out_dir) / "plotdata" /
                           ("calibration_" + method + ".csv"),
                       out.str());
            artifacts.push_back("plotdata/calibration_" + method + ".csv");
        }
        {
            // Histogram vs fitted density, per bin.
            std::ostringstream out;
            out << "bin_lo,bin_hi,f_n,f_fit\n";
            std::vector<double> counts(bins.bins(), 0.0);
            for (double s : pos) {
                auto it = std::upper_bound(bins.edges.begin(), bins.edges.end(), s);
                std::size_t k = static_cast<std::size_t>(it - bins.edges.begin());
                k = (k == 0) ? 0 : k - 1;
                if (k >= bins.bins()) k = bins.bins() - 1;
                counts[k] += 1.0;
            }
            for (std::size_t k = 0; k < bins.bins(); ++k) {
                const double lo = bins.edges[k], hi = bins.edges[k + 1];
                const double width = hi - lo;
                const double f_n =
                    counts[k] / (static_cast<double>(pos.size()) * width);
                const double f_fit = (density.cdf(hi) - density.cdf(lo)) / width;
                out << fmt(lo) << ',' << fmt(hi) << ',' << fmt(f_n) << ','
                    << fmt(f_fit) << '\n';
            }
            write_text(fs::path(cfg.out_dir) / "plotdata" / ("overlay_" + method + ".csv"),
                       out.str());
            artifacts.push_back("plotdata/overlay_" + method + ".csv");
        }
    }
    update_manifest(cfg, "validate", artifacts);
}

namespace {

std::string risk_csv(const std::vector<RiskRow>& rows) {
    std::ostringstream out;
    out << "gamma,var,tvar,var_empirical,tvar_empirical,var_ci_lo,var_ci_hi,"
           "tvar_ci_lo,tvar_ci_hi,var_in_ci,tvar_in_ci\n";
    for (const RiskRow& row : rows) {
        out << fmt(row.gamma) << ',' << fmt(row.fitted.var) << ',' << fmt(row.fitted.tvar)
            << ',' << fmt(row.empirical.var) << ',' << fmt(row.empirical.tvar) << ','
            << fmt(row.bands.var.lo) << ',' << fmt(row.bands.var.hi) << ','
            << fmt(row.bands.tvar.lo) << ',' << fmt(row.bands.tvar.hi) << ','
            << (row.var_in_band ? 1 : 0) << ',' << (row.tvar_in_band ? 1 : 0) << '\n';
    }
    return out.str();
}

}  // namespace

void cmd_risk(const RunConfig& cfg) {
    cfg.validate();
    const LossSample observed = sample_from_artifact(cfg, "sample.csv", "risk");
    const std::vector<double> gammas = gammas_for(cfg);
    std::vector<std::string> artifacts;
    for (const std::string& method : methods_for(cfg)) {
        const DensityOnS density = density_from_artifact(cfg, method);
        const std::vector<RiskRow> rows =
            risk_ladder(density, observed, gammas, cfg.resample_B, cfg.resample_frac,
                        derive_seed(cfg.seed, "risk"));
        write_text(fs::path(cfg.out_dir) / ("risk_" + method + ".csv"), risk_csv(rows));
        artifacts.push_back("risk_" + method + ".csv");
    }
    update_manifest(cfg, "risk", artifacts);
}

void cmd_decompound(const RunConfig& cfg) {
    cfg.validate();
    const AlphaGrid grid = grid_for(cfg);
    const double ell = cfg.spec.model.ell;
    // The comparison sample of individual losses, simulated from the known
    // severity model (the decompounding itself never sees it).
    LossSample severity_sample = [&] {
        Rng rng(derive_seed(cfg.seed, "severity"));
        std::vector<double> draws(cfg.spec.n_observed);
        for (double& d : draws) {
            d = lognormal_draw(rng, cfg.spec.model.mu, cfg.spec.model.sigma);
        }
        return LossSample(std::move(draws), cfg.seed);
    }();
    const HistogramSpec bins =
        HistogramSpec::freedman_diaconis(severity_sample.sorted_positives());

    json summary;
    std::vector<std::string> artifacts;
    for (const std::string& method : methods_for(cfg)) {
        const DensityOnS aggregate = density_from_artifact(cfg, method);
        DecompoundResult result;
        if (method == "sme") {
            result = decompound_sme(aggregate, grid, ell, cfg.solver);
        } else {
            result = decompound_mem(aggregate, grid, ell, {cfg.M, cfg.eta, cfg.solver});
        }
        write_density_csv(fs::path(cfg.out_dir) / ("severity_" + method + ".csv"),
                          result.severity);
        artifacts.push_back("severity_" + method + ".csv");
        const SeverityComparison cmp =
            compare_severity(result.severity, cfg.spec.model, severity_sample, bins);
        summary[method] = json{{"psi", result.psi},
                               {"phi", result.phi},
                               {"l1_real", cmp.l1},
                               {"l2_real", cmp.l2},
                               {"l1_observed", cmp.l1_observed},
                               {"l2_observed", cmp.l2_observed},
                               {"mae", cmp.mae},
                               {"rmse", cmp.rmse}};
    }
    write_text(fs::path(cfg.out_dir) / "severity_summary.json", summary.dump(2) + "\n");
    artifacts.push_back("severity_summary.json");
    update_manifest(cfg, "decompound", artifacts);
}

void cmd_report(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.spec.n_test < 1) {
        throw InputError("report: the full pipeline needs n_test >= 1");
    }
    cmd_simulate(cfg);
    cmd_moments(cfg);
    cmd_fit(cfg);
    cmd_validate(cfg);
    cmd_risk(cfg);
    cmd_decompound(cfg);

    const LossSample observed = sample_from_artifact(cfg, "sample.csv", "report");
    const HistogramSpec bins = bins_for(cfg, observed.sorted_positives());
    json report;
    report["label"] = cfg.spec.label;
    std::vector<std::string> artifacts;

    std::vector<RiskRow> rows_by_method[2];
    const std::vector<std::string> methods = methods_for(cfg);
    for (std::size_t m = 0; m < methods.size(); ++m) {
        const std::string& method = methods[m];
        const DensityOnS density = density_from_artifact(cfg, method);

        // Error table against the observed sample (fit quality) ...
        const DensityDistances dens = density_distances(density, observed, bins);
        const CdfDistances cdf = cdf_distances(density, observed);
        std::ostringstream errors;
        errors << "set,l1,l2,mae,rmse\n";
        errors << "observed," << fmt(dens.l1) << ',' << fmt(dens.l2) << ','
               << fmt(cdf.mae) << ',' << fmt(cdf.rmse) << '\n';
        // ... and against the held-out test set (generalization).
        const json gof =
            read_json_file(fs::path(cfg.out_dir) / ("gof_" + method + ".json"), "report");
        errors << "test," << fmt(gof.at("l1").get<double>()) << ','
               << fmt(gof.at("l2").get<double>()) << ','
               << fmt(gof.at("mae").get<double>()) << ','
               << fmt(gof.at("rmse").get<double>()) << '\n';
        write_text(fs::path(cfg.out_dir) / ("errors_" + method + ".csv"), errors.str());
        artifacts.push_back("errors_" + method + ".csv");

        std::ostringstream stats;
        stats << "test,statistic,critical_95,critical_99,reject_95,reject_99\n";
        for (const char* name : {"ks", "ad", "cvm", "berkowitz", "jb", "rjb"}) {
            const json& t = gof.at(name);
            stats << name << ',' << fmt(t.at("statistic").get<double>()) << ','
                  << fmt(t.at("critical_95").get<double>()) << ','
                  << fmt(t.at("critical_99").get<double>()) << ','
                  << (t.at("reject_95").get<bool>() ? 1 : 0) << ','
                  << (t.at("reject_99").get<bool>() ? 1 : 0) << '\n';
        }
        write_text(fs::path(cfg.out_dir) / ("stats_" + method + ".csv"), stats.str());
        artifacts.push_back("stats_" + method + ".csv");

        report["errors"][method] = {{"observed",
                                     {{"l1", dens.l1},
                                      {"l2", dens.l2},
                                      {"mae", cdf.mae},
                                      {"rmse", cdf.rmse}}},
                                    {"test", gof}};

        rows_by_method[m] = risk_ladder(density, observed, gammas_for(cfg),
                                        cfg.resample_B, cfg.resample_frac,
                                        derive_seed(cfg.seed, "risk"));
        report["risk"][method] = risk_rows_to_json(rows_by_method[m]);
    }

    // Combined VaR/TVaR tables mirroring the published layout: fitted
    // estimates per method next to the empirical value and its band.
    if (methods.size() >= 1) {
        const bool both = methods.size() == 2;
        for (const bool tvar : {false, true}) {
            std::ostringstream out;
            out << "gamma," << (both ? "sme,mem" : methods[0])
                << ",empirical,ci_lo,ci_hi\n";
            const auto& base = rows_by_method[0];
            for (std::size_t i = 0; i < base.size(); ++i) {
                const RiskRow& r0 = base[i];
                const double e0 = tvar ? r0.empirical.tvar : r0.empirical.var;
                const Interval& ci = tvar ? r0.bands.tvar : r0.bands.var;
                out << fmt(r0.gamma) << ','
                    << fmt(tvar ? r0.fitted.tvar : r0.fitted.var);
                if (both) {
                    const RiskRow& r1 = rows_by_method[1][i];
                    out << ',' << fmt(tvar ? r1.fitted.tvar : r1.fitted.var);
                }
                out << ',' << fmt(e0) << ',' << fmt(ci.lo) << ',' << fmt(ci.hi) << '\n';
            }
            const std::string name = tvar ? "tvar_table.csv" : "var_table.csv";
            write_text(fs::path(cfg.out_dir) / name, out.str());
            artifacts.push_back(name);
        }
    }

    const json severity =
        read_json_file(fs::path(cfg.out_dir) / "severity_summary.json", "report");
    report["decompound"] = severity;
    {
        std::ostringstream out;
        out << "method,l1_real,l2_real,l1_observed,l2_observed,mae,rmse\n";
        for (const std::string& method : methods) {
            const json& s = severity.at(method);
            out << method << ',' << fmt(s.at("l1_real").get<double>()) << ','
                << fmt(s.at("l2_real").get<double>()) << ','
                << fmt(s.at("l1_observed").get<double>()) << ','
                << fmt(s.at("l2_observed").get<double>()) << ','
                << fmt(s.at("mae").get<double>()) << ','
                << fmt(s.at("rmse").get<double>()) << '\n';
        }
        write_text(fs::path(cfg.out_dir) / "decompound_table.csv", out.str());
        artifacts.push_back("decompound_table.csv");
    }

    write_text(fs::path(cfg.out_dir) / "report.json", report.dump(2) + "\n");
    artifacts.push_back("report.json");
    update_manifest(cfg, "report", artifacts);
}

void run_command(const std::string& command, const RunConfig& cfg) {
    if (command == "simulate") return cmd_simulate(cfg);
    if (command == "moments") return cmd_moments(cfg);
    if (command == "fit") return cmd_fit(cfg);
    if (command == "validate") return cmd_validate(cfg);
    if (command == "risk") return cmd_risk(cfg);
    if (command == "decompound") return cmd_decompound(cfg);
    if (command == "report") return cmd_report(cfg);
    throw InputError("unknown command: " + command);
}

}  // namespace maxent
