#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "maxentloss/model.hpp"
#include "maxentloss/risk.hpp"
#include "maxentloss/solver.hpp"

namespace maxent {

// Everything a run needs; a run is reproducible from this struct alone.
// Serialized as JSON (see cases/ for the five study configs).
struct RunConfig {
    CaseSpec spec{CompoundModel{3.0, 0.0, 0.25}, 8000, 1500, "case1"};
    std::string method = "both";  // sme | mem | both
    std::size_t K = 8;
    double alpha_scale = 1.5;     // alpha_i = alpha_scale / i
    std::size_t M = 200;          // MEM partition size
    double eta = 2.0;             // MEM reference intensity
    SolverOptions solver;
    std::vector<double> gammas;   // empty -> default ladder
    std::size_t bins = 0;         // 0 -> Freedman-Diaconis
    int resample_B = 1000;
    double resample_frac = 0.9;
    std::uint64_t seed = 20260814;
    // Draw the test set as an independent sample (true) or split it off the
    // observed one (false).
    bool independent_test = true;
    std::string out_dir = "out";

    void validate() const;  // throws InputError
};

RunConfig config_from_json_text(const std::string& text);
RunConfig load_config(const std::string& path);
std::string config_to_json_text(const RunConfig& cfg);

// FNV-1a over the canonical JSON form; recorded in the manifest so stale
// artifacts from a different config are detectable.
std::uint64_t config_hash(const RunConfig& cfg);

// Pipeline stages.  Each writes its artifacts under cfg.out_dir and updates
// manifest.json; downstream stages fail with a dependency error when an
// upstream artifact is missing.  All names they write:
//   simulate    sample.csv, sample_test.csv
//   moments     moments.json
//   fit         fit_sme.json / fit_mem.json, density_sme.csv / density_mem.csv
//   validate    gof_sme.json / gof_mem.json, plotdata/*.csv
//   risk        risk_sme.csv / risk_mem.csv
//   decompound  severity_sme.csv / severity_mem.csv, severity_summary.json
//   report      report.json + the paper-style tables (errors_*.csv,
//               stats_*.csv, var_table.csv, tvar_table.csv,
//               decompound_table.csv) after running all stages above
void cmd_simulate(const RunConfig& cfg);
void cmd_moments(const RunConfig& cfg);
void cmd_fit(const RunConfig& cfg);
void cmd_validate(const RunConfig& cfg);
void cmd_risk(const RunConfig& cfg);
void cmd_decompound(const RunConfig& cfg);
void cmd_report(const RunConfig& cfg);

// Dispatch by name ("simulate", ..., "report").  Unknown -> InputError.
void run_command(const std::string& command, const RunConfig& cfg);

}  // namespace maxent
