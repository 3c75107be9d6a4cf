// Python bindings for the maxent loss toolkit.  Thin wrappers only: the
// numerics live in the core library, and every exposed call matches the C++
// signature except that `lambda` fields surface as `multipliers` (Python
// reserves the word).
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "maxentloss/decompound.hpp"
#include "maxentloss/density.hpp"
#include "maxentloss/errors.hpp"
#include "maxentloss/mem.hpp"
#include "maxentloss/model.hpp"
#include "maxentloss/moments.hpp"
#include "maxentloss/risk.hpp"
#include "maxentloss/runner.hpp"
#include "maxentloss/sme.hpp"
#include "maxentloss/solver.hpp"
#include "maxentloss/validation.hpp"

namespace py = pybind11;
using namespace maxent;

PYBIND11_MODULE(maxentloss, m) {
    m.doc() = "Maximum-entropy reconstruction of compound loss densities";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "SolverConvergenceError", PyExc_RuntimeError);

    // --- model ---------------------------------------------------------
    py::class_<CompoundModel>(m, "CompoundModel")
        .def(py::init<double, double, double>(), py::arg("ell"), py::arg("mu") = 0.0,
             py::arg("sigma") = 1.0)
        .def_readwrite("ell", &CompoundModel::ell)
        .def_readwrite("mu", &CompoundModel::mu)
        .def_readwrite("sigma", &CompoundModel::sigma)
        .def("atom", &CompoundModel::atom)
        .def("validate", &CompoundModel::validate);

    py::class_<LossSample>(m, "LossSample")
        .def(py::init<std::vector<double>>(), py::arg("values"))
        .def("__len__", &LossSample::size)
        .def_property_readonly("values", &LossSample::values)
        .def_property_readonly("sorted", &LossSample::sorted)
        .def("zero_count", &LossSample::zero_count)
        .def("zero_fraction", &LossSample::zero_fraction)
        .def("positives", &LossSample::positives)
        .def("sorted_positives", &LossSample::sorted_positives)
        .def("mean", &LossSample::mean);

    py::class_<CaseSpec>(m, "CaseSpec")
        .def(py::init<>())
        .def_readwrite("model", &CaseSpec::model)
        .def_readwrite("n_observed", &CaseSpec::n_observed)
        .def_readwrite("n_test", &CaseSpec::n_test)
        .def_readwrite("label", &CaseSpec::label);

    m.def("simulate_compound", &simulate_compound, py::arg("model"), py::arg("n"),
          py::arg("seed"));
    m.def("split_observed_test", &split_observed_test, py::arg("sample"), py::arg("n_test"),
          py::arg("seed"));

    // --- moments -------------------------------------------------------
    py::class_<AlphaGrid>(m, "AlphaGrid")
        .def(py::init<std::vector<double>>(), py::arg("alphas"))
        .def_static("harmonic", &AlphaGrid::harmonic, py::arg("K"), py::arg("scale") = 1.5)
        .def("__len__", &AlphaGrid::size)
        .def("__getitem__",
             [](const AlphaGrid& g, std::size_t i) {
                 if (i >= g.size()) throw py::index_error();
                 return g[i];
             })
        .def_property_readonly("K", &AlphaGrid::K)
        .def_property_readonly("values", &AlphaGrid::values);

    py::class_<FractionalMoments>(m, "FractionalMoments")
        .def_readonly("grid", &FractionalMoments::grid)
        .def_readonly("mu", &FractionalMoments::mu)
        .def_readonly("psi", &FractionalMoments::psi)
        .def_readonly("ell", &FractionalMoments::ell)
        .def_readonly("n", &FractionalMoments::n);

    m.def("empirical_laplace", &empirical_laplace, py::arg("sample"), py::arg("alpha"));
    m.def("conditional_moments",
          py::overload_cast<const LossSample&, const AlphaGrid&, double>(&conditional_moments),
          py::arg("sample"), py::arg("grid"), py::arg("ell"));
    m.def("conditional_moments",
          py::overload_cast<const LossSample&, const AlphaGrid&>(&conditional_moments),
          py::arg("sample"), py::arg("grid"));

    // --- solver options --------------------------------------------------
    py::class_<SolverOptions>(m, "SolverOptions")
        .def(py::init<>())
        .def_readwrite("grad_tol", &SolverOptions::grad_tol)
        .def_readwrite("moment_tol", &SolverOptions::moment_tol)
        .def_readwrite("max_iter", &SolverOptions::max_iter)
        .def_readwrite("newton_iter", &SolverOptions::newton_iter)
        .def_readwrite("throw_on_failure", &SolverOptions::throw_on_failure);

    // --- densities -------------------------------------------------------
    py::class_<DensityOnS>(m, "DensityOnS")
        .def("valid", &DensityOnS::valid)
        .def("pdf", &DensityOnS::pdf, py::arg("s"))
        .def("cdf", &DensityOnS::cdf, py::arg("s"))
        .def("pdf_y", &DensityOnS::pdf_y, py::arg("y"))
        .def("cdf_y", &DensityOnS::cdf_y, py::arg("y"))
        .def("y_moment", &DensityOnS::y_moment, py::arg("alpha"))
        .def("total_mass", &DensityOnS::total_mass)
        .def("quantile", &DensityOnS::quantile, py::arg("gamma"))
        .def("upper_bound", &DensityOnS::upper_bound, py::arg("tail_mass") = 1e-10);

    // --- SME -------------------------------------------------------------
    py::class_<SmeDensity>(m, "SmeDensity")
        .def_readonly("grid", &SmeDensity::grid)
        .def_readonly("multipliers", &SmeDensity::lambda)
        .def_readonly("residuals", &SmeDensity::residuals)
        .def_readonly("iterations", &SmeDensity::iterations)
        .def_readonly("grad_norm", &SmeDensity::grad_norm)
        .def("density_y", &SmeDensity::density_y, py::arg("y"));

    m.def(
        "partition_function",
        [](const std::vector<double>& lam, const AlphaGrid& grid) {
            return partition_function(lam, grid);
        },
        py::arg("multipliers"), py::arg("grid"));
    m.def(
        "dual_objective",
        [](const std::vector<double>& lam, const FractionalMoments& mom) {
            return dual_objective(lam, mom);
        },
        py::arg("multipliers"), py::arg("moments"));
    m.def(
        "dual_gradient",
        [](const std::vector<double>& lam, const FractionalMoments& mom) {
            return dual_gradient(lam, mom);
        },
        py::arg("multipliers"), py::arg("moments"));
    m.def("fit_sme", &fit_sme, py::arg("moments"), py::arg("options") = SolverOptions{});
    m.def("density_on_s", &density_on_s, py::arg("fit"));

    // --- MEM -------------------------------------------------------------
    py::class_<DesignMatrix>(m, "DesignMatrix")
        .def_readonly("M", &DesignMatrix::M)
        .def_readonly("grid", &DesignMatrix::grid)
        .def("at", &DesignMatrix::at, py::arg("i"), py::arg("j"))
        .def("midpoint", &DesignMatrix::midpoint, py::arg("j"));
    m.def("build_design_matrix", &build_design_matrix, py::arg("M"), py::arg("grid"));

    py::class_<MemOptions>(m, "MemOptions")
        .def(py::init<>())
        .def_readwrite("M", &MemOptions::M)
        .def_readwrite("eta", &MemOptions::eta)
        .def_readwrite("solver", &MemOptions::solver);

    py::class_<MemSolution>(m, "MemSolution")
        .def_readonly("design", &MemSolution::design)
        .def_readonly("eta", &MemSolution::eta)
        .def_readonly("multipliers", &MemSolution::lambda)
        .def_readonly("x", &MemSolution::x)
        .def_readonly("residuals", &MemSolution::residuals)
        .def_readonly("iterations", &MemSolution::iterations)
        .def_readonly("grad_norm", &MemSolution::grad_norm)
        .def("density_at_midpoint", &MemSolution::density_at_midpoint, py::arg("j"));

    m.def(
        "mem_dual",
        [](const std::vector<double>& lam, const FractionalMoments& mom,
           const DesignMatrix& design, double eta) { return mem_dual(lam, mom, design, eta); },
        py::arg("multipliers"), py::arg("moments"), py::arg("design"), py::arg("eta") = 2.0);
    m.def(
        "mem_dual_gradient",
        [](const std::vector<double>& lam, const FractionalMoments& mom,
           const DesignMatrix& design, double eta) {
            return mem_dual_gradient(lam, mom, design, eta);
        },
        py::arg("multipliers"), py::arg("moments"), py::arg("design"), py::arg("eta") = 2.0);
    m.def("fit_mem", &fit_mem, py::arg("moments"), py::arg("options") = MemOptions{});
    m.def("interpolate_density", &interpolate_density, py::arg("fit"));

    // --- validation ------------------------------------------------------
    py::class_<HistogramSpec>(m, "HistogramSpec")
        .def_static("freedman_diaconis", &HistogramSpec::freedman_diaconis,
                    py::arg("sorted_positives"))
        .def_static("equal_width", &HistogramSpec::equal_width, py::arg("lo"), py::arg("hi"),
                    py::arg("bins"))
        .def_readonly("edges", &HistogramSpec::edges)
        .def("bins", &HistogramSpec::bins);

    py::class_<DensityDistances>(m, "DensityDistances")
        .def_readonly("l1", &DensityDistances::l1)
        .def_readonly("l2", &DensityDistances::l2);
    py::class_<CdfDistances>(m, "CdfDistances")
        .def_readonly("mae", &CdfDistances::mae)
        .def_readonly("rmse", &CdfDistances::rmse)
        .def_readonly("max_abs", &CdfDistances::max_abs);
    m.def("density_distances", &density_distances, py::arg("fit"), py::arg("sample"),
          py::arg("bins"));
    m.def("cdf_distances", &cdf_distances, py::arg("fit"), py::arg("sample"));
    m.def("pit_values", &pit_values, py::arg("fit"), py::arg("sample"));

    py::class_<TestResult>(m, "TestResult")
        .def_readonly("name", &TestResult::name)
        .def_readonly("statistic", &TestResult::statistic)
        .def_readonly("critical_95", &TestResult::critical_95)
        .def_readonly("critical_99", &TestResult::critical_99)
        .def_readonly("reject_95", &TestResult::reject_95)
        .def_readonly("reject_99", &TestResult::reject_99);
    m.def("ks_test", &ks_test, py::arg("pit"));
    m.def("ad_test", &ad_test, py::arg("pit"));
    m.def("cvm_test", &cvm_test, py::arg("pit"));
    m.def("berkowitz_test", &berkowitz_test, py::arg("pit"));
    m.def("jarque_bera_test", &jarque_bera_test, py::arg("z"));
    m.def("robust_jarque_bera_test", &robust_jarque_bera_test, py::arg("z"));

    py::class_<Correlogram>(m, "Correlogram")
        .def_readonly("power", &Correlogram::power)
        .def_readonly("r", &Correlogram::r)
        .def_readonly("band", &Correlogram::band)
        .def_readonly("degenerate", &Correlogram::degenerate)
        .def("exceedances", &Correlogram::exceedances);
    m.def("pit_correlogram", &pit_correlogram, py::arg("pit"), py::arg("power"),
          py::arg("max_lag"));
    m.def("reliability_points", &reliability_points, py::arg("fit"), py::arg("sample"));
    m.def("marginal_calibration_points", &marginal_calibration_points, py::arg("fit"),
          py::arg("sample"));

    py::class_<GofReport>(m, "GofReport")
        .def_readonly("density", &GofReport::density)
        .def_readonly("cdf", &GofReport::cdf)
        .def_readonly("ks", &GofReport::ks)
        .def_readonly("ad", &GofReport::ad)
        .def_readonly("cvm", &GofReport::cvm)
        .def_readonly("berkowitz", &GofReport::berkowitz)
        .def_readonly("jb", &GofReport::jb)
        .def_readonly("rjb", &GofReport::rjb)
        .def_readonly("acf1", &GofReport::acf1)
        .def_readonly("acf2", &GofReport::acf2)
        .def_readonly("acf3", &GofReport::acf3)
        .def_readonly("reliability", &GofReport::reliability)
        .def_readonly("calibration", &GofReport::calibration)
        .def_readonly("n_positive", &GofReport::n_positive);
    m.def(
        "evaluate_gof",
        [](const DensityOnS& fit, const LossSample& test, std::optional<HistogramSpec> bins,
           std::size_t max_lag) {
            return evaluate_gof(fit, test, bins ? &*bins : nullptr, max_lag);
        },
        py::arg("fit"), py::arg("test"), py::arg("bins") = std::nullopt,
        py::arg("max_lag") = 20);

    // --- risk --------------------------------------------------------------
    py::class_<Interval>(m, "Interval")
        .def_readonly("lo", &Interval::lo)
        .def_readonly("hi", &Interval::hi)
        .def("contains", &Interval::contains, py::arg("v"))
        .def("width", &Interval::width);
    py::class_<RiskMeasures>(m, "RiskMeasures")
        .def_readonly("var", &RiskMeasures::var)
        .def_readonly("tvar", &RiskMeasures::tvar);
    py::class_<RiskBands>(m, "RiskBands")
        .def_readonly("var", &RiskBands::var)
        .def_readonly("tvar", &RiskBands::tvar);
    py::class_<RiskRow>(m, "RiskRow")
        .def_readonly("gamma", &RiskRow::gamma)
        .def_readonly("fitted", &RiskRow::fitted)
        .def_readonly("empirical", &RiskRow::empirical)
        .def_readonly("bands", &RiskRow::bands)
        .def_readonly("var_in_band", &RiskRow::var_in_band)
        .def_readonly("tvar_in_band", &RiskRow::tvar_in_band);
    m.def("risk_from_density", &risk_from_density, py::arg("fit"), py::arg("gamma"));
    m.def("empirical_risk", &empirical_risk, py::arg("sample"), py::arg("gamma"));
    m.def("resample_risk_bands", &resample_risk_bands, py::arg("sample"), py::arg("gamma"),
          py::arg("B") = 1000, py::arg("frac") = 0.9, py::arg("seed") = 20260814ull);
    m.def("risk_ladder", &risk_ladder, py::arg("fit"), py::arg("sample"), py::arg("gammas"),
          py::arg("B") = 1000, py::arg("frac") = 0.9, py::arg("seed") = 20260814ull);
    m.def("default_gamma_ladder", &default_gamma_ladder);

    // --- decompounding ------------------------------------------------------
    py::class_<DecompoundResult>(m, "DecompoundResult")
        .def_readonly("psi", &DecompoundResult::psi)
        .def_readonly("phi", &DecompoundResult::phi)
        .def_readonly("sigma", &DecompoundResult::sigma)
        .def_readonly("severity", &DecompoundResult::severity);
    m.def("aggregate_laplace", &aggregate_laplace, py::arg("fit"), py::arg("grid"),
          py::arg("ell"));
    m.def("severity_moments", &severity_moments, py::arg("psi"), py::arg("grid"),
          py::arg("ell"));
    m.def("severity_noise", &severity_noise, py::arg("aggregate_fit"), py::arg("grid"),
          py::arg("ell"), py::arg("sample_size"));
    m.def("decompound_sme", &decompound_sme, py::arg("aggregate_fit"), py::arg("grid"),
          py::arg("ell"), py::arg("options") = SolverOptions{}, py::arg("sample_size") = 0);
    m.def("decompound_mem", &decompound_mem, py::arg("aggregate_fit"), py::arg("grid"),
          py::arg("ell"), py::arg("options") = MemOptions{}, py::arg("sample_size") = 0);

    // --- pipeline ------------------------------------------------------------
    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("spec", &RunConfig::spec)
        .def_readwrite("method", &RunConfig::method)
        .def_readwrite("K", &RunConfig::K)
        .def_readwrite("alpha_scale", &RunConfig::alpha_scale)
        .def_readwrite("M", &RunConfig::M)
        .def_readwrite("eta", &RunConfig::eta)
        .def_readwrite("solver", &RunConfig::solver)
        .def_readwrite("gammas", &RunConfig::gammas)
        .def_readwrite("bins", &RunConfig::bins)
        .def_readwrite("resample_B", &RunConfig::resample_B)
        .def_readwrite("resample_frac", &RunConfig::resample_frac)
        .def_readwrite("seed", &RunConfig::seed)
        .def_readwrite("independent_test", &RunConfig::independent_test)
        .def_readwrite("out_dir", &RunConfig::out_dir)
        .def("validate", &RunConfig::validate);
    m.def("load_config", &load_config, py::arg("path"));
    m.def("config_from_json_text", &config_from_json_text, py::arg("text"));
    m.def("config_to_json_text", &config_to_json_text, py::arg("config"));
    m.def("config_hash", &config_hash, py::arg("config"));
    m.def("run_command", &run_command, py::arg("command"), py::arg("config"));
}
