#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "taskstop/estimate.hpp"
#include "taskstop/identify.hpp"
#include "taskstop/json_io.hpp"
#include "taskstop/rationalize.hpp"

namespace py = pybind11;
using namespace taskstop;

namespace {

Distribution distribution_from_string(const std::string& text) {
    return distribution_from_json(json::parse(text));
}

std::string distribution_to_string(const Distribution& f) {
    return distribution_to_json(f).dump();
}

}  // namespace

PYBIND11_MODULE(_taskstop, m) {
    m.doc() = "Quasi-hyperbolic task-completion problems: equilibria, welfare, "
              "rationalization, identification, estimation.";
    m.attr("MANDATORY") = kMandatory;

    py::enum_<Family>(m, "Family")
        .value("uniform", Family::uniform)
        .value("normal", Family::normal)
        .value("logistic", Family::logistic)
        .value("extreme_value", Family::extreme_value)
        .value("lognormal_negated", Family::lognormal_negated);

    py::class_<Distribution>(m, "Distribution")
        .def_static("discrete", &Distribution::discrete, py::arg("points"), py::arg("weights"))
        .def_static("point_mass", &Distribution::point_mass, py::arg("point"))
        .def_static("uniform", &Distribution::uniform, py::arg("lower"), py::arg("upper"))
        .def_static("normal", &Distribution::normal, py::arg("mean"), py::arg("sd"))
        .def_static("logistic", &Distribution::logistic, py::arg("mu"), py::arg("s"))
        .def_static("extreme_value", &Distribution::extreme_value, py::arg("mu"), py::arg("s"))
        .def_static("lognormal_negated", &Distribution::lognormal_negated, py::arg("mu"),
                    py::arg("sigma"))
        .def_static("affine", &Distribution::affine, py::arg("inner"), py::arg("shift"),
                    py::arg("scale"))
        .def_static("from_moments", &Distribution::from_moments, py::arg("family"),
                    py::arg("mean"), py::arg("sd"))
        .def_static("from_json", &distribution_from_string, py::arg("text"))
        .def("to_json", &distribution_to_string)
        .def("cdf", &Distribution::cdf, py::arg("x"))
        .def("partial_expectation", &Distribution::partial_expectation, py::arg("w"))
        .def("mean", &Distribution::mean)
        .def("variance", &Distribution::variance)
        .def("sample", &Distribution::sample, py::arg("seed"), py::arg("n"))
        .def("describe", &Distribution::describe)
        .def("__repr__", [](const Distribution& f) { return f.describe(); });

    m.def("fosd_geq", &fosd_geq, py::arg("f"), py::arg("g"), py::arg("mesh") = 512);

    py::class_<Preferences>(m, "Preferences")
        .def(py::init([](double beta, double beta_hat, double delta) {
                 Preferences p{beta, beta_hat, delta};
                 p.validate();
                 return p;
             }),
             py::arg("beta"), py::arg("beta_hat"), py::arg("delta"))
        .def_static("sophisticated", &Preferences::sophisticated, py::arg("beta"),
                    py::arg("delta"))
        .def_static("naive", &Preferences::naive, py::arg("beta"), py::arg("delta"))
        .def_readonly("beta", &Preferences::beta)
        .def_readonly("beta_hat", &Preferences::beta_hat)
        .def_readonly("delta", &Preferences::delta);

    py::class_<StoppingProblem>(m, "StoppingProblem")
        .def_static("stationary", &StoppingProblem::stationary, py::arg("law"),
                    py::arg("horizon"), py::arg("terminal_value"))
        .def(py::init([](std::vector<Distribution> laws, double terminal_value) {
                 StoppingProblem p;
                 p.horizon = static_cast<int>(laws.size());
                 p.payoff_laws = std::move(laws);
                 p.terminal_value = terminal_value;
                 p.validate();
                 return p;
             }),
             py::arg("payoff_laws"), py::arg("terminal_value"))
        .def_readonly("horizon", &StoppingProblem::horizon)
        .def_readonly("terminal_value", &StoppingProblem::terminal_value)
        .def("mandatory", &StoppingProblem::mandatory);

    py::class_<EquilibriumProfile>(m, "EquilibriumProfile")
        .def_readonly("v", &EquilibriumProfile::v)
        .def_readonly("c", &EquilibriumProfile::c)
        .def_readonly("p", &EquilibriumProfile::p);

    py::class_<WelfareReport>(m, "WelfareReport")
        .def_readonly("self_values", &WelfareReport::self_values)
        .def_readonly("self1_value_beta", &WelfareReport::self1_value_beta);

    m.def("solve_equilibrium", &solve_equilibrium, py::arg("problem"), py::arg("prefs"));
    m.def("evaluate_welfare", &evaluate_welfare, py::arg("problem"), py::arg("prefs"),
          py::arg("profile"));
    m.def("unconditional_masses", &unconditional_masses, py::arg("p"));
    m.def("conditional_from_unconditional", &conditional_from_unconditional, py::arg("q"));

    py::class_<RationalizationResult>(m, "RationalizationResult")
        .def_readonly("distribution", &RationalizationResult::distribution)
        .def_readonly("profile", &RationalizationResult::profile)
        .def_readonly("mass_points", &RationalizationResult::mass_points)
        .def_readonly("mass_weights", &RationalizationResult::mass_weights)
        .def_readonly("c1", &RationalizationResult::c1)
        .def_readonly("c2", &RationalizationResult::c2)
        .def_readonly("iterations", &RationalizationResult::iterations)
        .def_readonly("lattice_gap", &RationalizationResult::lattice_gap);

    m.def(
        "rationalize_sophisticated",
        [](const std::vector<double>& p, const Preferences& prefs, double y_lower) {
            return rationalize_sophisticated(StoppingData{p}, prefs, y_lower);
        },
        py::arg("p"), py::arg("prefs"), py::arg("y_lower"));
    m.def(
        "rationalize_naive",
        [](const std::vector<double>& p, const Preferences& prefs, double y_lower, double tol,
           int max_iter) {
            NaiveOptions opt;
            opt.tol = tol;
            opt.max_iter = max_iter;
            return rationalize_naive(StoppingData{p}, prefs, y_lower, opt);
        },
        py::arg("p"), py::arg("prefs"), py::arg("y_lower"), py::arg("tol") = 1e-10,
        py::arg("max_iter") = 100000);
    m.def("moment_renormalize", &moment_renormalize, py::arg("result"), py::arg("target_mean"),
          py::arg("target_sd"));

    py::class_<RichData>(m, "RichData")
        .def(py::init([](std::vector<double> v, std::vector<double> p) {
                 RichData d{std::move(v), std::move(p)};
                 d.validate();
                 return d;
             }),
             py::arg("v"), py::arg("p"))
        .def_readonly("v", &RichData::v)
        .def_readonly("p", &RichData::p);

    m.def("check_plausible",
          [](const RichData& d) {
              auto rep = check_plausible(d);
              return py::make_tuple(rep.plausible, rep.diagnostic);
          },
          py::arg("data"));
    m.def("check_consistent", &check_consistent, py::arg("data"), py::arg("beta"),
          py::arg("delta"));
    m.def("consistency_witness", &consistency_witness, py::arg("data"), py::arg("beta"),
          py::arg("delta"));
    m.def("reduce_to_mass_points", &reduce_to_mass_points, py::arg("data"), py::arg("law"));

    py::class_<IdentifiedSet>(m, "IdentifiedSet")
        .def_readonly("beta_grid", &IdentifiedSet::beta_grid)
        .def_readonly("delta_grid", &IdentifiedSet::delta_grid)
        .def_readonly("witness", &IdentifiedSet::witness)
        .def_readonly("witness_cell", &IdentifiedSet::witness_cell)
        .def("at", &IdentifiedSet::at, py::arg("beta_index"), py::arg("delta_index"));

    m.def(
        "identified_set",
        [](const RichData& data, double beta_lo, double beta_hi, double beta_step,
           double delta_lo, double delta_hi, double delta_step, bool build_witness,
           int threads) {
            return identified_set(data, GridSpec{beta_lo, beta_hi, beta_step},
                                  GridSpec{delta_lo, delta_hi, delta_step}, build_witness,
                                  threads);
        },
        py::arg("data"), py::arg("beta_lo") = 0.3, py::arg("beta_hi") = 1.5,
        py::arg("beta_step") = 0.005, py::arg("delta_lo") = 0.8, py::arg("delta_hi") = 1.0,
        py::arg("delta_step") = 0.0025, py::arg("build_witness") = true, py::arg("threads") = 0);
    m.def("aggregate_mixture", &aggregate_mixture, py::arg("profiles"));

    py::enum_<FitCriterion>(m, "FitCriterion")
        .value("squared_distance", FitCriterion::squared_distance)
        .value("likelihood", FitCriterion::likelihood);

    py::class_<EstimateResult>(m, "EstimateResult")
        .def_readonly("beta_hat", &EstimateResult::beta_hat)
        .def_readonly("criterion_value", &EstimateResult::criterion_value)
        .def_readonly("per_beta_curve", &EstimateResult::per_beta_curve);

    m.def(
        "estimate_beta",
        [](Family family, double mean, double sd, bool sophisticated, FitCriterion criterion,
           const std::vector<double>& data_p, double delta, int horizon, double terminal_value,
           int threads) {
            EstimationSpec spec;
            spec.family = family;
            spec.mean = mean;
            spec.sd = sd;
            spec.sophisticated = sophisticated;
            spec.criterion = criterion;
            spec.delta = delta;
            spec.horizon = horizon;
            spec.terminal_value = terminal_value;
            return estimate_beta(spec, data_p, threads);
        },
        py::arg("family"), py::arg("mean"), py::arg("sd"), py::arg("sophisticated"),
        py::arg("criterion"), py::arg("data_p"), py::arg("delta") = 1.0, py::arg("horizon") = 5,
        py::arg("terminal_value") = kMandatory, py::arg("threads") = 0);
    m.def("completion_histogram", &completion_histogram, py::arg("problem"), py::arg("prefs"));
}
