#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "taskstop/json_io.hpp"

namespace fs = std::filesystem;
using taskstop::json;

namespace {

constexpr const char* kToolVersion = "taskstop 1.0.0";

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    fs::path config_path;
    fs::path out_dir = ".";
    std::string format = "csv";
    std::uint64_t seed = 20240901;
    std::optional<double> tol;
    int threads = 0;
    bool quiet = false;
};

std::string fmt(double x) {
    if (x == -std::numeric_limits<double>::infinity()) return "-inf";
    if (x == std::numeric_limits<double>::infinity()) return "inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

class OutputWriter {
  public:
    OutputWriter(const Options& opt, const json& config)
        : opt_(opt), hash_(taskstop::config_hash(config)) {
        std::error_code ec;
        fs::create_directories(opt_.out_dir, ec);
        if (ec) throw IoError("cannot create output directory " + opt_.out_dir.string());
    }

    void csv(const std::string& name, const std::vector<std::string>& header,
             const std::vector<std::vector<std::string>>& rows) const {
        if (opt_.format != "csv") return;
        fs::path path = opt_.out_dir / name;
        std::ofstream os(path, std::ios::binary);
        if (!os) throw IoError("cannot open " + path.string());
        os << "# tool: " << kToolVersion << "\n";
        os << "# config_hash: " << hash_ << "\n";
        os << "# tol: " << fmt(opt_.tol.value_or(1e-10)) << "\n";
        for (std::size_t i = 0; i < header.size(); ++i)
            os << header[i] << (i + 1 < header.size() ? "," : "\n");
        for (const auto& row : rows)
            for (std::size_t i = 0; i < row.size(); ++i)
                os << row[i] << (i + 1 < row.size() ? "," : "\n");
        if (!os) throw IoError("failed writing " + path.string());
        log(path);
    }

    void result(const std::string& name, json body) const {
        body["meta"] = json{{"tool", kToolVersion},
                            {"config_hash", hash_},
                            {"tol", opt_.tol.value_or(1e-10)},
                            {"seed", opt_.seed}};
        fs::path path = opt_.out_dir / name;
        std::ofstream os(path, std::ios::binary);
        if (!os) throw IoError("cannot open " + path.string());
        os << body.dump(2) << "\n";
        if (!os) throw IoError("failed writing " + path.string());
        log(path);
    }

  private:
    void log(const fs::path& path) const {
        if (!opt_.quiet) std::cout << "wrote " << path.string() << "\n";
    }
    const Options& opt_;
    std::string hash_;
};

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& context) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw std::invalid_argument(context + ": unknown field '" + it.key() + "'");
}

std::vector<std::vector<std::string>> profile_rows(const taskstop::EquilibriumProfile& prof) {
    auto q = taskstop::unconditional_masses(prof.p);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t t = 0; t < prof.v.size(); ++t)
        rows.push_back({std::to_string(t + 1), fmt(prof.v[t]), fmt(prof.c[t]), fmt(prof.p[t]),
                        fmt(q[t])});
    return rows;
}

void emit_bars(const OutputWriter& out, const std::string& name,
               const std::vector<double>& p) {
    auto q = taskstop::unconditional_masses(p);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t t = 0; t < p.size(); ++t)
        rows.push_back({std::to_string(t + 1), fmt(p[t]), fmt(q[t])});
    out.csv(name, {"t", "p", "q"}, rows);
}

void run_solve(const json& cfg, const Options& opt, const OutputWriter& out) {
    check_keys(cfg, {"command", "problem", "preferences", "simulate_paths"}, "solve");
    auto problem = taskstop::problem_from_json(cfg.at("problem"));
    auto prefs = taskstop::preferences_from_json(cfg.at("preferences"));
    auto profile = taskstop::solve_equilibrium(problem, prefs);

    out.csv("solve.csv", {"t", "v", "c", "p", "q"}, profile_rows(profile));
    emit_bars(out, "bars.csv", profile.p);

    json body{{"profile", taskstop::profile_to_json(profile)},
              {"q", taskstop::unconditional_masses(profile.p)}};
    std::uint64_t paths = cfg.value("simulate_paths", std::uint64_t{0});
    if (paths > 0) {
        auto sim = taskstop::simulate_profile(problem, profile, opt.seed, paths);
        body["simulation"] = json{{"paths", paths},
                                  {"p_hat", sim.p_hat},
                                  {"p_se", sim.p_se},
                                  {"at_risk", sim.at_risk}};
    }
    out.result("solve.json", std::move(body));
}

void run_welfare(const json& cfg, const Options&, const OutputWriter& out) {
    check_keys(cfg, {"command", "problem", "preferences"}, "welfare");
    auto problem = taskstop::problem_from_json(cfg.at("problem"));
    auto prefs = taskstop::preferences_from_json(cfg.at("preferences"));
    auto profile = taskstop::solve_equilibrium(problem, prefs);
    auto report = taskstop::evaluate_welfare(problem, prefs, profile);

    std::vector<std::vector<std::string>> rows;
    for (std::size_t t = 0; t < report.self_values.size(); ++t)
        rows.push_back({std::to_string(t + 1), fmt(report.self_values[t])});
    out.csv("welfare.csv", {"t", "W"}, rows);
    out.result("welfare.json", json{{"self_values", report.self_values},
                                    {"self1_value_beta", report.self1_value_beta},
                                    {"profile", taskstop::profile_to_json(profile)}});
}

void run_rationalize(const json& cfg, const Options& opt, const OutputWriter& out) {
    check_keys(cfg,
               {"command", "mode", "p", "beta", "delta", "terminal_value", "c1", "c2", "tol",
                "max_iter"},
               "rationalize");
    std::string mode = cfg.at("mode").get<std::string>();
    taskstop::StoppingData data;
    for (const auto& e : cfg.at("p")) data.p.push_back(taskstop::number_from_json(e, "p"));
    double beta = taskstop::number_from_json(cfg.at("beta"), "beta");
    double delta = taskstop::number_from_json(cfg.at("delta"), "delta");
    double ybar = taskstop::number_from_json(cfg.at("terminal_value"), "terminal_value");

    taskstop::RationalizationResult res = [&] {
        if (mode == "sophisticated") {
            std::optional<double> c1;
            if (cfg.contains("c1")) c1 = taskstop::number_from_json(cfg.at("c1"), "c1");
            return taskstop::rationalize_sophisticated(
                data, taskstop::Preferences::sophisticated(beta, delta), ybar, c1);
        }
        if (mode == "naive") {
            taskstop::NaiveOptions nopt;
            if (cfg.contains("c1")) nopt.c1 = taskstop::number_from_json(cfg.at("c1"), "c1");
            if (cfg.contains("c2")) nopt.c2 = taskstop::number_from_json(cfg.at("c2"), "c2");
            if (cfg.contains("tol")) nopt.tol = taskstop::number_from_json(cfg.at("tol"), "tol");
            if (opt.tol) nopt.tol = *opt.tol;
            if (cfg.contains("max_iter")) nopt.max_iter = cfg.at("max_iter").get<int>();
            return taskstop::rationalize_naive(data, taskstop::Preferences::naive(beta, delta),
                                               ybar, nopt);
        }
        throw std::invalid_argument("rationalize: mode must be 'sophisticated' or 'naive'");
    }();

    out.csv("profile.csv", {"t", "v", "c", "p", "q"}, profile_rows(res.profile));
    out.result("rationalize.json",
               json{{"distribution", taskstop::distribution_to_json(res.distribution)},
                    {"profile", taskstop::profile_to_json(res.profile)},
                    {"construction_log",
                     json{{"mass_points", res.mass_points},
                          {"mass_weights", res.mass_weights},
                          {"c1", res.c1},
                          {"c2", res.c2},
                          {"iterations", res.iterations},
                          {"lattice_gap", res.lattice_gap}}}});
}

taskstop::GridSpec grid_from_json(const json& j, const taskstop::GridSpec& fallback,
                                  const std::string& context) {
    if (j.is_null()) return fallback;
    check_keys(j, {"lo", "hi", "step"}, context);
    return {taskstop::number_from_json(j.at("lo"), context),
            taskstop::number_from_json(j.at("hi"), context),
            taskstop::number_from_json(j.at("step"), context)};
}

void run_identify(const json& cfg, const Options& opt, const OutputWriter& out) {
    check_keys(cfg, {"command", "data", "beta_grid", "delta_grid", "witness"}, "identify");
    auto data = taskstop::rich_data_from_json(cfg.at("data"));
    auto bgrid = grid_from_json(cfg.value("beta_grid", json()), taskstop::default_beta_grid(),
                                "beta_grid");
    auto dgrid = grid_from_json(cfg.value("delta_grid", json()), taskstop::default_delta_grid(),
                                "delta_grid");
    bool witness = cfg.value("witness", true);
    auto set = taskstop::identified_set(data, bgrid, dgrid, witness, opt.threads);

    std::vector<std::vector<std::string>> rows;
    for (std::size_t bi = 0; bi < set.beta_grid.size(); ++bi)
        for (std::size_t di = 0; di < set.delta_grid.size(); ++di)
            rows.push_back({fmt(set.beta_grid[bi]), fmt(set.delta_grid[di]),
                            set.at(bi, di) ? "1" : "0"});
    out.csv("region.csv", {"beta", "delta", "consistent"}, rows);

    json body{{"beta_grid", set.beta_grid}, {"delta_grid", set.delta_grid}};
    std::size_t n_true = 0;
    for (auto m : set.mask) n_true += m;
    body["consistent_cells"] = n_true;
    if (set.witness) {
        body["witness"] = taskstop::distribution_to_json(*set.witness);
        body["witness_cell"] =
            json{{"beta", set.witness_cell->first}, {"delta", set.witness_cell->second}};
    }
    out.result("identify.json", std::move(body));
}

void run_estimate(const json& cfg, const Options& opt, const OutputWriter& out) {
    check_keys(cfg, {"command", "data_p", "specs"}, "estimate");
    std::vector<double> data_p;
    for (const auto& e : cfg.at("data_p"))
        data_p.push_back(taskstop::number_from_json(e, "data_p"));

    std::vector<std::vector<std::string>> rows;
    json results = json::array();
    int idx = 0;
    for (const auto& js : cfg.at("specs")) {
        check_keys(js,
                   {"family", "mean", "sd", "delta", "sophisticated", "criterion", "distance_on",
                    "beta_grid", "horizon", "terminal_value"},
                   "spec");
        taskstop::EstimationSpec spec;
        std::string family = js.at("family").get<std::string>();
        if (family == "uniform") spec.family = taskstop::Family::uniform;
        else if (family == "normal") spec.family = taskstop::Family::normal;
        else if (family == "logistic") spec.family = taskstop::Family::logistic;
        else if (family == "extreme_value") spec.family = taskstop::Family::extreme_value;
        else throw std::invalid_argument("spec: unknown family '" + family + "'");
        spec.mean = taskstop::number_from_json(js.at("mean"), "spec.mean");
        spec.sd = taskstop::number_from_json(js.at("sd"), "spec.sd");
        if (js.contains("delta"))
            spec.delta = taskstop::number_from_json(js.at("delta"), "spec.delta");
        spec.sophisticated = js.at("sophisticated").get<bool>();
        std::string crit = js.at("criterion").get<std::string>();
        if (crit == "squared_distance") spec.criterion = taskstop::FitCriterion::squared_distance;
        else if (crit == "likelihood") spec.criterion = taskstop::FitCriterion::likelihood;
        else throw std::invalid_argument("spec: unknown criterion '" + crit + "'");
        if (js.contains("distance_on")) {
            std::string on = js.at("distance_on").get<std::string>();
            if (on == "unconditional") spec.distance_on = taskstop::SquaredDistanceOn::unconditional;
            else if (on == "conditional") spec.distance_on = taskstop::SquaredDistanceOn::conditional;
            else throw std::invalid_argument("spec: unknown distance_on '" + on + "'");
        }
        if (js.contains("beta_grid")) {
            auto g = grid_from_json(js.at("beta_grid"), {}, "spec.beta_grid");
            spec.beta_grid = {g.lo, g.hi, g.step};
        }
        if (js.contains("horizon")) spec.horizon = js.at("horizon").get<int>();
        if (js.contains("terminal_value"))
            spec.terminal_value =
                taskstop::number_from_json(js.at("terminal_value"), "spec.terminal_value");
        else
            spec.terminal_value = taskstop::kMandatory;

        auto res = taskstop::estimate_beta(spec, data_p, opt.threads);
        rows.push_back({family, spec.sophisticated ? "sophisticated" : "naive", crit,
                        fmt(res.beta_hat), fmt(res.criterion_value)});
        results.push_back(json{{"family", family},
                               {"sophisticated", spec.sophisticated},
                               {"criterion", crit},
                               {"beta_hat", res.beta_hat},
                               {"criterion_value", res.criterion_value}});

        std::vector<std::vector<std::string>> curve;
        for (const auto& [b, val] : res.per_beta_curve) curve.push_back({fmt(b), fmt(val)});
        out.csv("curve_" + std::to_string(idx) + ".csv", {"beta", "criterion"}, curve);
        ++idx;
    }
    out.csv("estimates.csv", {"family", "sophistication", "criterion", "beta_hat", "value"}, rows);
    out.result("estimate.json", json{{"estimates", results}});
}

void run_aggregate(const json& cfg, const Options&, const OutputWriter& out) {
    check_keys(cfg, {"command", "profiles"}, "aggregate");
    std::vector<std::pair<double, std::vector<double>>> profiles;
    for (const auto& e : cfg.at("profiles")) {
        check_keys(e, {"weight", "p"}, "aggregate.profile");
        std::vector<double> p;
        for (const auto& x : e.at("p")) p.push_back(taskstop::number_from_json(x, "profile.p"));
        profiles.emplace_back(taskstop::number_from_json(e.at("weight"), "profile.weight"),
                              std::move(p));
    }
    auto agg = taskstop::aggregate_mixture(profiles);
    emit_bars(out, "aggregate.csv", agg);
    out.result("aggregate.json",
               json{{"p", agg}, {"q", taskstop::unconditional_masses(agg)}});
}

int run(const Options& opt) {
    std::ifstream is(opt.config_path);
    if (!is) throw IoError("cannot read config " + opt.config_path.string());
    json cfg;
    try {
        cfg = json::parse(is, nullptr, true, true);  // allow comments
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config parse error: ") + e.what());
    }
    if (!cfg.is_object() || !cfg.contains("command"))
        throw std::invalid_argument("config: missing 'command'");
    std::string command = cfg.at("command").get<std::string>();

    OutputWriter out(opt, cfg);
    if (command == "solve") run_solve(cfg, opt, out);
    else if (command == "welfare") run_welfare(cfg, opt, out);
    else if (command == "rationalize") run_rationalize(cfg, opt, out);
    else if (command == "identify") run_identify(cfg, opt, out);
    else if (command == "estimate") run_estimate(cfg, opt, out);
    else if (command == "aggregate") run_aggregate(cfg, opt, out);
    else throw std::invalid_argument("config: unknown command '" + command + "'");
    return 0;
}

void emit_error(int code, const std::string& kind, const std::string& message) {
    json err{{"error", json{{"code", code}, {"kind", kind}, {"message", message}}}};
    std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"Stopping-problem toolkit: solve, rationalize, identify, estimate"};
    app.add_option("--config", opt.config_path, "JSON run configuration")->required();
    app.add_option("--out", opt.out_dir, "output directory");
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", opt.seed, "seed for simulation oracles");
    double tol = 0.0;
    auto* tol_opt = app.add_option("--tol", tol, "tolerance override");
    app.add_option("--threads", opt.threads, "worker threads for grid scans (0 = auto)");
    app.add_flag("--quiet", opt.quiet, "suppress progress output");
    CLI11_PARSE(app, argc, argv);
    if (tol_opt->count() > 0) opt.tol = tol;

    try {
        return run(opt);
    } catch (const IoError& e) {
        emit_error(4, "io", e.what());
        return 4;
    } catch (const std::invalid_argument& e) {
        emit_error(2, "validation", e.what());
        return 2;
    } catch (const std::runtime_error& e) {
        emit_error(3, "numerical", e.what());
        return 3;
    } catch (const std::exception& e) {
        emit_error(3, "internal", e.what());
        return 3;
    }
}
