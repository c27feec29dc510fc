#include "taskstop/json_io.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace taskstop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& context) {
    if (!j.is_object()) fail(context + ": expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key())) fail(context + ": unknown field '" + it.key() + "'");
}

const json& need(const json& j, const std::string& key, const std::string& context) {
    auto it = j.find(key);
    if (it == j.end()) fail(context + ": missing field '" + key + "'");
    return *it;
}

std::vector<double> numbers_from_json(const json& j, const std::string& context) {
    if (!j.is_array()) fail(context + ": expected an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(number_from_json(e, context));
    return out;
}

json number_to_json(double x) {
    if (x == -kInf) return json("-inf");
    if (x == kInf) return json("inf");
    return json(x);
}

}  // namespace

double number_from_json(const json& j, const std::string& context) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "-inf" || s == "mandatory") return -kInf;
        if (s == "inf") return kInf;
        try {
            std::size_t pos = 0;
            double x = std::stod(s, &pos);
            if (pos != s.size()) fail(context + ": trailing characters in number '" + s + "'");
            return x;
        } catch (const std::invalid_argument&) {
            fail(context + ": cannot parse number '" + s + "'");
        }
    }
    fail(context + ": expected a number or decimal string");
    return 0.0;  // unreachable
}

json distribution_to_json(const Distribution& f) {
    struct V {
        json operator()(const DiscreteSpec& d) const {
            return json{{"variant", "discrete"}, {"points", d.points}, {"weights", d.weights}};
        }
        json operator()(const PiecewiseUniformSpec& pw) const {
            json segs = json::array();
            for (const auto& s : pw.segments)
                segs.push_back(json{{"a", s.a}, {"b", s.b}, {"weight", s.weight}});
            return json{{"variant", "piecewise_uniform"}, {"segments", segs}};
        }
        json operator()(const ParametricSpec& p) const {
            switch (p.family) {
                case Family::uniform:
                    return json{{"variant", "uniform"}, {"lower", p.loc}, {"upper", p.loc + p.scale}};
                case Family::normal:
                    return json{{"variant", "normal"}, {"mean", p.loc}, {"sd", p.scale}};
                case Family::logistic:
                    return json{{"variant", "logistic"}, {"mu", p.loc}, {"s", p.scale}};
                case Family::extreme_value:
                    return json{{"variant", "extreme_value"}, {"mu", p.loc}, {"s", p.scale}};
                case Family::lognormal_negated:
                    return json{{"variant", "lognormal_negated"}, {"mu", p.loc}, {"sigma", p.scale}};
            }
            fail("distribution: unknown family");
        }
        json operator()(const AffineSpec& a) const {
            return json{{"variant", "affine"},
                        {"inner", distribution_to_json(*a.inner)},
                        {"shift", a.shift},
                        {"scale", a.scale}};
        }
    };
    return std::visit(V{}, f.spec());
}

Distribution distribution_from_json(const json& j) {
    const std::string ctx = "distribution";
    if (!j.is_object()) fail(ctx + ": expected an object");
    std::string variant = need(j, "variant", ctx).get<std::string>();
    if (variant == "discrete") {
        check_keys(j, {"variant", "points", "weights"}, ctx);
        return Distribution::discrete(numbers_from_json(need(j, "points", ctx), ctx + ".points"),
                                      numbers_from_json(need(j, "weights", ctx), ctx + ".weights"));
    }
    if (variant == "piecewise_uniform") {
        check_keys(j, {"variant", "segments"}, ctx);
        const json& segs = need(j, "segments", ctx);
        if (!segs.is_array()) fail(ctx + ".segments: expected an array");
        std::vector<UniformSegment> out;
        for (const auto& s : segs) {
            check_keys(s, {"a", "b", "weight"}, ctx + ".segment");
            out.push_back(UniformSegment{number_from_json(need(s, "a", ctx), ctx + ".a"),
                                         number_from_json(need(s, "b", ctx), ctx + ".b"),
                                         number_from_json(need(s, "weight", ctx), ctx + ".weight")});
        }
        return Distribution::piecewise_uniform(std::move(out));
    }
    if (variant == "uniform") {
        check_keys(j, {"variant", "lower", "upper", "mean", "sd"}, ctx);
        if (j.contains("mean") || j.contains("sd"))
            return Distribution::from_moments(Family::uniform,
                                              number_from_json(need(j, "mean", ctx), ctx),
                                              number_from_json(need(j, "sd", ctx), ctx));
        return Distribution::uniform(number_from_json(need(j, "lower", ctx), ctx),
                                     number_from_json(need(j, "upper", ctx), ctx));
    }
    if (variant == "normal") {
        check_keys(j, {"variant", "mean", "sd"}, ctx);
        return Distribution::normal(number_from_json(need(j, "mean", ctx), ctx),
                                    number_from_json(need(j, "sd", ctx), ctx));
    }
    if (variant == "logistic" || variant == "extreme_value") {
        check_keys(j, {"variant", "mu", "s", "mean", "sd"}, ctx);
        Family fam = variant == "logistic" ? Family::logistic : Family::extreme_value;
        if (j.contains("mean") || j.contains("sd"))
            return Distribution::from_moments(fam, number_from_json(need(j, "mean", ctx), ctx),
                                              number_from_json(need(j, "sd", ctx), ctx));
        double mu = number_from_json(need(j, "mu", ctx), ctx);
        double s = number_from_json(need(j, "s", ctx), ctx);
        return fam == Family::logistic ? Distribution::logistic(mu, s)
                                       : Distribution::extreme_value(mu, s);
    }
    if (variant == "lognormal_negated") {
        check_keys(j, {"variant", "mu", "sigma", "eta", "eta_is_sd"}, ctx);
        double mu = number_from_json(need(j, "mu", ctx), ctx);
        if (j.contains("eta")) {
            // eta = variance of the underlying normal by default; set
            // eta_is_sd to read it as the standard deviation instead.
            double eta = number_from_json(j.at("eta"), ctx);
            bool as_sd = j.value("eta_is_sd", false);
            return Distribution::lognormal_negated(mu, as_sd ? eta : std::sqrt(eta));
        }
        return Distribution::lognormal_negated(mu, number_from_json(need(j, "sigma", ctx), ctx));
    }
    if (variant == "affine") {
        check_keys(j, {"variant", "inner", "shift", "scale"}, ctx);
        return Distribution::affine(distribution_from_json(need(j, "inner", ctx)),
                                    number_from_json(need(j, "shift", ctx), ctx),
                                    number_from_json(need(j, "scale", ctx), ctx));
    }
    fail(ctx + ": unknown variant '" + variant + "'");
    throw std::logic_error("unreachable");
}

json problem_to_json(const StoppingProblem& problem) {
    json j{{"horizon", problem.horizon}};
    bool stationary = true;
    for (std::size_t i = 1; i < problem.payoff_laws.size(); ++i)
        if (distribution_to_json(problem.payoff_laws[i]) !=
            distribution_to_json(problem.payoff_laws[0]))
            stationary = false;
    if (stationary && !problem.payoff_laws.empty()) {
        j["payoff_law"] = distribution_to_json(problem.payoff_laws[0]);
    } else {
        json laws = json::array();
        for (const auto& f : problem.payoff_laws) laws.push_back(distribution_to_json(f));
        j["payoff_laws"] = laws;
    }
    j["terminal_value"] = number_to_json(problem.terminal_value);
    return j;
}

StoppingProblem problem_from_json(const json& j) {
    const std::string ctx = "problem";
    check_keys(j, {"horizon", "payoff_law", "payoff_laws", "terminal_value"}, ctx);
    StoppingProblem pb;
    pb.horizon = need(j, "horizon", ctx).get<int>();
    pb.terminal_value = number_from_json(need(j, "terminal_value", ctx), ctx + ".terminal_value");
    if (j.contains("payoff_law") == j.contains("payoff_laws"))
        fail(ctx + ": provide exactly one of payoff_law / payoff_laws");
    if (j.contains("payoff_law")) {
        pb.payoff_laws.assign(static_cast<std::size_t>(std::max(pb.horizon, 0)),
                              distribution_from_json(j.at("payoff_law")));
    } else {
        for (const auto& e : j.at("payoff_laws"))
            pb.payoff_laws.push_back(distribution_from_json(e));
    }
    pb.validate();
    return pb;
}

json preferences_to_json(const Preferences& prefs) {
    return json{{"beta", prefs.beta}, {"beta_hat", prefs.beta_hat}, {"delta", prefs.delta}};
}

Preferences preferences_from_json(const json& j) {
    const std::string ctx = "preferences";
    check_keys(j, {"beta", "beta_hat", "delta"}, ctx);
    Preferences prefs;
    prefs.beta = number_from_json(need(j, "beta", ctx), ctx + ".beta");
    prefs.delta = number_from_json(need(j, "delta", ctx), ctx + ".delta");
    const json& bh = need(j, "beta_hat", ctx);
    if (bh.is_string() && bh.get<std::string>() == "sophisticated")
        prefs.beta_hat = prefs.beta;
    else if (bh.is_string() && bh.get<std::string>() == "naive")
        prefs.beta_hat = 1.0;
    else
        prefs.beta_hat = number_from_json(bh, ctx + ".beta_hat");
    prefs.validate();
    return prefs;
}

json profile_to_json(const EquilibriumProfile& profile) {
    json v = json::array(), c = json::array(), p = json::array();
    for (double x : profile.v) v.push_back(number_to_json(x));
    for (double x : profile.c) c.push_back(number_to_json(x));
    for (double x : profile.p) p.push_back(x);
    return json{{"v", v}, {"c", c}, {"p", p}};
}

json rich_data_to_json(const RichData& data) {
    json v = json::array();
    for (double x : data.v) v.push_back(number_to_json(x));
    return json{{"v", v}, {"p", data.p}};
}

RichData rich_data_from_json(const json& j) {
    const std::string ctx = "data";
    check_keys(j, {"v", "p"}, ctx);
    RichData data;
    data.v = numbers_from_json(need(j, "v", ctx), ctx + ".v");
    data.p = numbers_from_json(need(j, "p", ctx), ctx + ".p");
    data.validate();
    return data;
}

std::string config_hash(const json& config) {
    const std::string dump = config.dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace taskstop
