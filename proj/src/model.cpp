#include "taskstop/model.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace taskstop {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void Preferences::validate() const {
    auto in_unit = [](double x) { return x > 0.0 && x <= 1.0; };
    if (!in_unit(beta) || !in_unit(beta_hat) || !in_unit(delta))
        throw std::invalid_argument("preferences: beta, beta_hat, delta must lie in (0, 1]");
}

StoppingProblem StoppingProblem::stationary(Distribution law, int horizon, double terminal_value) {
    StoppingProblem pb;
    pb.horizon = horizon;
    pb.payoff_laws.assign(static_cast<std::size_t>(std::max(horizon, 0)), law);
    pb.terminal_value = terminal_value;
    pb.validate();
    return pb;
}

void StoppingProblem::validate() const {
    if (horizon < 1) throw std::invalid_argument("problem: horizon must be >= 1");
    if (payoff_laws.size() != static_cast<std::size_t>(horizon))
        throw std::invalid_argument("problem: need exactly one payoff law per period");
    if (!(std::isfinite(terminal_value) || terminal_value == kMandatory))
        throw std::invalid_argument("problem: terminal value must be finite or -inf");
    for (const auto& f : payoff_laws)
        if (!std::isfinite(f.partial_expectation(-kInf)))
            throw std::invalid_argument("problem: payoff law has non-integrable mean");
}

double penalty_from_terminal(double terminal_value, const Preferences& prefs) {
    return terminal_value / (prefs.beta * prefs.delta);
}

double terminal_from_penalty(double penalty, const Preferences& prefs) {
    return penalty * prefs.beta * prefs.delta;
}

EquilibriumProfile solve_equilibrium(const StoppingProblem& problem, const Preferences& prefs) {
    problem.validate();
    prefs.validate();
    const int T = problem.horizon;
    const double ratio = prefs.beta_hat / prefs.beta;

    EquilibriumProfile out;
    out.v.assign(T, 0.0);
    out.c.assign(T, 0.0);
    out.p.assign(T, 0.0);

    out.v[T - 1] = problem.terminal_value;
    for (int t = T - 2; t >= 0; --t) {
        const Distribution& f = problem.payoff_laws[static_cast<std::size_t>(t + 1)];
        double vn = out.v[t + 1];
        if (vn == -kInf) {
            // Mandatory final period: the next self stops surely, so the
            // waiting branch carries zero mass (0 * -inf := 0 here).
            out.v[t] = prefs.beta * prefs.delta * f.partial_expectation(-kInf);
        } else {
            double cut = ratio * vn;
            out.v[t] = prefs.beta * prefs.delta * f.partial_expectation(cut) +
                       f.cdf(cut) * prefs.delta * vn;
        }
    }
    for (int t = 0; t < T; ++t) {
        double vt = out.v[t];
        out.c[t] = vt == -kInf ? -kInf : ratio * vt;
        out.p[t] = vt == -kInf
                       ? 1.0
                       : 1.0 - problem.payoff_laws[static_cast<std::size_t>(t)].cdf(vt);
    }
    return out;
}

double g_eval(const Distribution& f, const Preferences& prefs, double w) {
    prefs.validate();
    if (!std::isfinite(w)) {
        if (w == -kInf) return prefs.beta_hat * prefs.delta * f.partial_expectation(-kInf);
        throw std::invalid_argument("g_eval: w must be finite or -inf");
    }
    return prefs.beta_hat * prefs.delta * f.partial_expectation(w) + f.cdf(w) * prefs.delta * w;
}

WelfareReport evaluate_welfare(const StoppingProblem& problem, const Preferences& prefs,
                               const EquilibriumProfile& profile) {
    problem.validate();
    prefs.validate();
    const int T = problem.horizon;
    if (profile.v.size() != static_cast<std::size_t>(T) ||
        profile.p.size() != static_cast<std::size_t>(T))
        throw std::invalid_argument("welfare: profile length does not match the problem");

    WelfareReport rep;
    rep.self_values.assign(T, 0.0);
    // Value owed after the deadline when the task stays undone; the stored
    // terminal value is beta*delta times the period-(T+1) penalty and one
    // delta is consumed by the last discounting step.
    double w_next;
    if (problem.mandatory())
        w_next = 0.0;  // zero mass reaches it
    else
        w_next = problem.terminal_value / (prefs.beta * prefs.delta);

    for (int t = T - 1; t >= 0; --t) {
        const Distribution& f = problem.payoff_laws[static_cast<std::size_t>(t)];
        double vt = profile.v[static_cast<std::size_t>(t)];
        if (vt == -kInf) {
            rep.self_values[static_cast<std::size_t>(t)] = f.partial_expectation(-kInf);
        } else {
            rep.self_values[static_cast<std::size_t>(t)] =
                f.partial_expectation(vt) + f.cdf(vt) * prefs.delta * w_next;
        }
        w_next = rep.self_values[static_cast<std::size_t>(t)];
    }

    // Self 1 weights everything after the first period by beta.
    {
        const Distribution& f = problem.payoff_laws[0];
        double v1 = profile.v[0];
        double w2;
        if (T >= 2)
            w2 = rep.self_values[1];
        else
            w2 = problem.mandatory() ? 0.0 : problem.terminal_value / (prefs.beta * prefs.delta);
        if (v1 == -kInf)
            rep.self1_value_beta = f.partial_expectation(-kInf);
        else
            rep.self1_value_beta =
                f.partial_expectation(v1) + f.cdf(v1) * prefs.beta * prefs.delta * w2;
    }
    return rep;
}

std::vector<double> unconditional_masses(const std::vector<double>& p) {
    std::vector<double> q;
    q.reserve(p.size() + 1);
    double survive = 1.0;
    for (double pt : p) {
        q.push_back(pt * survive);
        survive *= 1.0 - pt;
    }
    q.push_back(survive);
    return q;
}

std::vector<double> conditional_from_unconditional(const std::vector<double>& q) {
    std::vector<double> p;
    double survive = 1.0;
    std::size_t t_count = q.empty() ? 0 : q.size() - 1;
    for (std::size_t t = 0; t < t_count; ++t) {
        double pt = survive > 0.0 ? q[t] / survive : 0.0;
        p.push_back(std::clamp(pt, 0.0, 1.0));
        survive -= q[t];
    }
    return p;
}

SimulationResult simulate_profile(const StoppingProblem& problem,
                                  const EquilibriumProfile& profile, std::uint64_t seed,
                                  std::uint64_t paths) {
    problem.validate();
    const int T = problem.horizon;
    if (profile.v.size() != static_cast<std::size_t>(T))
        throw std::invalid_argument("simulate: profile length does not match the problem");
    if (paths == 0) throw std::invalid_argument("simulate: need at least one path");

    // Per-period draw streams with decorrelated seeds keep the loop simple
    // and reproducible.
    std::vector<std::vector<double>> draws(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t)
        draws[static_cast<std::size_t>(t)] = problem.payoff_laws[static_cast<std::size_t>(t)]
                                                 .sample(seed + 0x9e3779b97f4a7c15ULL *
                                                                    (static_cast<std::uint64_t>(t) + 1),
                                                         paths);

    std::vector<std::uint64_t> stops(static_cast<std::size_t>(T), 0);
    std::vector<std::uint64_t> at_risk(static_cast<std::size_t>(T), 0);
    for (std::uint64_t i = 0; i < paths; ++i) {
        for (int t = 0; t < T; ++t) {
            at_risk[static_cast<std::size_t>(t)] += 1;
            double vt = profile.v[static_cast<std::size_t>(t)];
            bool stop = vt == -kInf || draws[static_cast<std::size_t>(t)][i] > vt;
            if (stop) {
                stops[static_cast<std::size_t>(t)] += 1;
                break;
            }
        }
    }

    SimulationResult res;
    res.p_hat.assign(static_cast<std::size_t>(T), 0.0);
    res.p_se.assign(static_cast<std::size_t>(T), 0.0);
    res.at_risk = at_risk;
    for (int t = 0; t < T; ++t) {
        auto n = at_risk[static_cast<std::size_t>(t)];
        if (n == 0) continue;
        double ph = static_cast<double>(stops[static_cast<std::size_t>(t)]) /
                    static_cast<double>(n);
        res.p_hat[static_cast<std::size_t>(t)] = ph;
        res.p_se[static_cast<std::size_t>(t)] =
            std::sqrt(std::max(ph * (1.0 - ph), 1e-12) / static_cast<double>(n));
    }
    return res;
}

}  // namespace taskstop
