#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "taskstop/distribution.hpp"

namespace taskstop {

inline constexpr double kMandatory = -std::numeric_limits<double>::infinity();

/// (beta, beta_hat, delta): true present bias, perceived present bias of
/// future selves, and the long-run discount factor.
struct Preferences {
    double beta = 1.0;
    double beta_hat = 1.0;
    double delta = 1.0;

    static Preferences sophisticated(double beta, double delta) { return {beta, beta, delta}; }
    static Preferences naive(double beta, double delta) { return {beta, 1.0, delta}; }

    bool is_sophisticated() const { return beta_hat == beta; }
    bool is_naive() const { return beta_hat == 1.0; }
    void validate() const;
};

/// Finite-horizon stopping problem.  terminal_value stores v_T directly
/// (the final self's continuation value when not completing); -inf marks a
/// mandatory task.  The period-(T+1) penalty convention divides by
/// beta*delta; helpers below convert.
struct StoppingProblem {
    int horizon = 0;
    std::vector<Distribution> payoff_laws;  // exactly horizon entries
    double terminal_value = kMandatory;

    static StoppingProblem stationary(Distribution law, int horizon, double terminal_value);
    bool mandatory() const { return terminal_value == kMandatory; }
    void validate() const;
};

double penalty_from_terminal(double terminal_value, const Preferences& prefs);
double terminal_from_penalty(double penalty, const Preferences& prefs);

struct EquilibriumProfile {
    std::vector<double> v;  // actual continuation values / cutoffs
    std::vector<double> c;  // perceived cutoffs, c_t = (beta_hat/beta) v_t
    std::vector<double> p;  // conditional stopping probabilities
};

struct WelfareReport {
    std::vector<double> self_values;  // W_t, long-run weights, no beta multiplier
    double self1_value_beta = 0.0;    // Self 1's beta-weighted objective
};

/// Backward recursion of the perception-perfect equilibrium:
///   v_t = beta*delta*PE_{t+1}((bh/b) v_{t+1}) + F_{t+1}((bh/b) v_{t+1})*delta*v_{t+1}
/// with v_T = terminal_value; p_t = 1 - F_t(v_t), ties break toward
/// waiting (stop iff the draw strictly exceeds the cutoff).
EquilibriumProfile solve_equilibrium(const StoppingProblem& problem, const Preferences& prefs);

/// g(w) = beta_hat*delta*PE(w) + F(w)*delta*w  (auxiliary map from the
/// monotonicity analysis; fixed family per stationary problem).
double g_eval(const Distribution& f, const Preferences& prefs, double w);

/// W_t = PE_t(v_t) + F_t(v_t)*delta*W_{t+1}, with the post-deadline value
/// terminal_value/beta owed when the task is left undone (0 when nothing
/// is owed, i.e. terminal_value = 0; mandatory tasks never reach it).
WelfareReport evaluate_welfare(const StoppingProblem& problem, const Preferences& prefs,
                               const EquilibriumProfile& profile);

/// Unconditional completion-time masses q_t = p_t * prod_{s<t} (1 - p_s).
/// Returns T+1 entries; the last is the never-completed residual.
std::vector<double> unconditional_masses(const std::vector<double>& p);

/// Inverse of unconditional_masses on the first T entries.
std::vector<double> conditional_from_unconditional(const std::vector<double>& q);

struct SimulationResult {
    std::vector<double> p_hat;       // conditional stopping frequencies
    std::vector<double> p_se;        // binomial standard errors
    std::vector<std::uint64_t> at_risk;  // paths reaching each period
};

/// Monte-Carlo oracle: sample payoff paths and stop whenever the draw
/// strictly exceeds the analytic cutoff.
SimulationResult simulate_profile(const StoppingProblem& problem,
                                  const EquilibriumProfile& profile, std::uint64_t seed,
                                  std::uint64_t paths);

}  // namespace taskstop
