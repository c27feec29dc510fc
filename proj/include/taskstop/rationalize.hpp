#pragma once

#include <optional>
#include <vector>

#include "taskstop/model.hpp"

namespace taskstop {

/// Conditional stopping probabilities offered for rationalization.
struct StoppingData {
    std::vector<double> p;

    /// 0 < p_1 <= ... <= p_T < 1 (the construction hypotheses).
    void validate() const;
    int horizon() const { return static_cast<int>(p.size()); }
};

struct RationalizationResult {
    Distribution distribution;
    StoppingProblem problem;        // stationary problem the distribution induces
    EquilibriumProfile profile;     // its equilibrium under the given preferences
    std::vector<double> mass_points;   // construction internals: pi_0..pi_{T+1} / segment edges
    std::vector<double> mass_weights;  // f_0..f_{T+1} / segment weights
    double c1 = 0.0;                   // realized lower-extension margin
    double c2 = 0.0;                   // upper-extension margin (naive construction)
    int iterations = 0;                // fixed-point iterations (naive construction)
    double lattice_gap = 0.0;          // sup-gap between top- and bottom-started limits
};

/// Build a discrete stationary law with T+2 strictly increasing atoms whose
/// sophisticated equilibrium reproduces the given stopping probabilities.
/// c1 defaults to twice the construction's lower bound plus one, inflated
/// x10 (max 5 retries) until the atom chain is increasing with pi_T > 0.
RationalizationResult rationalize_sophisticated(const StoppingData& data,
                                                const Preferences& prefs, double y_lower,
                                                std::optional<double> c1 = std::nullopt);

struct NaiveOptions {
    double c1 = 1.0;
    double c2 = 1.0;
    double tol = 1e-10;
    int max_iter = 100000;
};

/// Build a continuous piecewise-uniform stationary law whose fully-naive
/// equilibrium reproduces the stopping probabilities, via monotone
/// fixed-point iteration from both lattice ends (requires delta < 1 and a
/// strictly negative terminal value).
RationalizationResult rationalize_naive(const StoppingData& data, const Preferences& prefs,
                                        double y_lower, const NaiveOptions& options = {});

/// One application of the fully-naive construction's monotone operator L:
/// build the piecewise-uniform law from the candidate interior
/// continuation values w = (v_1..v_{T-1}) and re-solve.  Exposed for
/// property tests on the lattice iteration.
std::vector<double> naive_operator_apply(const StoppingData& data, const Preferences& prefs,
                                         double y_lower, const NaiveOptions& options,
                                         const std::vector<double>& w);

/// Rescale a beta = beta_hat = delta = 1 rationalization to the target
/// moments via an affine transform with a matched terminal value; the
/// stopping probabilities are invariant.
RationalizationResult moment_renormalize(const RationalizationResult& result, double target_mean,
                                         double target_sd);

}  // namespace taskstop
