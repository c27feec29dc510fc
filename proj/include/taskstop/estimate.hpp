#pragma once

#include <string>
#include <vector>

#include "taskstop/model.hpp"

namespace taskstop {

enum class FitCriterion {
    squared_distance,  // sum of squared gaps, convention set by SquaredDistanceOn
    likelihood,        // cross-entropy of unconditional completion masses (minimized)
};

enum class SquaredDistanceOn {
    unconditional,  // Euclidean-norm convention matching the published table
    conditional,
};

struct BetaGrid {
    double lo = 0.3;
    double hi = 1.2;
    double step = 0.0005;
};

struct EstimationSpec {
    Family family = Family::normal;
    double mean = 0.0;
    double sd = 1.0;
    double delta = 1.0;
    bool sophisticated = true;  // false = fully naive (beta_hat = 1)
    FitCriterion criterion = FitCriterion::squared_distance;
    SquaredDistanceOn distance_on = SquaredDistanceOn::unconditional;
    BetaGrid beta_grid{};
    int horizon = 5;
    double terminal_value = kMandatory;

    void validate() const;
};

struct EstimateResult {
    double beta_hat = 0.0;
    double criterion_value = 0.0;
    std::vector<std::pair<double, double>> per_beta_curve;
};

/// Equilibrium profile of the spec's family at the candidate beta.
EquilibriumProfile model_profile(const EstimationSpec& spec, double beta);

/// Fit criterion between model and data conditional profiles.  The
/// squared-distance convention reports the (root of the) unconditional
/// Euclidean norm by default; the likelihood reading is the cross-entropy
/// -sum q_data ln q_model over completion times (+inf when the model puts
/// zero mass where the data does not).
double criterion_value(const std::vector<double>& model_p, const std::vector<double>& data_p,
                       FitCriterion criterion,
                       SquaredDistanceOn distance_on = SquaredDistanceOn::unconditional);

/// Exhaustive beta-grid scan; ties break toward smaller beta.
EstimateResult estimate_beta(const EstimationSpec& spec, const std::vector<double>& data_p,
                             int threads = 0);

/// Unconditional completion-time masses of the solved profile
/// (T+1 entries, last = never-completed residual; zero for mandatory tasks).
std::vector<double> completion_histogram(const StoppingProblem& problem, const Preferences& prefs);

}  // namespace taskstop
