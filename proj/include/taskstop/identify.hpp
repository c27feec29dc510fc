#pragma once

#include <optional>
#include <string>
#include <vector>

#include "taskstop/model.hpp"

namespace taskstop {

/// Rich data: elicited continuation values alongside conditional stopping
/// probabilities.  v_T may be the mandatory sentinel (-inf, p_T = 1).
struct RichData {
    std::vector<double> v;
    std::vector<double> p;

    int horizon() const { return static_cast<int>(v.size()); }
    /// Optional terminal value: when supplied, v_T must equal it.
    void validate(std::optional<double> terminal_value = std::nullopt) const;
};

struct PlausibilityReport {
    bool plausible = false;
    std::string diagnostic;  // names the first violated index, empty if plausible
};

/// v non-increasing and p non-decreasing (weak inequalities).
PlausibilityReport check_plausible(const RichData& data);

/// Sophisticated consistency of the data with (beta, delta): the
/// first-period bound plus the interior band inequalities
///   v_{t+1} beta < v_{t+1} a(delta,t) <= v_t beta ,  t in {2..T-1},
/// evaluated in product form with absolute slack 1e-12; a zero-mass band
/// (p_{t+1} = p_t) instead requires its numerator to vanish within 1e-9.
bool check_consistent(const RichData& data, double beta, double delta);

/// Discrete witness for a consistent (beta, delta): T+1 or T+2 atoms whose
/// sophisticated equilibrium at (beta, delta) reproduces the data.
Distribution consistency_witness(const RichData& data, double beta, double delta);

/// Collapse a law satisfying the data's constraint system onto one atom
/// per band (conditional means), preserving the equilibrium.
Distribution reduce_to_mass_points(const RichData& data, const Distribution& g);

struct GridSpec {
    double lo = 0.0;
    double hi = 0.0;
    double step = 0.0;

    std::vector<double> points() const;
};

struct IdentifiedSet {
    std::vector<double> beta_grid;
    std::vector<double> delta_grid;
    std::vector<std::uint8_t> mask;  // row-major: beta index major, delta index minor
    std::optional<Distribution> witness;
    std::optional<std::pair<double, double>> witness_cell;

    bool at(std::size_t bi, std::size_t di) const { return mask[bi * delta_grid.size() + di] != 0; }
};

inline GridSpec default_beta_grid() { return {0.3, 1.5, 0.005}; }
inline GridSpec default_delta_grid() { return {0.8, 1.0, 0.0025}; }

/// Scan the grid with check_consistent; cells are evaluated in parallel.
IdentifiedSet identified_set(const RichData& data, const GridSpec& beta_grid = default_beta_grid(),
                             const GridSpec& delta_grid = default_delta_grid(),
                             bool build_witness = true, int threads = 0);

/// Mixture of per-type conditional profiles into the aggregate conditional
/// profile, via unconditional completion-time masses.
std::vector<double> aggregate_mixture(const std::vector<std::pair<double, std::vector<double>>>& profiles);

}  // namespace taskstop
