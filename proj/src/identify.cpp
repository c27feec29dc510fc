#include "taskstop/identify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace taskstop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSlack = 1e-12;      // comparison slack for the band inequalities
constexpr double kZeroMassTol = 1e-9; // numerator tolerance on zero-mass bands

bool band_mandatory(const RichData& d) {
    return d.v.back() == -kInf;
}

// Right-hand side of the band equation for interior t (1-based):
//   beta * (p_{t+1}-p_t) * pi = (1-p_t) v_t - (1-p_{t+1}) v_{t+1} - (v_{t-1}-v_t)/delta
// The mandatory final band contributes (1-p_T) v_T = 0 * -inf := 0.
double band_rhs(const RichData& d, double delta, int t) {
    const auto& v = d.v;
    const auto& p = d.p;
    double tail = 0.0;
    double vn = v[static_cast<std::size_t>(t)];      // v_{t+1}
    double pn = p[static_cast<std::size_t>(t)];      // p_{t+1}
    if (!(vn == -kInf && pn == 1.0)) tail = (1.0 - pn) * vn;
    return (1.0 - p[static_cast<std::size_t>(t - 1)]) * v[static_cast<std::size_t>(t - 1)] -
           tail -
           (v[static_cast<std::size_t>(t - 2)] - v[static_cast<std::size_t>(t - 1)]) / delta;
}

}  // namespace

void RichData::validate(std::optional<double> terminal_value) const {
    if (v.empty() || v.size() != p.size())
        throw std::invalid_argument("rich data: v and p must be equal-length and non-empty");
    for (std::size_t t = 0; t < v.size(); ++t) {
        bool last = t + 1 == v.size();
        if (!(std::isfinite(v[t]) || (last && v[t] == -kInf)))
            throw std::invalid_argument("rich data: continuation values must be finite "
                                        "(mandatory sentinel allowed only in the last period)");
        if (!(p[t] >= 0.0 && p[t] <= 1.0))
            throw std::invalid_argument("rich data: probabilities must lie in [0, 1]");
    }
    if (v.back() == -kInf && p.back() != 1.0)
        throw std::invalid_argument("rich data: mandatory sentinel requires p_T = 1");
    if (terminal_value) {
        bool match = (*terminal_value == -kInf && v.back() == -kInf) ||
                     (std::isfinite(*terminal_value) &&
                      std::abs(v.back() - *terminal_value) <= 1e-12 * std::max(1.0, std::abs(*terminal_value)));
        if (!match)
            throw std::invalid_argument("rich data: v_T does not match the supplied terminal value");
    }
}

PlausibilityReport check_plausible(const RichData& data) {
    data.validate();
    for (std::size_t t = 0; t + 1 < data.v.size(); ++t) {
        if (data.v[t] < data.v[t + 1]) {
            std::ostringstream os;
            os << "continuation values increase between periods " << t + 1 << " and " << t + 2;
            return {false, os.str()};
        }
        if (data.p[t] > data.p[t + 1]) {
            std::ostringstream os;
            os << "stopping probabilities decrease between periods " << t + 1 << " and " << t + 2;
            return {false, os.str()};
        }
    }
    return {true, ""};
}

bool check_consistent(const RichData& data, double beta, double delta) {
    auto rep = check_plausible(data);
    if (!rep.plausible)
        throw std::invalid_argument("check_consistent: data not plausible: " + rep.diagnostic);
    if (!(data.p.front() > 0.0))
        throw std::invalid_argument("check_consistent: requires p_1 > 0");
    // The inequality system itself is well-defined for any positive beta;
    // grids deliberately extend above 1 to show what the data cannot reject.
    if (!(beta > 0.0 && delta > 0.0 && delta <= 1.0))
        throw std::invalid_argument("check_consistent: beta must be positive, delta in (0, 1]");
    const int T = data.horizon();
    if (T < 2) throw std::invalid_argument("check_consistent: needs at least two periods");

    const auto& v = data.v;
    const auto& p = data.p;

    // First-period bound, in product form (no division).
    {
        double lhs;
        double rhs;
        double tail2 = (v[1] == -kInf && p[1] == 1.0) ? 0.0 : (1.0 - p[1]) * v[1];
        rhs = v[0] / delta - tail2;
        if (v[1] == -kInf) {
            // Infinite band value only survives with positive band mass.
            lhs = p[1] > p[0] ? -kInf : beta * v[0] * p[0];
        } else {
            lhs = beta * (v[1] * (p[1] - p[0]) + v[0] * p[0]);
        }
        if (!(lhs < rhs + kSlack)) return false;
    }

    for (int t = 2; t <= T - 1; ++t) {
        double dp = p[static_cast<std::size_t>(t)] - p[static_cast<std::size_t>(t - 1)];
        double rhs = band_rhs(data, delta, t);
        if (dp <= 0.0) {
            if (std::abs(rhs) > kZeroMassTol) return false;
            continue;
        }
        double beta_pi = rhs / dp;  // beta * pi for the band (v_{t+1}, v_t]
        double vt = v[static_cast<std::size_t>(t - 1)];
        double vn = v[static_cast<std::size_t>(t)];
        bool lower_ok = vn == -kInf || beta * vn < beta_pi + kSlack;
        bool upper_ok = beta_pi <= beta * vt + kSlack;
        if (!(lower_ok && upper_ok)) return false;
    }
    return true;
}

Distribution consistency_witness(const RichData& data, double beta, double delta) {
    if (!check_consistent(data, beta, delta))
        throw std::invalid_argument("consistency_witness: data is not consistent with (beta, delta)");
    const int T = data.horizon();
    const auto& v = data.v;
    const auto& p = data.p;
    const bool mandatory = band_mandatory(data);

    std::vector<double> atoms;
    std::vector<double> weights;

    // Bottom band (-inf, v_T]: location is free below v_T.
    if (!mandatory) {
        atoms.push_back(v.back() - 1.0);
        weights.push_back(1.0 - p.back());
    }

    // Interior bands (v_{t+1}, v_t] for t = T-1 .. 2, pinned by the system.
    for (int t = T - 1; t >= 2; --t) {
        double dp = p[static_cast<std::size_t>(t)] - p[static_cast<std::size_t>(t - 1)];
        double vt = v[static_cast<std::size_t>(t - 1)];
        double vn = v[static_cast<std::size_t>(t)];
        double atom;
        if (dp <= 0.0) {
            atom = vn == -kInf ? vt - 1.0 : 0.5 * (vn + vt);  // zero-weight placeholder
            dp = 0.0;
        } else {
            atom = band_rhs(data, delta, t) / (beta * dp);
            atom = std::min(atom, vt);  // clip comparison slack back into the band
            if (vn != -kInf) atom = std::max(atom, std::nextafter(vn, kInf));
        }
        atoms.push_back(atom);
        weights.push_back(dp);
    }

    // Top two bands from the first-period equation:
    //   beta (f_{T-1} pi_{T-1} + f_T pi_T) = v_1/delta - (1-p_2) v_2 .
    {
        double f_hi = p[0];
        double f_band = p[1] - p[0];
        double tail2 = (v[1] == -kInf && p[1] == 1.0) ? 0.0 : (1.0 - p[1]) * v[1];
        double budget = v[0] / delta - tail2;
        double band_lo = v[1] == -kInf ? v[0] - 1.0 : v[1];
        double pi_band = 0.5 * (band_lo + v[0]);
        double pi_top = 0.0;
        for (int k = 0; k < 2000; ++k) {
            double used = f_band > 0.0 ? beta * f_band * pi_band : 0.0;
            pi_top = (budget - used) / (beta * f_hi);
            if (pi_top > v[0] || f_band <= 0.0) break;
            pi_band = band_lo + 0.5 * (pi_band - band_lo);  // slide toward the band floor
        }
        if (!(pi_top > v[0]))
            throw std::runtime_error("consistency_witness: could not place the top atom above v_1");
        if (T >= 2) {
            double band_atom = f_band > 0.0 ? pi_band : 0.5 * (band_lo + v[0]);
            atoms.push_back(band_atom);
            weights.push_back(std::max(f_band, 0.0));
        }
        atoms.push_back(pi_top);
        weights.push_back(f_hi);
    }

    // Drop zero-weight placeholders that would collide with real atoms.
    std::vector<double> pts, wts;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (weights[i] <= 0.0) continue;
        pts.push_back(atoms[i]);
        wts.push_back(weights[i]);
    }
    return Distribution::discrete(std::move(pts), std::move(wts));
}

Distribution reduce_to_mass_points(const RichData& data, const Distribution& g) {
    auto rep = check_plausible(data);
    if (!rep.plausible)
        throw std::invalid_argument("reduce_to_mass_points: data not plausible: " + rep.diagnostic);
    const int T = data.horizon();
    const auto& v = data.v;
    const auto& p = data.p;
    const bool mandatory = band_mandatory(data);

    std::vector<double> pts, wts;
    double mean = g.partial_expectation(-kInf);

    auto add_band = [&](double lo, double hi, double required) {
        // Band (lo, hi]; lo = -inf and hi = +inf handled by the PE/CDF limits.
        double mass = g.cdf(hi == kInf ? kInf : hi) - (lo == -kInf ? 0.0 : g.cdf(lo));
        double integral = (lo == -kInf ? mean : g.partial_expectation(lo)) -
                          (hi == kInf ? 0.0 : g.partial_expectation(hi));
        if (required <= 0.0 && mass <= 1e-12) return;
        if (mass <= 1e-12)
            throw std::invalid_argument(
                "reduce_to_mass_points: law places no mass on a band the data requires");
        if (std::abs(mass - required) > 1e-7)
            throw std::invalid_argument(
                "reduce_to_mass_points: law band masses do not match the stopping probabilities");
        pts.push_back(integral / mass);
        wts.push_back(required);
    };

    if (!mandatory)
        add_band(-kInf, v.back(), 1.0 - p.back());
    for (int t = T - 1; t >= 1; --t)
        add_band(v[static_cast<std::size_t>(t)], v[static_cast<std::size_t>(t - 1)],
                 p[static_cast<std::size_t>(t)] - p[static_cast<std::size_t>(t - 1)]);
    add_band(v[0], kInf, p[0]);

    return Distribution::discrete(std::move(pts), std::move(wts));
}

std::vector<double> GridSpec::points() const {
    if (!(step > 0.0) || !(lo <= hi)) throw std::invalid_argument("grid: need lo <= hi, step > 0");
    std::vector<double> out;
    long n = std::lround((hi - lo) / step);
    for (long i = 0; i <= n; ++i) {
        double x = lo + step * static_cast<double>(i);
        if (x > hi + 0.5 * step) break;
        out.push_back(std::min(x, hi));
    }
    return out;
}

IdentifiedSet identified_set(const RichData& data, const GridSpec& beta_grid,
                             const GridSpec& delta_grid, bool build_witness, int threads) {
    auto rep = check_plausible(data);
    if (!rep.plausible)
        throw std::invalid_argument("identified_set: data not plausible: " + rep.diagnostic);

    IdentifiedSet set;
    set.beta_grid = beta_grid.points();
    set.delta_grid = delta_grid.points();
    const std::size_t nb = set.beta_grid.size();
    const std::size_t nd = set.delta_grid.size();
    set.mask.assign(nb * nd, 0);

    unsigned hw = std::thread::hardware_concurrency();
    std::size_t nthreads = threads > 0 ? static_cast<std::size_t>(threads)
                                       : std::max(1u, hw);
    nthreads = std::min(nthreads, nb == 0 ? std::size_t{1} : nb);

    auto worker = [&](std::size_t begin, std::size_t end) {
        for (std::size_t bi = begin; bi < end; ++bi)
            for (std::size_t di = 0; di < nd; ++di)
                if (check_consistent(data, set.beta_grid[bi], set.delta_grid[di]))
                    set.mask[bi * nd + di] = 1;
    };
    if (nthreads <= 1) {
        worker(0, nb);
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (nb + nthreads - 1) / nthreads;
        for (std::size_t k = 0; k < nthreads; ++k) {
            std::size_t begin = k * chunk;
            std::size_t end = std::min(nb, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    if (build_witness) {
        for (std::size_t bi = 0; bi < nb && !set.witness; ++bi)
            for (std::size_t di = 0; di < nd; ++di)
                if (set.mask[bi * nd + di]) {
                    set.witness = consistency_witness(data, set.beta_grid[bi], set.delta_grid[di]);
                    set.witness_cell = {set.beta_grid[bi], set.delta_grid[di]};
                    break;
                }
    }
    return set;
}

std::vector<double> aggregate_mixture(
    const std::vector<std::pair<double, std::vector<double>>>& profiles) {
    if (profiles.empty()) throw std::invalid_argument("aggregate_mixture: no profiles");
    std::size_t T = profiles.front().second.size();
    double wsum = 0.0;
    for (const auto& [w, pr] : profiles) {
        if (pr.size() != T) throw std::invalid_argument("aggregate_mixture: horizon mismatch");
        if (!(w > 0.0)) throw std::invalid_argument("aggregate_mixture: weights must be positive");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-12)
        throw std::invalid_argument("aggregate_mixture: weights must sum to 1");

    std::vector<double> q(T + 1, 0.0);
    for (const auto& [w, pr] : profiles) {
        auto qi = unconditional_masses(pr);
        for (std::size_t t = 0; t <= T; ++t) q[t] += w * qi[t];
    }
    return conditional_from_unconditional(q);
}

}  // namespace taskstop
