#include "taskstop/estimate.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace taskstop {

void EstimationSpec::validate() const {
    if (!(sd > 0.0)) throw std::invalid_argument("estimation: sd must be positive");
    if (!(beta_grid.step > 0.0) || !(beta_grid.lo < beta_grid.hi))
        throw std::invalid_argument("estimation: bad beta grid");
    if (!(beta_grid.lo > 0.0))
        throw std::invalid_argument("estimation: beta grid must stay positive");
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::invalid_argument("estimation: delta must lie in (0, 1]");
    if (horizon < 1) throw std::invalid_argument("estimation: horizon must be >= 1");
}

EquilibriumProfile model_profile(const EstimationSpec& spec, double beta) {
    spec.validate();
    Distribution f = Distribution::from_moments(spec.family, spec.mean, spec.sd);
    auto problem = StoppingProblem::stationary(f, spec.horizon, spec.terminal_value);
    Preferences prefs{beta, spec.sophisticated ? beta : 1.0, spec.delta};
    return solve_equilibrium(problem, prefs);
}

double criterion_value(const std::vector<double>& model_p, const std::vector<double>& data_p,
                       FitCriterion criterion, SquaredDistanceOn distance_on) {
    if (model_p.size() != data_p.size())
        throw std::invalid_argument("criterion: profile length mismatch");
    switch (criterion) {
        case FitCriterion::squared_distance: {
            if (distance_on == SquaredDistanceOn::conditional) {
                double acc = 0.0;
                for (std::size_t t = 0; t < model_p.size(); ++t) {
                    double d = model_p[t] - data_p[t];
                    acc += d * d;
                }
                return acc;
            }
            auto qm = unconditional_masses(model_p);
            auto qd = unconditional_masses(data_p);
            double acc = 0.0;
            for (std::size_t t = 0; t < qm.size(); ++t) {
                double d = qm[t] - qd[t];
                acc += d * d;
            }
            return std::sqrt(acc);
        }
        case FitCriterion::likelihood: {
            auto qm = unconditional_masses(model_p);
            auto qd = unconditional_masses(data_p);
            double acc = 0.0;
            for (std::size_t t = 0; t < qm.size(); ++t) {
                if (qd[t] <= 0.0) continue;
                if (qm[t] <= 0.0) return std::numeric_limits<double>::infinity();
                acc -= qd[t] * std::log(qm[t]);
            }
            return acc;
        }
    }
    throw std::invalid_argument("criterion: unknown criterion");
}

EstimateResult estimate_beta(const EstimationSpec& spec, const std::vector<double>& data_p,
                             int threads) {
    spec.validate();
    if (static_cast<int>(data_p.size()) != spec.horizon)
        throw std::invalid_argument("estimate_beta: data length does not match the horizon");

    std::vector<double> betas;
    long n = std::lround((spec.beta_grid.hi - spec.beta_grid.lo) / spec.beta_grid.step);
    for (long i = 0; i <= n; ++i) {
        double b = spec.beta_grid.lo + spec.beta_grid.step * static_cast<double>(i);
        if (b > spec.beta_grid.hi + 0.5 * spec.beta_grid.step) break;
        betas.push_back(std::min(b, 1.0));  // preferences cap beta at 1
        if (b >= 1.0) break;
    }
    // Grids that run past 1 are clipped; keep unique points only.
    betas.erase(std::unique(betas.begin(), betas.end()), betas.end());

    std::vector<double> values(betas.size(), 0.0);
    auto eval_range = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            auto prof = model_profile(spec, betas[i]);
            values[i] = criterion_value(prof.p, data_p, spec.criterion, spec.distance_on);
        }
    };
    unsigned hw = std::thread::hardware_concurrency();
    std::size_t nthreads = threads > 0 ? static_cast<std::size_t>(threads) : std::max(1u, hw);
    nthreads = std::min(nthreads, betas.size());
    if (nthreads <= 1) {
        eval_range(0, betas.size());
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (betas.size() + nthreads - 1) / nthreads;
        for (std::size_t k = 0; k < nthreads; ++k) {
            std::size_t begin = k * chunk, end = std::min(betas.size(), begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(eval_range, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    EstimateResult res;
    res.per_beta_curve.reserve(betas.size());
    std::size_t best = betas.size();
    for (std::size_t i = 0; i < betas.size(); ++i) {
        res.per_beta_curve.emplace_back(betas[i], values[i]);
        if (std::isfinite(values[i]) && (best == betas.size() || values[i] < values[best]))
            best = i;  // strict improvement keeps ties at the smaller beta
    }
    if (best == betas.size())
        throw std::runtime_error("estimate_beta: criterion is infinite on the whole grid");
    res.beta_hat = betas[best];
    res.criterion_value = values[best];
    return res;
}

std::vector<double> completion_histogram(const StoppingProblem& problem, const Preferences& prefs) {
    auto profile = solve_equilibrium(problem, prefs);
    return unconditional_masses(profile.p);
}

}  // namespace taskstop
