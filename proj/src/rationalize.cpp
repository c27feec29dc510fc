#include "taskstop/rationalize.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace taskstop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Kahan-compensated running sum; the forward atom recursion telescopes
// cumulative weight prefixes and stays stable for horizons in the hundreds.
class CompensatedSum {
  public:
    void add(double x) {
        double y = x - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace

void StoppingData::validate() const {
    if (p.empty()) throw std::invalid_argument("stopping data: empty");
    if (!(p.front() > 0.0))
        throw std::invalid_argument("stopping data: p_1 must be strictly positive");
    for (std::size_t t = 0; t + 1 < p.size(); ++t)
        if (!(p[t] <= p[t + 1]))
            throw std::invalid_argument("stopping data: probabilities must be non-decreasing");
    if (!(p.back() < 1.0))
        throw std::invalid_argument("stopping data: p_T must be strictly below 1");
}

RationalizationResult rationalize_sophisticated(const StoppingData& data,
                                                const Preferences& prefs, double y_lower,
                                                std::optional<double> c1_opt) {
    data.validate();
    prefs.validate();
    if (!prefs.is_sophisticated())
        throw std::invalid_argument("rationalize_sophisticated: requires beta_hat = beta");
    if (!std::isfinite(y_lower))
        throw std::invalid_argument("rationalize_sophisticated: terminal value must be finite");

    const int T = data.horizon();
    const double beta = prefs.beta, delta = prefs.delta;
    const auto& p = data.p;
    const double pT = p.back();

    // Weights: two half-shares below the terminal cutoff, one band per
    // period, and the first-period tail on top.
    std::vector<double> f(static_cast<std::size_t>(T) + 2, 0.0);
    f[0] = f[1] = (1.0 - pT) / 2.0;
    for (int k = 2; k <= T; ++k)
        f[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(T - k + 1)] -
                                         p[static_cast<std::size_t>(T - k)];
    f[static_cast<std::size_t>(T) + 1] = p.front();

    // Default lower-extension margin from the geometric bound, doubled and
    // shifted to stay strictly positive even when the bound is zero.
    double c1;
    if (c1_opt) {
        c1 = *c1_opt;
        if (!(c1 > 0.0)) throw std::invalid_argument("rationalize_sophisticated: c1 must be > 0");
    } else {
        double gamma = delta * (1.0 - pT) / 2.0;
        double bound = 0.0;
        if (T >= 2) {
            double gpow = std::pow(gamma, T - 1);
            bound = std::max(0.0, -(1.0 - beta) * delta * y_lower * (1.0 - gpow) /
                                      ((1.0 - gamma) * gpow));
        }
        c1 = 2.0 * bound + 1.0;
    }

    std::vector<double> pi(static_cast<std::size_t>(T) + 2, 0.0);
    const int max_retries = 5;
    for (int attempt = 0;; ++attempt) {
        pi[0] = y_lower - c1;
        pi[1] = y_lower;
        CompensatedSum prefix;  // sum of f_0..f_{k-2}
        prefix.add(f[0]);
        for (int k = 2; k <= T; ++k) {
            double prev = pi[static_cast<std::size_t>(k - 1)];
            double prev2 = pi[static_cast<std::size_t>(k - 2)];
            pi[static_cast<std::size_t>(k)] =
                prev + (1.0 - beta) * delta * f[static_cast<std::size_t>(k - 1)] * prev +
                delta * prefix.value() * (prev - prev2);
            prefix.add(f[static_cast<std::size_t>(k - 1)]);
        }
        // prefix now holds f_0 + ... + f_{T-1}
        double piT = pi[static_cast<std::size_t>(T)];
        double piT1 = (piT - beta * delta * f[static_cast<std::size_t>(T)] * piT -
                       delta * pi[static_cast<std::size_t>(T - 1)] * prefix.value()) /
                      (beta * delta * f[static_cast<std::size_t>(T) + 1]);
        pi[static_cast<std::size_t>(T) + 1] = piT1;

        bool increasing = true;
        for (std::size_t k = 1; k < pi.size(); ++k)
            if (!(pi[k] > pi[k - 1])) increasing = false;
        if (increasing && piT > 0.0) break;
        if (c1_opt || attempt >= max_retries) {
            std::ostringstream os;
            os << "rationalize_sophisticated: atom chain not strictly increasing with pi_T > 0 "
               << "(c1 = " << c1 << ")";
            throw std::runtime_error(os.str());
        }
        c1 *= 10.0;
    }

    RationalizationResult res{Distribution::discrete(pi, f),
                              StoppingProblem{},
                              EquilibriumProfile{},
                              pi,
                              f,
                              c1,
                              0.0,
                              0,
                              0.0};
    res.problem = StoppingProblem::stationary(res.distribution, T, y_lower);
    res.profile = solve_equilibrium(res.problem, prefs);
    return res;
}

namespace {

// Segment layout shared by the fully-naive construction: weights below the
// terminal cutoff, one band per interior period, and the top tail.
Distribution naive_distribution(const std::vector<double>& w, const std::vector<double>& p,
                                double y_lower, double c1, double c2,
                                std::vector<double>* edges_out,
                                std::vector<double>* weights_out) {
    const int T = static_cast<int>(p.size());
    std::vector<double> edges(static_cast<std::size_t>(T) + 2, 0.0);
    edges[0] = y_lower - c1;
    edges[1] = y_lower;
    for (int k = 2; k <= T; ++k)
        edges[static_cast<std::size_t>(k)] = w[static_cast<std::size_t>(T - k)];  // v_{T-k+1}
    edges[static_cast<std::size_t>(T) + 1] = w[0] + c2;

    std::vector<double> weights(static_cast<std::size_t>(T) + 1, 0.0);
    weights[0] = 1.0 - p.back();
    for (int k = 1; k <= T - 1; ++k)
        weights[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(T - k)] -
                                               p[static_cast<std::size_t>(T - k - 1)];
    weights[static_cast<std::size_t>(T)] = p.front();

    std::vector<UniformSegment> segs;
    segs.reserve(weights.size());
    for (std::size_t k = 0; k < weights.size(); ++k)
        segs.push_back(UniformSegment{edges[k], edges[k + 1], weights[k]});
    if (edges_out) *edges_out = edges;
    if (weights_out) *weights_out = weights;
    return Distribution::piecewise_uniform(std::move(segs));
}

}  // namespace

RationalizationResult rationalize_naive(const StoppingData& data, const Preferences& prefs,
                                        double y_lower, const NaiveOptions& opt) {
    data.validate();
    prefs.validate();
    if (!prefs.is_naive())
        throw std::invalid_argument("rationalize_naive: requires beta_hat = 1");
    if (!(prefs.delta < 1.0))
        throw std::invalid_argument("rationalize_naive: requires delta < 1");
    if (!(std::isfinite(y_lower) && y_lower < 0.0))
        throw std::invalid_argument("rationalize_naive: requires a strictly negative terminal value");
    if (!(opt.c1 > 0.0 && opt.c2 > 0.0))
        throw std::invalid_argument("rationalize_naive: c1, c2 must be > 0");
    if (!(opt.tol > 0.0) || opt.max_iter < 1)
        throw std::invalid_argument("rationalize_naive: bad tolerance/iteration budget");

    const int T = data.horizon();
    const double top = prefs.delta * opt.c2 / (1.0 - prefs.delta);
    if (T == 1) {
        // No interior continuation values to solve for; the segment layout
        // alone pins p_1.
        Distribution f = Distribution::piecewise_uniform(
            {UniformSegment{y_lower - opt.c1, y_lower, 1.0 - data.p[0]},
             UniformSegment{y_lower, y_lower + opt.c2, data.p[0]}});
        RationalizationResult res{f, StoppingProblem{}, EquilibriumProfile{},
                                  {y_lower - opt.c1, y_lower, y_lower + opt.c2},
                                  {1.0 - data.p[0], data.p[0]},
                                  opt.c1, opt.c2, 0, 0.0};
        res.problem = StoppingProblem::stationary(res.distribution, 1, y_lower);
        res.profile = solve_equilibrium(res.problem, prefs);
        return res;
    }

    auto apply_L = [&](const std::vector<double>& w) {
        Distribution f = naive_distribution(w, data.p, y_lower, opt.c1, opt.c2, nullptr, nullptr);
        auto problem = StoppingProblem::stationary(f, T, y_lower);
        auto profile = solve_equilibrium(problem, prefs);
        std::vector<double> out(static_cast<std::size_t>(T - 1));
        for (int t = 0; t < T - 1; ++t) out[static_cast<std::size_t>(t)] = profile.v[static_cast<std::size_t>(t)];
        return out;
    };

    const double scale = std::max({1.0, std::abs(y_lower), std::abs(top)});
    auto iterate = [&](std::vector<double> w, int* iters_used) {
        int it = 0;
        double gap = kInf;
        bool hit_tol = false;
        double prev_gap = kInf;
        while (it < opt.max_iter) {
            auto next = apply_L(w);
            gap = 0.0;
            for (std::size_t i = 0; i < w.size(); ++i)
                gap = std::max(gap, std::abs(next[i] - w[i]));
            w = std::move(next);
            ++it;
            if (gap <= opt.tol) {
                if (!hit_tol) hit_tol = true;
                // Polish toward machine convergence so downstream
                // round-trips are not limited by the loose user tolerance.
                if (gap <= 1e-15 * scale || gap >= prev_gap) break;
            }
            prev_gap = gap;
        }
        if (!hit_tol) {
            std::ostringstream os;
            os << "rationalize_naive: no fixed point within " << opt.max_iter
               << " iterations (last step " << gap << ")";
            throw std::runtime_error(os.str());
        }
        if (iters_used) *iters_used = it;
        return w;
    };

    int iters_bottom = 0, iters_top = 0;
    auto w_bottom = iterate(std::vector<double>(static_cast<std::size_t>(T - 1), y_lower),
                            &iters_bottom);
    auto w_top = iterate(std::vector<double>(static_cast<std::size_t>(T - 1), top), &iters_top);
    double lattice_gap = 0.0;
    for (std::size_t i = 0; i < w_bottom.size(); ++i)
        lattice_gap = std::max(lattice_gap, std::abs(w_top[i] - w_bottom[i]));

    std::vector<double> edges, weights;
    RationalizationResult res{naive_distribution(w_bottom, data.p, y_lower, opt.c1, opt.c2,
                                                 &edges, &weights),
                              StoppingProblem{}, EquilibriumProfile{}, edges, weights,
                              opt.c1, opt.c2, iters_bottom + iters_top, lattice_gap};
    res.problem = StoppingProblem::stationary(res.distribution, T, y_lower);
    res.profile = solve_equilibrium(res.problem, prefs);
    return res;
}

std::vector<double> naive_operator_apply(const StoppingData& data, const Preferences& prefs,
                                         double y_lower, const NaiveOptions& opt,
                                         const std::vector<double>& w) {
    data.validate();
    prefs.validate();
    const int T = data.horizon();
    if (static_cast<int>(w.size()) != T - 1)
        throw std::invalid_argument("naive_operator_apply: candidate needs T-1 entries");
    Distribution f = naive_distribution(w, data.p, y_lower, opt.c1, opt.c2, nullptr, nullptr);
    auto problem = StoppingProblem::stationary(f, T, y_lower);
    auto profile = solve_equilibrium(problem, prefs);
    return std::vector<double>(profile.v.begin(), profile.v.end() - 1);
}

RationalizationResult moment_renormalize(const RationalizationResult& result, double target_mean,
                                         double target_sd) {
    if (!(target_sd > 0.0))
        throw std::invalid_argument("moment_renormalize: target sd must be positive");
    double var = result.distribution.variance();
    if (!(var > 0.0)) throw std::invalid_argument("moment_renormalize: degenerate source law");
    double mean = result.distribution.mean();
    double scale = target_sd / std::sqrt(var);
    double shift = target_mean - scale * mean;

    Preferences unit{1.0, 1.0, 1.0};
    RationalizationResult out = result;
    out.distribution = Distribution::affine(result.distribution, shift, scale);
    out.problem = StoppingProblem::stationary(out.distribution, result.problem.horizon,
                                              scale * result.problem.terminal_value + shift);
    out.profile = solve_equilibrium(out.problem, unit);
    for (auto& x : out.mass_points) x = scale * x + shift;
    out.c1 = scale * result.c1;
    out.c2 = scale * result.c2;

    for (std::size_t t = 0; t < out.profile.p.size(); ++t)
        if (std::abs(out.profile.p[t] - result.profile.p[t]) > 1e-10)
            throw std::runtime_error(
                "moment_renormalize: stopping probabilities moved under the affine transform");
    return out;
}

}  // namespace taskstop
