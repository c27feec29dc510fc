#include "taskstop/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace taskstop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEuler = 0.57721566490153286060651209008240243;
constexpr double kPi = 3.14159265358979323846264338327950288;

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }
double norm_sf(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }
double norm_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi); }

// E1(x) = \int_x^inf e^{-u}/u du for x > 0.
double exp1(double x) {
    if (x <= 0.0) throw std::invalid_argument("exp1: argument must be positive");
    return -std::expint(-x);
}

bool snap_eq(double x, double pt) {
    return std::abs(x - pt) <= kAtomSnap * std::max(1.0, std::abs(pt));
}

void check_weights(const std::vector<double>& w, const char* what) {
    double sum = 0.0;
    for (double wi : w) {
        if (!(wi >= 0.0)) throw std::invalid_argument(std::string(what) + ": negative weight");
        sum += wi;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument(std::string(what) + ": weights must sum to 1");
}

}  // namespace

Distribution Distribution::discrete(std::vector<double> points, std::vector<double> weights) {
    if (points.empty() || points.size() != weights.size())
        throw std::invalid_argument("discrete: points/weights size mismatch");
    for (double x : points)
        if (!std::isfinite(x)) throw std::invalid_argument("discrete: non-finite atom");
    check_weights(weights, "discrete");
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return points[i] < points[j]; });
    DiscreteSpec s;
    for (std::size_t i : order) {
        if (!s.points.empty() && points[i] == s.points.back()) {
            s.weights.back() += weights[i];  // coalesce exact duplicates
        } else {
            s.points.push_back(points[i]);
            s.weights.push_back(weights[i]);
        }
    }
    return Distribution(Spec{std::move(s)});
}

Distribution Distribution::point_mass(double x) { return discrete({x}, {1.0}); }

Distribution Distribution::piecewise_uniform(std::vector<UniformSegment> segments) {
    if (segments.empty()) throw std::invalid_argument("piecewise_uniform: no segments");
    std::vector<double> w;
    for (const auto& seg : segments) {
        if (!(std::isfinite(seg.a) && std::isfinite(seg.b)) || seg.a > seg.b)
            throw std::invalid_argument("piecewise_uniform: bad segment endpoints");
        w.push_back(seg.weight);
    }
    check_weights(w, "piecewise_uniform");
    std::stable_sort(segments.begin(), segments.end(),
                     [](const UniformSegment& x, const UniformSegment& y) {
                         return x.a < y.a || (x.a == y.a && x.b < y.b);
                     });
    return Distribution(Spec{PiecewiseUniformSpec{std::move(segments)}});
}

Distribution Distribution::uniform(double lower, double upper) {
    if (!(lower < upper)) throw std::invalid_argument("uniform: need lower < upper");
    return Distribution(Spec{ParametricSpec{Family::uniform, lower, upper - lower}});
}

Distribution Distribution::normal(double mean, double sd) {
    if (!(sd > 0.0)) throw std::invalid_argument("normal: sd must be positive");
    return Distribution(Spec{ParametricSpec{Family::normal, mean, sd}});
}

Distribution Distribution::logistic(double mu, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("logistic: scale must be positive");
    return Distribution(Spec{ParametricSpec{Family::logistic, mu, s}});
}

Distribution Distribution::extreme_value(double mu, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("extreme_value: scale must be positive");
    return Distribution(Spec{ParametricSpec{Family::extreme_value, mu, s}});
}

Distribution Distribution::lognormal_negated(double mu, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("lognormal_negated: sigma must be positive");
    return Distribution(Spec{ParametricSpec{Family::lognormal_negated, mu, sigma}});
}

Distribution Distribution::affine(Distribution inner, double shift, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("affine: scale must be positive");
    AffineSpec s;
    s.inner = std::make_shared<const Distribution>(std::move(inner));
    s.shift = shift;
    s.scale = scale;
    return Distribution(Spec{std::move(s)});
}

Distribution Distribution::from_moments(Family family, double mean, double sd) {
    if (!(sd > 0.0)) throw std::invalid_argument("from_moments: sd must be positive");
    switch (family) {
        case Family::uniform: {
            double half = sd * std::sqrt(3.0);
            return uniform(mean - half, mean + half);
        }
        case Family::normal:
            return normal(mean, sd);
        case Family::logistic:
            return logistic(mean, sd * std::sqrt(3.0) / kPi);
        case Family::extreme_value: {
            double s = sd * std::sqrt(6.0) / kPi;
            return extreme_value(mean - kEuler * s, s);
        }
        case Family::lognormal_negated:
            throw std::invalid_argument("from_moments: lognormal_negated uses native (mu, sigma)");
    }
    throw std::invalid_argument("from_moments: unknown family");
}

namespace {

double param_cdf(const ParametricSpec& p, double x) {
    switch (p.family) {
        case Family::uniform: {
            double u = (x - p.loc) / p.scale;
            return std::clamp(u, 0.0, 1.0);
        }
        case Family::normal:
            return norm_cdf((x - p.loc) / p.scale);
        case Family::logistic:
            return 1.0 / (1.0 + std::exp(-(x - p.loc) / p.scale));
        case Family::extreme_value:
            return std::exp(-std::exp(-(x - p.loc) / p.scale));
        case Family::lognormal_negated:
            if (x >= 0.0) return 1.0;
            return norm_sf((std::log(-x) - p.loc) / p.scale);
    }
    return 0.0;
}

// Strict upper partial expectation for the absolutely continuous families
// (strict and weak coincide).
double param_pe(const ParametricSpec& p, double w) {
    switch (p.family) {
        case Family::uniform: {
            double a = p.loc, b = p.loc + p.scale;
            if (w >= b) return 0.0;
            double lo = std::max(w, a);
            return (b * b - lo * lo) / (2.0 * (b - a));
        }
        case Family::normal: {
            double z = (w - p.loc) / p.scale;
            return p.loc * norm_sf(z) + p.scale * norm_pdf(z);
        }
        case Family::logistic: {
            double t = (w - p.loc) / p.scale;
            double sig = 1.0 / (1.0 + std::exp(-t));
            double pe_u;
            if (t > 0.0)
                pe_u = t * std::exp(-t) / (1.0 + std::exp(-t)) + std::log1p(std::exp(-t));
            else
                pe_u = t * (1.0 - sig) + std::log1p(std::exp(-t));
            return p.loc * (1.0 - sig) + p.scale * pe_u;
        }
        case Family::extreme_value: {
            double t = (w - p.loc) / p.scale;
            double e = std::exp(-t);
            double pe_u;
            if (e == 0.0) {
                pe_u = 0.0;  // w far above the support
            } else if (e > 700.0) {
                pe_u = kEuler;  // w far below: full mean of the unit Gumbel
            } else {
                pe_u = kEuler - t * std::exp(-e) + exp1(e);
            }
            return p.loc * (1.0 - std::exp(-e)) + p.scale * pe_u;
        }
        case Family::lognormal_negated: {
            if (w >= 0.0) return 0.0;
            double mu = p.loc, sg = p.scale;
            return -std::exp(mu + 0.5 * sg * sg) *
                   norm_cdf((std::log(-w) - mu - sg * sg) / sg);
        }
    }
    return 0.0;
}

double param_mean(const ParametricSpec& p) {
    switch (p.family) {
        case Family::uniform: return p.loc + 0.5 * p.scale;
        case Family::normal: return p.loc;
        case Family::logistic: return p.loc;
        case Family::extreme_value: return p.loc + kEuler * p.scale;
        case Family::lognormal_negated: return -std::exp(p.loc + 0.5 * p.scale * p.scale);
    }
    return 0.0;
}

double param_variance(const ParametricSpec& p) {
    switch (p.family) {
        case Family::uniform: return p.scale * p.scale / 12.0;
        case Family::normal: return p.scale * p.scale;
        case Family::logistic: return p.scale * p.scale * kPi * kPi / 3.0;
        case Family::extreme_value: return p.scale * p.scale * kPi * kPi / 6.0;
        case Family::lognormal_negated: {
            double s2 = p.scale * p.scale;
            return (std::exp(s2) - 1.0) * std::exp(2.0 * p.loc + s2);
        }
    }
    return 0.0;
}

std::pair<double, double> param_bounds(const ParametricSpec& p) {
    switch (p.family) {
        case Family::uniform: return {p.loc, p.loc + p.scale};
        case Family::normal: return {p.loc - 8.5 * p.scale, p.loc + 8.5 * p.scale};
        case Family::logistic: return {p.loc - 30.0 * p.scale, p.loc + 30.0 * p.scale};
        case Family::extreme_value: return {p.loc - 4.0 * p.scale, p.loc + 30.0 * p.scale};
        case Family::lognormal_negated:
            return {-std::exp(p.loc + 8.5 * p.scale), 0.0};
    }
    return {0.0, 0.0};
}

double param_sample_one(const ParametricSpec& p, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif01(std::numeric_limits<double>::min(),
                                                  1.0);  // open (0,1)
    switch (p.family) {
        case Family::uniform:
            return p.loc + p.scale * unif01(rng);
        case Family::normal: {
            std::normal_distribution<double> nd(p.loc, p.scale);
            return nd(rng);
        }
        case Family::logistic: {
            double u = unif01(rng);
            return p.loc + p.scale * std::log(u / (1.0 - u));
        }
        case Family::extreme_value:
            return p.loc - p.scale * std::log(-std::log(unif01(rng)));
        case Family::lognormal_negated: {
            std::normal_distribution<double> nd(p.loc, p.scale);
            return -std::exp(nd(rng));
        }
    }
    return 0.0;
}

double sample_one(const Distribution::Spec& spec, std::mt19937_64& rng);

struct SampleVisitor {
    std::mt19937_64& rng;
    double operator()(const DiscreteSpec& d) const {
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        double u = u01(rng), acc = 0.0;
        for (std::size_t i = 0; i < d.points.size(); ++i) {
            acc += d.weights[i];
            if (u <= acc) return d.points[i];
        }
        return d.points.back();
    }
    double operator()(const PiecewiseUniformSpec& pw) const {
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        double u = u01(rng), acc = 0.0;
        for (const auto& seg : pw.segments) {
            acc += seg.weight;
            if (u <= acc) {
                if (seg.a == seg.b) return seg.a;
                std::uniform_real_distribution<double> us(seg.a, seg.b);
                return us(rng);
            }
        }
        const auto& seg = pw.segments.back();
        return seg.a == seg.b ? seg.a : 0.5 * (seg.a + seg.b);
    }
    double operator()(const ParametricSpec& p) const { return param_sample_one(p, rng); }
    double operator()(const AffineSpec& a) const {
        return a.scale * sample_one(a.inner->spec(), rng) + a.shift;
    }
};

double sample_one(const Distribution::Spec& spec, std::mt19937_64& rng) {
    return std::visit(SampleVisitor{rng}, spec);
}

double mass_at(const Distribution::Spec& spec, double x);

struct MassAtVisitor {
    double x;
    double operator()(const DiscreteSpec& d) const {
        double m = 0.0;
        for (std::size_t i = 0; i < d.points.size(); ++i)
            if (snap_eq(x, d.points[i])) m += d.weights[i];
        return m;
    }
    double operator()(const PiecewiseUniformSpec& pw) const {
        double m = 0.0;
        for (const auto& seg : pw.segments)
            if (seg.a == seg.b && snap_eq(x, seg.a)) m += seg.weight;
        return m;
    }
    double operator()(const ParametricSpec&) const { return 0.0; }
    double operator()(const AffineSpec& a) const {
        return mass_at(a.inner->spec(), (x - a.shift) / a.scale);
    }
};

double mass_at(const Distribution::Spec& spec, double x) {
    return std::visit(MassAtVisitor{x}, spec);
}

}  // namespace

double Distribution::cdf(double x) const {
    struct V {
        double x;
        const Distribution* self;
        double operator()(const DiscreteSpec& d) const {
            double acc = 0.0;
            for (std::size_t i = 0; i < d.points.size(); ++i)
                if (d.points[i] <= x || snap_eq(x, d.points[i])) acc += d.weights[i];
            return acc;
        }
        double operator()(const PiecewiseUniformSpec& pw) const {
            double acc = 0.0;
            for (const auto& seg : pw.segments) {
                if (seg.a == seg.b) {
                    if (seg.a <= x || snap_eq(x, seg.a)) acc += seg.weight;
                } else if (x >= seg.b) {
                    acc += seg.weight;
                } else if (x > seg.a) {
                    acc += seg.weight * (x - seg.a) / (seg.b - seg.a);
                }
            }
            return std::min(acc, 1.0);
        }
        double operator()(const ParametricSpec& p) const { return param_cdf(p, x); }
        double operator()(const AffineSpec& a) const {
            return a.inner->cdf((x - a.shift) / a.scale);
        }
    };
    if (x == -kInf) return 0.0;
    if (x == kInf) return 1.0;
    return std::visit(V{x, this}, spec_);
}

double Distribution::partial_expectation(double w) const {
    struct V {
        double w;
        double operator()(const DiscreteSpec& d) const {
            double acc = 0.0;
            for (std::size_t i = 0; i < d.points.size(); ++i)
                if (d.points[i] > w && !snap_eq(w, d.points[i]))
                    acc += d.points[i] * d.weights[i];
            return acc;
        }
        double operator()(const PiecewiseUniformSpec& pw) const {
            double acc = 0.0;
            for (const auto& seg : pw.segments) {
                if (seg.a == seg.b) {
                    if (seg.a > w && !snap_eq(w, seg.a)) acc += seg.a * seg.weight;
                } else if (w < seg.b) {
                    double lo = std::max(w, seg.a);
                    acc += seg.weight * (seg.b * seg.b - lo * lo) / (2.0 * (seg.b - seg.a));
                }
            }
            return acc;
        }
        double operator()(const ParametricSpec& p) const { return param_pe(p, w); }
        double operator()(const AffineSpec& a) const {
            double wi = (w - a.shift) / a.scale;
            double tail = 1.0 - a.inner->cdf(wi);  // strict, since cdf includes the atom
            return a.scale * a.inner->partial_expectation(wi) + a.shift * tail;
        }
    };
    if (w == -kInf) return mean();
    if (w == kInf) return 0.0;
    return std::visit(V{w}, spec_);
}

double Distribution::partial_expectation_weak(double w) const {
    if (w == -kInf) return mean();
    if (w == kInf) return 0.0;
    return partial_expectation(w) + w * mass_at(spec_, w);
}

double Distribution::mean() const {
    struct V {
        double operator()(const DiscreteSpec& d) const {
            double acc = 0.0;
            for (std::size_t i = 0; i < d.points.size(); ++i) acc += d.points[i] * d.weights[i];
            return acc;
        }
        double operator()(const PiecewiseUniformSpec& pw) const {
            double acc = 0.0;
            for (const auto& seg : pw.segments) acc += seg.weight * 0.5 * (seg.a + seg.b);
            return acc;
        }
        double operator()(const ParametricSpec& p) const { return param_mean(p); }
        double operator()(const AffineSpec& a) const {
            return a.scale * a.inner->mean() + a.shift;
        }
    };
    return std::visit(V{}, spec_);
}

double Distribution::variance() const {
    struct V {
        double operator()(const DiscreteSpec& d) const {
            double m = 0.0, m2 = 0.0;
            for (std::size_t i = 0; i < d.points.size(); ++i) {
                m += d.points[i] * d.weights[i];
                m2 += d.points[i] * d.points[i] * d.weights[i];
            }
            return m2 - m * m;
        }
        double operator()(const PiecewiseUniformSpec& pw) const {
            double m = 0.0, m2 = 0.0;
            for (const auto& seg : pw.segments) {
                m += seg.weight * 0.5 * (seg.a + seg.b);
                m2 += seg.weight * (seg.a * seg.a + seg.a * seg.b + seg.b * seg.b) / 3.0;
            }
            return m2 - m * m;
        }
        double operator()(const ParametricSpec& p) const { return param_variance(p); }
        double operator()(const AffineSpec& a) const {
            return a.scale * a.scale * a.inner->variance();
        }
    };
    return std::visit(V{}, spec_);
}

std::vector<double> Distribution::sample(std::uint64_t seed, std::size_t n) const {
    if (n == 0) throw std::invalid_argument("sample: n must be >= 1");
    std::mt19937_64 rng(seed);
    std::vector<double> out(n);
    for (auto& x : out) x = sample_one(spec_, rng);
    return out;
}

std::vector<double> Distribution::thresholds() const {
    struct V {
        std::vector<double> operator()(const DiscreteSpec& d) const { return d.points; }
        std::vector<double> operator()(const PiecewiseUniformSpec& pw) const {
            std::vector<double> out;
            for (const auto& seg : pw.segments) {
                out.push_back(seg.a);
                out.push_back(seg.b);
            }
            return out;
        }
        std::vector<double> operator()(const ParametricSpec& p) const {
            auto [lo, hi] = param_bounds(p);
            return {lo, hi};
        }
        std::vector<double> operator()(const AffineSpec& a) const {
            auto inner = a.inner->thresholds();
            for (auto& x : inner) x = a.scale * x + a.shift;
            return inner;
        }
    };
    auto out = std::visit(V{}, spec_);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::pair<double, double> Distribution::support_bounds() const {
    auto th = thresholds();
    return {th.front(), th.back()};
}

std::string Distribution::describe() const {
    struct V {
        std::string operator()(const DiscreteSpec& d) const {
            std::ostringstream os;
            os << "discrete[" << d.points.size() << " atoms]";
            return os.str();
        }
        std::string operator()(const PiecewiseUniformSpec& pw) const {
            std::ostringstream os;
            os << "piecewise_uniform[" << pw.segments.size() << " segments]";
            return os.str();
        }
        std::string operator()(const ParametricSpec& p) const {
            static const char* names[] = {"uniform", "normal", "logistic", "extreme_value",
                                          "lognormal_negated"};
            std::ostringstream os;
            os << names[static_cast<int>(p.family)] << "(" << p.loc << ", " << p.scale << ")";
            return os.str();
        }
        std::string operator()(const AffineSpec& a) const {
            std::ostringstream os;
            os << "affine(" << a.inner->describe() << ", shift=" << a.shift
               << ", scale=" << a.scale << ")";
            return os.str();
        }
    };
    return std::visit(V{}, spec_);
}

bool fosd_geq(const Distribution& f, const Distribution& g, std::size_t mesh) {
    std::vector<double> grid = f.thresholds();
    {
        auto tg = g.thresholds();
        grid.insert(grid.end(), tg.begin(), tg.end());
    }
    double lo = *std::min_element(grid.begin(), grid.end());
    double hi = *std::max_element(grid.begin(), grid.end());
    if (hi > lo && mesh > 1) {
        for (std::size_t i = 0; i <= mesh; ++i)
            grid.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(mesh));
    }
    for (double x : grid)
        if (f.cdf(x) > g.cdf(x) + 1e-12) return false;
    return true;
}

}  // namespace taskstop
