#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace taskstop {

// Relative tolerance used to decide whether a query threshold sits on an
// atom.  Constructions in the rationalizer place atoms exactly at the
// continuation values that later become cutoff queries, so 1-ulp ties are
// the norm rather than the exception.
inline constexpr double kAtomSnap = 1e-12;

struct DiscreteSpec {
    std::vector<double> points;   // strictly increasing after normalization
    std::vector<double> weights;  // positive, sum to 1
};

struct UniformSegment {
    double a = 0.0;
    double b = 0.0;       // a <= b; a == b is an atom
    double weight = 0.0;  // non-negative
};

struct PiecewiseUniformSpec {
    std::vector<UniformSegment> segments;
};

enum class Family {
    uniform,            // loc = lower, scale = upper - lower
    normal,             // loc = mean, scale = sd
    logistic,           // loc = mu, scale = s          (sd = s*pi/sqrt(3))
    extreme_value,      // Gumbel max: loc = mu, scale = s (sd = s*pi/sqrt(6))
    lognormal_negated,  // y = -C, log C ~ N(loc, scale^2)
};

struct ParametricSpec {
    Family family = Family::uniform;
    double loc = 0.0;
    double scale = 1.0;
};

class Distribution;

struct AffineSpec {
    std::shared_ptr<const Distribution> inner;
    double shift = 0.0;  // kappa
    double scale = 1.0;  // kappa2 > 0
};

/// Immutable one-dimensional payoff law.  All queries are pure and safe to
/// call concurrently.
class Distribution {
  public:
    using Spec = std::variant<DiscreteSpec, PiecewiseUniformSpec, ParametricSpec, AffineSpec>;

    static Distribution discrete(std::vector<double> points, std::vector<double> weights);
    static Distribution point_mass(double x);
    static Distribution piecewise_uniform(std::vector<UniformSegment> segments);
    static Distribution uniform(double lower, double upper);
    static Distribution normal(double mean, double sd);
    static Distribution logistic(double mu, double s);
    static Distribution extreme_value(double mu, double s);
    static Distribution lognormal_negated(double mu, double sigma);
    static Distribution affine(Distribution inner, double shift, double scale);

    /// Mean/sd-matched constructors for the parametric families used in
    /// estimation (sd > 0).
    static Distribution from_moments(Family family, double mean, double sd);

    /// Right-continuous CDF; mass at x is included.
    double cdf(double x) const;

    /// Strict upper partial expectation: integral of z over (w, inf).
    /// Mass exactly at w is excluded.  PE(-inf) == mean().
    double partial_expectation(double w) const;

    /// Weak variant: integral over [w, inf); atoms at w included.
    double partial_expectation_weak(double w) const;

    double mean() const;
    double variance() const;

    /// i.i.d. draws, deterministic for a fixed seed.
    std::vector<double> sample(std::uint64_t seed, std::size_t n) const;

    /// Atoms and segment/support endpoints, for FOSD grids and plotting.
    std::vector<double> thresholds() const;

    /// Finite bracket [lo, hi] outside of which the CDF is within ~1e-12
    /// of its limits (exact support bounds where they exist).
    std::pair<double, double> support_bounds() const;

    const Spec& spec() const { return spec_; }
    std::string describe() const;

  private:
    explicit Distribution(Spec spec) : spec_(std::move(spec)) {}
    Spec spec_;
};

/// F first-order stochastically dominates G:  cdf_F <= cdf_G everywhere,
/// checked on the union of both threshold sets plus a refinement mesh.
bool fosd_geq(const Distribution& f, const Distribution& g, std::size_t mesh = 512);

}  // namespace taskstop
