#include <doctest.h>

#include <cmath>

#include "taskstop/estimate.hpp"

using namespace taskstop;

namespace {

std::vector<double> deadline_data() {
    EstimationSpec spec;
    spec.family = Family::uniform;
    spec.mean = 0.0;
    spec.sd = 0.577;
    return model_profile(spec, 1.0).p;
}

}  // namespace

TEST_CASE("model profile reproduces the deadline data") {
    EstimationSpec spec;
    spec.family = Family::uniform;
    spec.mean = 0.0;
    spec.sd = 0.577;
    auto prof = model_profile(spec, 1.0);
    double expected[] = {0.25827, 0.304687, 0.375, 0.5, 1.0};
    for (int t = 0; t < 5; ++t)
        CHECK(std::abs(prof.p[static_cast<std::size_t>(t)] - expected[t]) <= 5e-6);

    spec.horizon = 1;
    auto one = model_profile(spec, 0.5);
    CHECK(one.p[0] == 1.0);
}

TEST_CASE("criterion values at the truth") {
    auto data = deadline_data();
    CHECK(criterion_value(data, data, FitCriterion::squared_distance) == 0.0);
    CHECK(criterion_value(data, data, FitCriterion::squared_distance,
                          SquaredDistanceOn::conditional) == 0.0);
    // likelihood at the truth equals the data's own entropy
    auto q = unconditional_masses(data);
    double entropy = 0.0;
    for (double x : q)
        if (x > 0.0) entropy -= x * std::log(x);
    CHECK(criterion_value(data, data, FitCriterion::likelihood) ==
          doctest::Approx(entropy).epsilon(1e-12));
    CHECK(entropy == doctest::Approx(1.59186).epsilon(1e-4));
}

TEST_CASE("published normal-sophisticate fit") {
    auto data = deadline_data();
    EstimationSpec spec;
    spec.family = Family::normal;
    spec.mean = 0.0;
    spec.sd = 0.577;
    spec.sophisticated = true;
    auto at_best = model_profile(spec, 0.819);
    double dist = criterion_value(at_best.p, data, FitCriterion::squared_distance);
    CHECK(dist == doctest::Approx(0.0026777).epsilon(0.05));

    auto res = estimate_beta(spec, data, 1);
    CHECK(std::abs(res.beta_hat - 0.819) <= 0.0015);
    CHECK(res.criterion_value == doctest::Approx(0.0026777).epsilon(0.05));

    // the returned argmin attains the curve minimum
    for (const auto& [b, val] : res.per_beta_curve) CHECK(res.criterion_value <= val + 1e-15);
}

TEST_CASE("grid refinement moves the argmin by at most one coarse step") {
    auto data = deadline_data();
    EstimationSpec spec;
    spec.family = Family::normal;
    spec.mean = 0.0;
    spec.sd = 0.577;
    spec.beta_grid = {0.7, 0.95, 0.005};
    auto coarse = estimate_beta(spec, data, 1);
    spec.beta_grid = {0.7, 0.95, 0.0005};
    auto fine = estimate_beta(spec, data, 1);
    CHECK(std::abs(coarse.beta_hat - fine.beta_hat) <= 0.005 + 1e-12);
}

TEST_CASE("fitted profiles keep a monotone hazard") {
    auto data = deadline_data();
    for (Family fam : {Family::normal, Family::logistic, Family::extreme_value}) {
        for (bool soph : {true, false}) {
            EstimationSpec spec;
            spec.family = fam;
            spec.mean = 0.0;
            spec.sd = 0.577;
            spec.sophisticated = soph;
            spec.beta_grid = {0.5, 1.0, 0.005};
            auto res = estimate_beta(spec, data, 1);
            auto prof = model_profile(spec, res.beta_hat);
            for (std::size_t t = 0; t + 1 < prof.p.size(); ++t)
                CHECK(prof.p[t] <= prof.p[t + 1] + 1e-12);
        }
    }
}

TEST_CASE("conversion bijection when the task is mandatory") {
    std::vector<double> p{0.1, 0.45, 1.0};
    auto q = unconditional_masses(p);
    CHECK(q.back() == 0.0);
    auto back = conditional_from_unconditional(q);
    for (std::size_t t = 0; t < p.size(); ++t)
        CHECK(back[t] == doctest::Approx(p[t]).epsilon(1e-13));
}

TEST_CASE("likelihood goes infinite on impossible outcomes") {
    std::vector<double> model{1.0, 1.0, 1.0};  // all mass in period 1
    std::vector<double> data{0.5, 0.5, 1.0};
    CHECK(std::isinf(criterion_value(model, data, FitCriterion::likelihood)));
}

TEST_CASE("completion histogram") {
    auto problem = StoppingProblem::stationary(Distribution::point_mass(1.0), 4, 0.0);
    auto q = completion_histogram(problem, Preferences{0.5, 0.5, 1.0});
    REQUIRE(q.size() == 5);
    CHECK(q[0] == doctest::Approx(1.0).epsilon(1e-15));
    for (std::size_t t = 1; t < q.size(); ++t) CHECK(q[t] == 0.0);
}
