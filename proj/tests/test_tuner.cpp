#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qam/errors.hpp"
#include "qam/numerics.hpp"
#include "qam/thermo.hpp"
#include "qam/tuner.hpp"

using namespace qam;

TEST_CASE("trivial target: nu = 0 is met by a single control qbit") {
    const auto plan = tuner::tune(1000, 0.05, 0.0);
    CHECK(plan.b == 1);
    CHECK(plan.achieved_d - plan.epsilon <= 1.0 - plan.nu);
}

TEST_CASE("minimality: b satisfies the criterion, b - 1 does not") {
    for (double nu : {0.7, 0.9, 0.96}) {
        const auto plan = tuner::tune(1000, 0.05, nu);
        const thermo::AverageModel model(plan.n, plan.d);
        const double target = plan.epsilon + (1.0 - nu);
        CHECK(plan.achieved_d <= target);
        if (plan.b > 1)
            CHECK(thermo::effective_distance(model, static_cast<double>(plan.b - 1)) > target);
    }
}

TEST_CASE("stricter efficiency never shrinks b") {
    std::int64_t previous = 0;
    for (double nu : {0.0, 0.5, 0.8, 0.9, 0.95, 0.98}) {
        const auto plan = tuner::tune(2000, 0.02, nu);
        CHECK(plan.b >= previous);
        previous = plan.b;
    }
}

TEST_CASE("threshold satisfies T * cos^{2b}(pi D / 2) >= 1") {
    for (double nu : {0.5, 0.9, 0.99}) {
        const auto plan = tuner::tune(5000, 0.01, nu);
        REQUIRE(plan.threshold_practical);
        const double log_p_rec_av =
            2.0 * static_cast<double>(plan.b) * num::log_cos_half_pi(plan.achieved_d);
        const double product =
            std::exp(std::log(static_cast<double>(plan.threshold)) + log_p_rec_av);
        CHECK(product >= 1.0 - 1e-12);
        // and T is not wasteful: (T - 1) would violate the bound
        if (plan.threshold > 1) {
            const double shy = std::exp(
                std::log(static_cast<double>(plan.threshold - 1)) + log_p_rec_av);
            CHECK(shy <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("threshold example: achieved D ~ 0.02 at b = 1e4 gives T ~ 2e4") {
    // T = ceil(exp(-2b ln cos(pi 0.01))) evaluated in the log domain
    const double log_t = -2.0 * 1e4 * std::log(std::cos(std::numbers::pi * 0.01));
    const double t = std::exp(log_t);
    CHECK(t == doctest::Approx(19365.0).epsilon(1e-3));
    CHECK(std::ceil(t) * std::pow(std::cos(std::numbers::pi * 0.01), 2e4) >= 1.0);
}

TEST_CASE("astronomical thresholds are reported in log10, not overflowed") {
    // push the achieved distance high: epsilon = 0.3 with nu close to 1
    const auto plan = tuner::tune(100, 0.3, 0.9999);
    CHECK_FALSE(plan.threshold_practical);
    CHECK(plan.log10_threshold_bound > 19.0);
    CHECK(std::isfinite(plan.log10_threshold_bound));
}

TEST_CASE("infeasible requests are reported, not looped") {
    // rounding pushes d/n above epsilon: epsilon n = 0.5 -> d = 1, d/n = 0.1
    CHECK_THROWS_WITH_AS(tuner::tune(10, 0.05, 1.0), doctest::Contains("infeasible"),
                         validation_error);
    CHECK_THROWS_AS(tuner::tune(0, 0.1, 0.5), validation_error);
    CHECK_THROWS_AS(tuner::tune(100, 1.0, 0.5), validation_error);
    CHECK_THROWS_AS(tuner::tune(100, 0.1, 1.5), validation_error);
}
