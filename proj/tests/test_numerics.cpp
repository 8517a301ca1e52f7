#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "qam/numerics.hpp"
#include "support/stat_test.hpp"

using namespace qam;

TEST_CASE("log-domain cosine powers") {
    CHECK(num::log_cos_half_pi(std::int64_t{0}, 8) == 0.0);
    CHECK(num::log_cos_half_pi(std::int64_t{8}, 8) == num::kNegInf);
    CHECK(num::log_cos_half_pi(std::int64_t{4}, 8) ==
          doctest::Approx(std::log(std::cos(std::numbers::pi / 4))).epsilon(1e-15));

    // 0^0 = 1 convention at b = 0, flush to zero at the top level otherwise
    CHECK(num::cos_pow_2b(num::kNegInf, 0.0) == 1.0);
    CHECK(num::cos_pow_2b(num::kNegInf, 3.0) == 0.0);
    CHECK(num::cos_pow_2b(-1e-4, 1e5) == doctest::Approx(std::exp(-20.0)).epsilon(1e-12));
    CHECK(num::cos_pow_2b(-1.0, 1e6) == 0.0);  // underflow flushes, no exception
}

TEST_CASE("log_sum_exp handles spread and -inf entries") {
    std::vector<double> xs{-1000.0, -1000.5, num::kNegInf};
    const double expect = -1000.0 + std::log(1.0 + std::exp(-0.5));
    CHECK(num::log_sum_exp(xs) == doctest::Approx(expect).epsilon(1e-14));
    std::vector<double> empty_like{num::kNegInf, num::kNegInf};
    CHECK(num::log_sum_exp(empty_like) == num::kNegInf);
}

TEST_CASE("adaptive Simpson reaches tight tolerances") {
    const double smooth = num::adaptive_simpson(
        [](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-12);
    CHECK(smooth == doctest::Approx(2.0).epsilon(1e-12));

    // integrable endpoint singularity: int_0^1 ln x dx = -1
    const double singular = num::adaptive_simpson(
        [](double x) { return x > 0 ? std::log(x) : -745.0; }, 0.0, 1.0, 1e-10);
    CHECK(singular == doctest::Approx(-1.0).epsilon(1e-7));
}

TEST_CASE("least-squares line fit") {
    std::vector<double> xs{0.0, 1.0, 2.0, 3.0};
    std::vector<double> ys{1.0, 3.0, 5.0, 7.0};
    const auto fit = num::linear_fit(xs, ys);
    CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("chi-square p-value matches known quantiles") {
    // P(chi2_1 > 3.841) = 0.05, P(chi2_5 > 15.086) = 0.01
    CHECK(testsupport::gamma_q(0.5, 3.841 / 2) == doctest::Approx(0.05).epsilon(1e-3));
    CHECK(testsupport::gamma_q(2.5, 15.086 / 2) == doctest::Approx(0.01).epsilon(1e-3));
}
