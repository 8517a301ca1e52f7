#include "qam/tuner.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qam/errors.hpp"
#include "qam/numerics.hpp"
#include "qam/thermo.hpp"

namespace qam::tuner {

namespace {

constexpr std::int64_t kDoublingCap = std::int64_t{1} << 40;
const double kLog10Int64Max = std::log10(9.223372036854775807e18);

}  // namespace

TunePlan tune(std::int64_t n, double epsilon, double nu) {
    if (n < 1) throw validation_error("width must be positive");
    if (!(epsilon >= 0.0 && epsilon < 1.0)) throw validation_error("epsilon outside [0, 1)");
    if (!(nu >= 0.0 && nu <= 1.0)) throw validation_error("nu outside [0, 1]");

    const std::int64_t d = std::llround(epsilon * static_cast<double>(n));
    const thermo::AverageModel model(n, d);
    const double target = epsilon + (1.0 - nu);

    // inf_b D(b, d) = d/n; anything at or above the target cannot be met by
    // any finite b.
    if (model.min_rel_distance() >= target)
        throw validation_error(
            "infeasible: the b -> infinity effective distance d/n = " +
            std::to_string(model.min_rel_distance()) + " already exceeds epsilon + (1 - nu) = " +
            std::to_string(target));

    const auto satisfied = [&](std::int64_t b) {
        return thermo::effective_distance(model, static_cast<double>(b)) <= target;
    };

    std::int64_t hi = 1;
    while (!satisfied(hi)) {
        if (hi >= kDoublingCap)
            throw validation_error("criterion not met for any b up to 2^40; request is impractical");
        hi *= 2;
    }
    std::int64_t lo = hi / 2;  // 0 when hi == 1; the loop below then exits at once
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        (satisfied(mid) ? hi : lo) = mid;
    }

    TunePlan plan;
    plan.epsilon = epsilon;
    plan.nu = nu;
    plan.n = n;
    plan.d = d;
    plan.b = hi;
    plan.achieved_d = thermo::effective_distance(model, static_cast<double>(hi));

    const double log_t_bound =
        -2.0 * static_cast<double>(hi) * num::log_cos_half_pi(plan.achieved_d);
    plan.log10_threshold_bound = log_t_bound / std::numbers::ln10;
    plan.threshold_practical = plan.log10_threshold_bound <= kLog10Int64Max;
    if (plan.threshold_practical) {
        const long double bound = std::exp(static_cast<long double>(log_t_bound));
        auto t = static_cast<std::uint64_t>(std::ceil(bound));
        if (t < 1) t = 1;
        while (static_cast<long double>(t) < bound) ++t;
        plan.threshold = t;
    }
    return plan;
}

}  // namespace qam::tuner
