#include "qam/retrieval.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "qam/closedform.hpp"
#include "qam/errors.hpp"

namespace qam::retrieval {

namespace {

// Per-attempt sampling data, hoisted out of the trial loop.
struct SamplingPlan {
    double p_rec = 0.0;
    std::vector<double> cumulative;  // over stored indices; empty when p_rec == 0
};

SamplingPlan build_plan(const MemoryInstance& mem, const BinaryPattern& input, std::int64_t b) {
    const DistanceSpectrum spectrum = distance_spectrum(mem, input);
    SamplingPlan plan;
    if (spectrum.min_distance() == mem.width() && b >= 1) return plan;  // never recognized
    const auto stats = closedform::retrieval_distribution(mem, input, b);
    plan.p_rec = stats.p_rec;
    plan.cumulative.resize(stats.per_pattern.size());
    double running = 0.0;
    for (std::size_t k = 0; k < stats.per_pattern.size(); ++k) {
        running += stats.per_pattern[k];
        plan.cumulative[k] = running;
    }
    return plan;
}

ProtocolResult run_with_plan(const MemoryInstance& mem, const SamplingPlan& plan,
                             std::int64_t threshold, Rng& rng) {
    ProtocolResult result;
    for (std::int64_t attempt = 1; attempt <= threshold; ++attempt) {
        result.attempts_used = attempt;
        if (uniform_double(rng) < plan.p_rec) {
            result.recognized = true;
            const std::size_t k = sample_cumulative(rng, plan.cumulative);
            result.output = mem.pattern(static_cast<std::int64_t>(k));
            return result;
        }
    }
    return result;
}

void validate(std::int64_t b, std::int64_t threshold) {
    if (b < 1) throw validation_error("retrieval requires at least one control qbit");
    if (threshold < 1) throw validation_error("repetition threshold must be at least 1");
}

}  // namespace

ProtocolResult run_protocol(const MemoryInstance& mem, const BinaryPattern& input, std::int64_t b,
                            std::int64_t threshold, Rng& rng) {
    validate(b, threshold);
    return run_with_plan(mem, build_plan(mem, input, b), threshold, rng);
}

ProtocolStats run_trials(const MemoryInstance& mem, const BinaryPattern& input, std::int64_t b,
                         std::int64_t threshold, std::int64_t trials, std::uint64_t seed) {
    validate(b, threshold);
    if (trials < 1) throw validation_error("trial count must be at least 1");
    const SamplingPlan plan = build_plan(mem, input, b);

    ProtocolStats stats;
    stats.trials = trials;
    std::int64_t attempts_recognized = 0;
    std::int64_t attempts_all = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        Rng rng = make_stream(seed, static_cast<std::uint64_t>(t));
        const ProtocolResult result = run_with_plan(mem, plan, threshold, rng);
        attempts_all += result.attempts_used;
        if (result.recognized) {
            ++stats.recognized;
            attempts_recognized += result.attempts_used;
            ++stats.output_histogram[*result.output];
        }
    }
    stats.recognition_rate = static_cast<double>(stats.recognized) / static_cast<double>(trials);
    stats.mean_attempts =
        stats.recognized > 0
            ? static_cast<double>(attempts_recognized) / static_cast<double>(stats.recognized)
            : std::numeric_limits<double>::quiet_NaN();
    stats.mean_attempts_all = static_cast<double>(attempts_all) / static_cast<double>(trials);
    return stats;
}

}  // namespace qam::retrieval
