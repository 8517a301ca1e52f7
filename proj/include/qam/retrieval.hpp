// Repeat-until-success retrieval protocol with a repetition threshold.
//
// Each attempt reruns the deterministic circuit on a fresh memory copy and
// succeeds (control register all zeros) with the closed-form recognition
// probability; the first success samples the output pattern from the
// post-selected distribution. An input is classified non-recognized once T
// attempts have been spent. Attempt counting: T is the maximum number of
// total attempts, the first one included.
//
// Sampling works from the closed-form distributions, whose equivalence with
// the gate-level simulation is established in the gatesim test suite.
// Trials are independent and every trial owns an rng stream derived from
// the master seed, so aggregate results are reproducible and order-free.
#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "qam/pattern.hpp"
#include "qam/rng.hpp"

namespace qam::retrieval {

struct ProtocolResult {
    bool recognized = false;
    std::int64_t attempts_used = 0;  // = T when not recognized
    std::optional<BinaryPattern> output;
};

struct ProtocolStats {
    std::int64_t trials = 0;
    std::int64_t recognized = 0;
    double recognition_rate = 0.0;
    // Mean attempts among recognized trials (NaN when none were recognized);
    // approaches 1/P_rec as T grows.
    double mean_attempts = 0.0;
    // Mean attempts over all trials, failures contributing their full T.
    double mean_attempts_all = 0.0;
    std::map<BinaryPattern, std::int64_t> output_histogram;
};

ProtocolResult run_protocol(const MemoryInstance& mem, const BinaryPattern& input, std::int64_t b,
                            std::int64_t threshold, Rng& rng);

ProtocolStats run_trials(const MemoryInstance& mem, const BinaryPattern& input, std::int64_t b,
                         std::int64_t threshold, std::int64_t trials, std::uint64_t seed);

}  // namespace qam::retrieval
