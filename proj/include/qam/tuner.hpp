// Design-criterion solver: pick the control-register size and repetition
// threshold for a wanted corruption tolerance and efficiency.
//
// Given a tolerated corruption fraction epsilon and a target efficiency nu,
// find the smallest positive integer b with
//     D(b, round(epsilon n)) - epsilon <= 1 - nu
// (D is monotone non-increasing in b, so a doubling phase followed by an
// integer bisection is exact) and the repetition threshold
//     T = ceil( 1 / cos^{2b}(pi D / 2) ),
// i.e. one over the average recognition probability at the achieved D. T is
// formed in the log domain; bounds beyond 2^63 - 1 are reported as
// impractical together with log10 of the bound.
#pragma once

#include <cstdint>

namespace qam::tuner {

struct TunePlan {
    double epsilon = 0.0;
    double nu = 0.0;
    std::int64_t n = 0;
    std::int64_t d = 0;  // round(epsilon * n)
    std::int64_t b = 0;
    double achieved_d = 0.0;  // D(b, d)
    bool threshold_practical = true;
    std::uint64_t threshold = 0;        // valid when threshold_practical
    double log10_threshold_bound = 0.0; // always valid
};

// Throws validation_error when no b can satisfy the criterion (the b -> inf
// limit of D is d/n already above epsilon + (1 - nu)).
TunePlan tune(std::int64_t n, double epsilon, double nu);

}  // namespace qam::tuner
