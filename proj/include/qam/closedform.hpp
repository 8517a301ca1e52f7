// Closed-form retrieval statistics and effective energy levels.
//
// Evaluates the measurement statistics of the b-round retrieval circuit
// directly from Hamming distances, valid at any register width, pattern
// count and round count. Weights cos^{2b}(pi d / 2n) are always formed in
// the log domain, so round counts of 1e5 and beyond neither overflow nor
// lose the relative ordering of the weights; genuine underflow flushes to
// zero. The distribution is exactly a Boltzmann distribution at temperature
// 1/b over levels E = -2 ln cos(pi d / 2n).
//
// All functions are pure.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qam/pattern.hpp"

namespace qam::closedform {

struct RetrievalStats {
    double p_rec = 0.0;      // probability the control register reads all zeros
    double partition = 0.0;  // Z = p * p_rec, same summation
    double log_partition = 0.0;  // finite whenever some pattern lies below distance n
    std::vector<double> per_pattern;  // retrieval probability per stored index
};

// (1/p) sum_j counts[j] cos^{2b}(pi j / 2n). b = 0 gives exactly 1.
double recognition_probability(const DistanceSpectrum& spectrum, std::int64_t b);

// Post-selected retrieval distribution over stored patterns, with the
// partition normalization. Throws validation_error when every pattern sits
// at distance n with b >= 1 (the input is never recognized).
RetrievalStats retrieval_distribution(const MemoryInstance& mem, const BinaryPattern& input,
                                      std::int64_t b);

// b -> infinity limit of the retrieval distribution: uniform over the set of
// minimal-distance patterns (ties share the probability equally).
std::vector<double> asymptotic_distribution(std::span<const std::int64_t> distances);
std::vector<double> asymptotic_distribution(const MemoryInstance& mem, const BinaryPattern& input);

// Effective dimensionless energy -2 ln cos(pi d / 2n); +infinity at d = n,
// zero only at d = 0.
double energy_level(std::int64_t d_hamming, std::int64_t n);

// Energy of a pattern in the normalized frame (input = all zeros), written
// as an infinite-range antiferromagnet in a field over spins +-1/2:
//   pi^2/16 + (pi^2/4) q^2 + (pi^2/4) q,   q = (sum of spins)/n.
// Algebraically identical to (pi^2/4)(d/n)^2; the all-zeros pattern gives
// exactly 0 and the balanced pattern exactly pi^2/16.
double ising_energy(const BinaryPattern& normalized_pattern);

}  // namespace qam::closedform
