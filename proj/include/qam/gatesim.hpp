// Exact complex state-vector simulation of the b-round retrieval circuit.
//
// The joint state of the memory and control registers never leaves the span
// of {stored pattern labels} x {all control bitstrings}, so the state is
// kept as p distinct memory labels with a dense 2^b amplitude column each
// (at most p * 2^b entries, far below 2^(n+b)). The input register is
// classical metadata: the circuit only ever reads it. Memory labels fit one
// machine word, which bounds exact simulation at n <= 64.
//
// Control qbit l (1-based) maps to bit l-1 of the control label, so the
// all-zeros outcome is label 0 and popcount(label) counts |1> control qbits.
//
// Gate functions take the state by value and return the transformed state;
// chain with std::move. Each gate is unitary to rounding.
#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "qam/pattern.hpp"
#include "qam/rng.hpp"

namespace qam::gatesim {

struct SimLimits {
    // Cap on p * 2^b amplitude-table entries.
    std::int64_t max_entries = std::int64_t{1} << 24;
};

// Identifies the active control qbit; valid values are 1..b.
struct RoundIndex {
    int l = 1;
};

class QuantumState {
public:
    std::int64_t memory_width() const { return n_; }
    int control_width() const { return b_; }
    const BinaryPattern& input() const { return input_; }
    std::span<const std::uint64_t> memory_labels() const { return labels_; }
    std::int64_t control_dim() const { return std::int64_t{1} << b_; }

    std::complex<double> amplitude(std::uint64_t memory_label, std::uint64_t control_label) const;
    double norm_squared() const;
    // Marginal probability of each control outcome, summed over memory labels.
    std::vector<double> control_marginals() const;

private:
    std::int64_t n_ = 0;
    int b_ = 0;
    BinaryPattern input_;
    std::vector<std::uint64_t> labels_;
    std::vector<std::complex<double>> amps_;  // amps_[i * 2^b + c]

    friend QuantumState prepare_initial(const MemoryInstance&, const BinaryPattern&, int,
                                        const SimLimits&);
    friend QuantumState apply_hadamard_control(QuantumState, RoundIndex);
    friend QuantumState apply_distance_transform(QuantumState);
    friend QuantumState apply_inverse_distance_transform(QuantumState);
    friend QuantumState apply_phase(QuantumState, RoundIndex);
    friend QuantumState project_control(QuantumState, std::uint64_t, double);
};

// |psi_0>: weight 1/sqrt(p) per stored pattern on the all-zeros control
// column; duplicate patterns accumulate their multiplicity and the state is
// normalized to unit norm.
QuantumState prepare_initial(const MemoryInstance& mem, const BinaryPattern& input, int b,
                             const SimLimits& limits = {});

// 2x2 Hadamard on control qbit l.
QuantumState apply_hadamard_control(QuantumState state, RoundIndex l);

// Per memory bit j: XOR with the input bit, then NOT. Afterwards bit j is 1
// exactly when input and stored pattern agree there; the zero count equals
// the Hamming distance. Self-inverse as a label map.
QuantumState apply_distance_transform(QuantumState state);
// Reverse-ordered inverse of the transform; restores the stored labels.
QuantumState apply_inverse_distance_transform(QuantumState state);

// Diagonal phase exp(+i pi z / 2n) on control-bit-l = 0 components and
// exp(-i pi z / 2n) on = 1 components, z being the number of zeros in the
// memory label. Expects a distance-transformed state.
QuantumState apply_phase(QuantumState state, RoundIndex l);

// One full round on control qbit l: H, transform, phase, inverse transform,
// H. Multiplies the control-bit-l = 0 branch by cos(pi d/2n) and the = 1
// branch by i sin(pi d/2n).
QuantumState run_round(QuantumState state, RoundIndex l);

// Prepare then run rounds 1..b.
QuantumState run_all_rounds(const MemoryInstance& mem, const BinaryPattern& input, int b,
                            const SimLimits& limits = {});

struct MeasurementResult {
    std::uint64_t outcome = 0;     // sampled control bitstring
    QuantumState collapsed;        // renormalized on the sampled outcome
    double prob_all_zeros = 0.0;   // exact marginal of the all-zeros outcome
};

// Sample the control register and collapse. prob_all_zeros is computed from
// the marginals, not from the sample.
MeasurementResult measure_control(const QuantumState& state, Rng& rng);

// Deterministic post-selection on the all-zeros outcome; throws
// validation_error when that outcome has no weight.
QuantumState project_all_zeros(const QuantumState& state);

// Memory readout distribution of a state collapsed on the all-zeros
// outcome. Duplicate stored patterns appear as one entry carrying their
// combined weight.
std::map<BinaryPattern, double> memory_distribution(const QuantumState& collapsed);

}  // namespace qam::gatesim
