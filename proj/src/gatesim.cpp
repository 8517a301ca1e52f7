#include "qam/gatesim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "qam/errors.hpp"
#include "qam/numerics.hpp"

namespace qam::gatesim {

namespace {

std::uint64_t width_mask(std::int64_t n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

// XOR with input then NOT on every memory bit collapses to one XOR constant,
// which is its own inverse.
std::uint64_t agreement_label(std::uint64_t label, std::uint64_t input_label, std::uint64_t mask) {
    return (label ^ ~input_label) & mask;
}

}  // namespace

std::complex<double> QuantumState::amplitude(std::uint64_t memory_label,
                                             std::uint64_t control_label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == memory_label)
            return amps_[i * static_cast<std::size_t>(control_dim()) + control_label];
    return {0.0, 0.0};
}

double QuantumState::norm_squared() const {
    num::KahanSum s;
    for (const auto& a : amps_) s.add(std::norm(a));
    return s.value();
}

std::vector<double> QuantumState::control_marginals() const {
    const auto dim = static_cast<std::size_t>(control_dim());
    std::vector<double> marginals(dim, 0.0);
    for (std::size_t i = 0; i < labels_.size(); ++i)
        for (std::size_t c = 0; c < dim; ++c) marginals[c] += std::norm(amps_[i * dim + c]);
    return marginals;
}

QuantumState prepare_initial(const MemoryInstance& mem, const BinaryPattern& input, int b,
                             const SimLimits& limits) {
    if (b < 1) throw validation_error("at least one control qbit is required");
    if (input.size() != mem.width()) throw validation_error("input width does not match memory");
    if (mem.width() > 64)
        throw resource_error(
            "exact simulation keeps memory labels in one machine word (n <= 64); "
            "use the closed-form path for wider patterns");
    if (b >= 62) throw resource_error("control register too wide for exact simulation");

    std::vector<std::uint64_t> labels;
    labels.reserve(static_cast<std::size_t>(mem.pattern_count()));
    for (const auto& pat : mem.patterns()) labels.push_back(pat.as_label());
    std::sort(labels.begin(), labels.end());

    std::vector<std::uint64_t> unique_labels;
    std::vector<double> multiplicity;
    for (std::uint64_t label : labels) {
        if (unique_labels.empty() || unique_labels.back() != label) {
            unique_labels.push_back(label);
            multiplicity.push_back(1.0);
        } else {
            multiplicity.back() += 1.0;
        }
    }

    // overflow-safe p * 2^b <= cap
    if (limits.max_entries < 1 ||
        unique_labels.size() > (static_cast<std::uint64_t>(limits.max_entries) >> b))
        throw resource_error("amplitude table of " + std::to_string(unique_labels.size()) +
                             " * 2^" + std::to_string(b) + " entries exceeds the cap of " +
                             std::to_string(limits.max_entries) +
                             "; use the closed-form path or raise the cap");

    // Duplicate patterns raise their label's weight; dividing by the root of
    // the squared multiplicity sum keeps the norm at exactly one (and
    // reduces to 1/sqrt(p) when all patterns are distinct).
    double mult_sq = 0.0;
    for (double m : multiplicity) mult_sq += m * m;
    const double denom = std::sqrt(mult_sq);

    QuantumState state;
    state.n_ = mem.width();
    state.b_ = b;
    state.input_ = input;
    state.labels_ = std::move(unique_labels);
    state.amps_.assign(state.labels_.size() << b, {0.0, 0.0});
    const auto dim = static_cast<std::size_t>(state.control_dim());
    for (std::size_t i = 0; i < state.labels_.size(); ++i)
        state.amps_[i * dim] = {multiplicity[i] / denom, 0.0};
    return state;
}

QuantumState apply_hadamard_control(QuantumState state, RoundIndex l) {
    if (l.l < 1 || l.l > state.b_) throw validation_error("control qbit index outside [1, b]");
    const std::uint64_t mask = std::uint64_t{1} << (l.l - 1);
    const auto dim = static_cast<std::size_t>(state.control_dim());
    const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
    for (std::size_t i = 0; i < state.labels_.size(); ++i) {
        auto* column = state.amps_.data() + i * dim;
        for (std::size_t c = 0; c < dim; ++c) {
            if (c & mask) continue;
            const auto a0 = column[c];
            const auto a1 = column[c | mask];
            column[c] = inv_sqrt2 * (a0 + a1);
            column[c | mask] = inv_sqrt2 * (a0 - a1);
        }
    }
    return state;
}

QuantumState apply_distance_transform(QuantumState state) {
    const std::uint64_t input_label = state.input_.as_label();
    const std::uint64_t mask = width_mask(state.n_);
    for (auto& label : state.labels_) label = agreement_label(label, input_label, mask);
    return state;
}

QuantumState apply_inverse_distance_transform(QuantumState state) {
    return apply_distance_transform(std::move(state));
}

QuantumState apply_phase(QuantumState state, RoundIndex l) {
    if (l.l < 1 || l.l > state.b_) throw validation_error("control qbit index outside [1, b]");
    const std::uint64_t mask = std::uint64_t{1} << (l.l - 1);
    const auto dim = static_cast<std::size_t>(state.control_dim());
    for (std::size_t i = 0; i < state.labels_.size(); ++i) {
        const int zeros = static_cast<int>(state.n_) - std::popcount(state.labels_[i]);
        const double theta =
            std::numbers::pi * static_cast<double>(zeros) / (2.0 * static_cast<double>(state.n_));
        const std::complex<double> plus{std::cos(theta), std::sin(theta)};
        const std::complex<double> minus = std::conj(plus);
        auto* column = state.amps_.data() + i * dim;
        for (std::size_t c = 0; c < dim; ++c) column[c] *= (c & mask) ? minus : plus;
    }
    return state;
}

QuantumState run_round(QuantumState state, RoundIndex l) {
    state = apply_hadamard_control(std::move(state), l);
    state = apply_distance_transform(std::move(state));
    state = apply_phase(std::move(state), l);
    state = apply_inverse_distance_transform(std::move(state));
    return apply_hadamard_control(std::move(state), l);
}

QuantumState run_all_rounds(const MemoryInstance& mem, const BinaryPattern& input, int b,
                            const SimLimits& limits) {
    QuantumState state = prepare_initial(mem, input, b, limits);
    for (int l = 1; l <= b; ++l) state = run_round(std::move(state), RoundIndex{l});
    return state;
}

QuantumState project_control(QuantumState state, std::uint64_t outcome, double outcome_prob) {
    const auto dim = static_cast<std::size_t>(state.control_dim());
    const double scale = 1.0 / std::sqrt(outcome_prob);
    for (std::size_t i = 0; i < state.labels_.size(); ++i) {
        auto* column = state.amps_.data() + i * dim;
        for (std::size_t c = 0; c < dim; ++c)
            column[c] = (c == outcome) ? column[c] * scale : std::complex<double>{0.0, 0.0};
    }
    return state;
}

MeasurementResult measure_control(const QuantumState& state, Rng& rng) {
    const std::vector<double> marginals = state.control_marginals();
    std::vector<double> cumulative(marginals.size());
    double running = 0.0;
    for (std::size_t c = 0; c < marginals.size(); ++c) {
        running += marginals[c];
        cumulative[c] = running;
    }
    const std::uint64_t outcome = sample_cumulative(rng, cumulative);
    MeasurementResult result;
    result.outcome = outcome;
    result.prob_all_zeros = marginals[0];
    result.collapsed = project_control(state, outcome, marginals[outcome]);
    return result;
}

QuantumState project_all_zeros(const QuantumState& state) {
    const double prob = state.control_marginals()[0];
    if (prob <= 0.0)
        throw validation_error("all-zeros control outcome has zero weight; nothing to project");
    return project_control(state, 0, prob);
}

std::map<BinaryPattern, double> memory_distribution(const QuantumState& collapsed) {
    const auto labels = collapsed.memory_labels();

    num::KahanSum zero_column;
    for (std::uint64_t label : labels) zero_column.add(std::norm(collapsed.amplitude(label, 0)));
    const double on_zero = zero_column.value();
    const double elsewhere = std::max(0.0, collapsed.norm_squared() - on_zero);
    if (!(on_zero > 0.0) || elsewhere > 1e-9 * on_zero)
        throw validation_error("state is not collapsed on the all-zeros control outcome");

    std::map<BinaryPattern, double> dist;
    for (std::uint64_t label : labels)
        dist[BinaryPattern::from_label(label, collapsed.memory_width())] =
            std::norm(collapsed.amplitude(label, 0)) / on_zero;
    return dist;
}

}  // namespace qam::gatesim
