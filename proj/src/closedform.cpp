#include "qam/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qam/errors.hpp"
#include "qam/numerics.hpp"

namespace qam::closedform {

double recognition_probability(const DistanceSpectrum& spectrum, std::int64_t b) {
    if (b < 0) throw validation_error("round count b must be non-negative");
    num::KahanSum sum;
    for (const auto& [d, count] : spectrum.counts()) {
        const double w = num::cos_pow_2b(num::log_cos_half_pi(d, spectrum.width()),
                                         static_cast<double>(b));
        sum.add(static_cast<double>(count) * w);
    }
    return std::clamp(sum.value() / static_cast<double>(spectrum.pattern_count()), 0.0, 1.0);
}

RetrievalStats retrieval_distribution(const MemoryInstance& mem, const BinaryPattern& input,
                                      std::int64_t b) {
    if (b < 0) throw validation_error("round count b must be non-negative");
    if (input.size() != mem.width()) throw validation_error("input width does not match memory");
    const std::int64_t n = mem.width();
    const std::int64_t p = mem.pattern_count();

    std::vector<double> log_w(static_cast<std::size_t>(p));
    bool any_below_n = false;
    for (std::int64_t k = 0; k < p; ++k) {
        const std::int64_t d = hamming_distance(mem.pattern(k), input);
        any_below_n = any_below_n || d < n;
        log_w[static_cast<std::size_t>(k)] =
            b == 0 ? 0.0 : 2.0 * static_cast<double>(b) * num::log_cos_half_pi(d, n);
    }
    if (!any_below_n && b >= 1)
        throw validation_error("input is never recognized: every pattern sits at distance n");

    RetrievalStats stats;
    stats.log_partition = num::log_sum_exp(log_w);
    num::KahanSum z;
    for (double lw : log_w) z.add(std::exp(lw));
    stats.partition = z.value();
    stats.p_rec = stats.partition / static_cast<double>(p);
    stats.per_pattern.resize(log_w.size());
    for (std::size_t k = 0; k < log_w.size(); ++k)
        stats.per_pattern[k] = std::exp(log_w[k] - stats.log_partition);
    return stats;
}

std::vector<double> asymptotic_distribution(std::span<const std::int64_t> distances) {
    if (distances.empty()) throw validation_error("no distances given");
    const std::int64_t d_min = *std::min_element(distances.begin(), distances.end());
    std::int64_t ties = 0;
    for (std::int64_t d : distances) ties += d == d_min;
    std::vector<double> probs(distances.size(), 0.0);
    for (std::size_t k = 0; k < distances.size(); ++k)
        if (distances[k] == d_min) probs[k] = 1.0 / static_cast<double>(ties);
    return probs;
}

std::vector<double> asymptotic_distribution(const MemoryInstance& mem, const BinaryPattern& input) {
    std::vector<std::int64_t> distances;
    distances.reserve(static_cast<std::size_t>(mem.pattern_count()));
    for (const auto& pat : mem.patterns()) distances.push_back(hamming_distance(pat, input));
    return asymptotic_distribution(distances);
}

double energy_level(std::int64_t d_hamming, std::int64_t n) {
    if (n < 1) throw validation_error("width must be positive");
    if (d_hamming < 0 || d_hamming > n) throw validation_error("distance outside [0, n]");
    const double lc = num::log_cos_half_pi(d_hamming, n);
    return lc == 0.0 ? 0.0 : -2.0 * lc;
}

double ising_energy(const BinaryPattern& normalized_pattern) {
    const double n = static_cast<double>(normalized_pattern.size());
    const double spin_sum = static_cast<double>(normalized_pattern.popcount()) - 0.5 * n;
    const double q = spin_sum / n;
    const double c = std::numbers::pi * std::numbers::pi / 4.0;
    return 0.25 * c + c * q * q + c * q;
}

}  // namespace qam::closedform
