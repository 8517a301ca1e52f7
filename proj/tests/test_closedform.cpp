#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "qam/closedform.hpp"
#include "qam/errors.hpp"
#include "qam/numerics.hpp"
#include "qam/pattern.hpp"
#include "qam/rng.hpp"
#include "support/oracles.hpp"

using namespace qam;

namespace {

// Spectrum over distances with unit counts.
DistanceSpectrum spectrum_of(std::vector<std::int64_t> distances, std::int64_t n) {
    std::map<std::int64_t, std::int64_t> counts;
    for (auto d : distances) ++counts[d];
    return DistanceSpectrum(n, counts);
}

// Memory of patterns at prescribed distances from the all-zeros input:
// pattern k has its first distances[k] bits set.
MemoryInstance memory_at_distances(const std::vector<std::int64_t>& distances, std::int64_t n) {
    std::vector<BinaryPattern> pats;
    for (std::size_t k = 0; k < distances.size(); ++k) {
        BinaryPattern p(n);
        for (std::int64_t i = 0; i < distances[k]; ++i) p.set_bit(i, true);
        pats.push_back(p);
    }
    return MemoryInstance(pats);
}

}  // namespace

TEST_CASE("recognition probability closed form") {
    CHECK(closedform::recognition_probability(spectrum_of({0, 0, 0}, 6), 17) == 1.0);
    CHECK(closedform::recognition_probability(spectrum_of({6, 6}, 6), 1) == 0.0);
    CHECK(closedform::recognition_probability(spectrum_of({0, 1}, 2), 2) ==
          doctest::Approx(0.625).epsilon(1e-14));
    // b = 0 is exactly uniform even with everything at distance n
    CHECK(closedform::recognition_probability(spectrum_of({2, 2}, 2), 0) == 1.0);
    // log-domain evaluation survives b = 1e5 without over/underflow surprises
    const double p = closedform::recognition_probability(spectrum_of({1}, 100), 100000);
    CHECK(p == doctest::Approx(std::exp(2e5 * std::log(std::cos(std::numbers::pi / 200)))).epsilon(1e-12));
    CHECK_THROWS_AS(closedform::recognition_probability(spectrum_of({0}, 4), -1), validation_error);
}

TEST_CASE("retrieval distribution: uniform at b = 0, hand values at b = 1") {
    const auto mem = memory_at_distances({1, 2, 3}, 8);
    const auto input = BinaryPattern(8);

    const auto uniform = closedform::retrieval_distribution(mem, input, 0);
    for (double prob : uniform.per_pattern) CHECK(prob == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(uniform.partition == doctest::Approx(3.0).epsilon(1e-14));

    // n = 4, b = 1, distances {1, 2}: probabilities 0.6306 / 0.3694
    const auto two = closedform::retrieval_distribution(memory_at_distances({1, 2}, 4),
                                                        BinaryPattern(4), 1);
    CHECK(two.per_pattern[0] == doctest::Approx(0.6306).epsilon(2e-4));
    CHECK(two.per_pattern[1] == doctest::Approx(0.3694).epsilon(2e-4));
    const double c1 = std::cos(std::numbers::pi / 8), c2 = std::cos(std::numbers::pi / 4);
    CHECK(two.per_pattern[0] ==
          doctest::Approx(c1 * c1 / (c1 * c1 + c2 * c2)).epsilon(1e-14));

    CHECK_THROWS_WITH_AS(
        closedform::retrieval_distribution(memory_at_distances({3, 3}, 3), BinaryPattern(3), 1),
        doctest::Contains("never recognized"), validation_error);
}

TEST_CASE("partition identity Z = p * P_rec from the same summation") {
    Rng rng = make_stream(42, 7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 30);
        const std::int64_t p =
            1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(std::min<std::int64_t>(12, n)));
        const auto mem = MemoryInstance(testsupport::distinct_random_patterns(p, n, rng));
        const auto input = testsupport::random_pattern(n, rng);
        const std::int64_t b = static_cast<std::int64_t>(rng() % 6);
        if (distance_spectrum(mem, input).min_distance() == n && b >= 1) continue;
        const auto stats = closedform::retrieval_distribution(mem, input, b);
        CHECK(stats.partition ==
              doctest::Approx(static_cast<double>(mem.pattern_count()) * stats.p_rec).epsilon(1e-15));
        const auto spectrum = distance_spectrum(mem, input);
        CHECK(stats.p_rec ==
              doctest::Approx(closedform::recognition_probability(spectrum, b)).epsilon(1e-14));
        double total = 0.0;
        for (double prob : stats.per_pattern) total += prob;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("distribution is the Boltzmann distribution of the energy levels") {
    Rng rng = make_stream(42, 8);
    for (int trial = 0; trial < 40; ++trial) {
        const std::int64_t n = 2 + static_cast<std::int64_t>(rng() % 60);
        const std::int64_t p =
            2 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(std::min<std::int64_t>(10, n)));
        const auto mem = MemoryInstance(testsupport::distinct_random_patterns(std::min(p, n), n, rng));
        const auto input = testsupport::random_pattern(n, rng);
        const std::int64_t b = 1 + static_cast<std::int64_t>(rng() % 50);
        if (distance_spectrum(mem, input).min_distance() == n) continue;
        const auto stats = closedform::retrieval_distribution(mem, input, b);

        // independent route: energies then log-sum-exp normalization
        std::vector<double> neg_be(stats.per_pattern.size());
        for (std::size_t k = 0; k < neg_be.size(); ++k) {
            const double energy = closedform::energy_level(
                hamming_distance(mem.pattern(static_cast<std::int64_t>(k)), input), n);
            neg_be[k] = energy == num::kInf ? num::kNegInf : -static_cast<double>(b) * energy;
        }
        const double log_norm = num::log_sum_exp(neg_be);
        for (std::size_t k = 0; k < neg_be.size(); ++k) {
            const double gibbs = std::exp(neg_be[k] - log_norm);
            CHECK(stats.per_pattern[k] == doctest::Approx(gibbs).epsilon(1e-12));
        }

        // monotonicity: strictly closer patterns carry strictly more weight
        for (std::size_t i = 0; i < neg_be.size(); ++i)
            for (std::size_t j = 0; j < neg_be.size(); ++j) {
                const auto di = hamming_distance(mem.pattern(static_cast<std::int64_t>(i)), input);
                const auto dj = hamming_distance(mem.pattern(static_cast<std::int64_t>(j)), input);
                if (di < dj) CHECK(stats.per_pattern[i] > stats.per_pattern[j]);
            }
    }
}

TEST_CASE("asymptotic distribution and the approach to it") {
    const std::vector<std::int64_t> single{3, 1, 4};
    const auto probs = closedform::asymptotic_distribution(single);
    CHECK(probs == std::vector<double>{0.0, 1.0, 0.0});

    const std::vector<std::int64_t> tie{2, 2};
    const auto split = closedform::asymptotic_distribution(tie);
    CHECK(split[0] == 0.5);
    CHECK(split[1] == 0.5);

    // distances {1, 2} at n = 100: the gap to the asymptote decays as
    // exp(-b dE), dE = E(2) - E(1); at b = 1e4 the gap is still ~6.1e-4 and
    // crosses 1e-6 only near b = ln(1e6)/dE ~ 1.9e4.
    const auto mem = memory_at_distances({1, 2}, 100);
    const double delta_e = closedform::energy_level(2, 100) - closedform::energy_level(1, 100);
    const auto leader_prob = [&](std::int64_t b) {
        return closedform::retrieval_distribution(mem, BinaryPattern(100), b).per_pattern[0];
    };
    const double gap4 = 1.0 - leader_prob(10000);
    const double predicted = std::exp(-1e4 * delta_e);
    CHECK(gap4 == doctest::Approx(predicted).epsilon(1e-3));
    CHECK(gap4 > 1e-6);
    const auto b_enough = static_cast<std::int64_t>(std::ceil(std::log(1e6) / delta_e));
    CHECK(1.0 - leader_prob(b_enough) <= 1e-6);
}

TEST_CASE("energy levels") {
    CHECK(closedform::energy_level(0, 9) == 0.0);
    CHECK(closedform::energy_level(9, 9) == num::kInf);
    // small-distance expansion: E ~ (pi^2/4)(d/n)^2 within 2% at d/n = 0.1
    const double e = closedform::energy_level(10, 100);
    const double quadratic = std::numbers::pi * std::numbers::pi / 4.0 * 0.01;
    CHECK(std::abs(e - quadratic) / e < 0.02);
    CHECK_THROWS_AS(closedform::energy_level(5, 4), validation_error);
}

TEST_CASE("ising form of the energy") {
    const double c = std::numbers::pi * std::numbers::pi / 4.0;

    // ferromagnetic ground state: exactly zero
    CHECK(closedform::ising_energy(BinaryPattern(11)) == 0.0);
    CHECK(closedform::ising_energy(BinaryPattern(64)) == 0.0);

    // balanced configuration: exactly pi^2/16
    BinaryPattern half(10);
    for (int i = 0; i < 5; ++i) half.set_bit(i, true);
    CHECK(closedform::ising_energy(half) == c / 4.0);

    // identity with the quadratic form, random patterns
    Rng rng = make_stream(42, 9);
    for (int trial = 0; trial < 200; ++trial) {
        const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 200);
        const auto pat = testsupport::random_pattern(n, rng);
        const double x = static_cast<double>(pat.popcount()) / static_cast<double>(n);
        CHECK(closedform::ising_energy(pat) == doctest::Approx(c * x * x).epsilon(1e-12));
    }
}
