// Seeded pseudo-randomness with reproducible streams.
//
// std::mt19937_64 output is fully specified by the standard; the double and
// index mappings below bypass std::uniform_*_distribution, whose sequences
// are implementation-defined. Every statistical result in this project is a
// pure function of the explicit seed.
#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace qam {

using Rng = std::mt19937_64;

// SplitMix64 finalizer, used to derive independent per-stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stream `index` of a master seed; streams are pairwise decorrelated.
inline Rng make_stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(splitmix64(seed ^ splitmix64(index)));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_double(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Index drawn according to a (non-normalized) cumulative weight table.
// cumulative must be non-decreasing with a positive final entry.
inline std::size_t sample_cumulative(Rng& rng, std::span<const double> cumulative) {
    const double u = uniform_double(rng) * cumulative.back();
    std::size_t lo = 0, hi = cumulative.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (cumulative[mid] <= u)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace qam
