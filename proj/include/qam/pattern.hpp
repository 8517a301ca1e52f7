// Binary patterns, memory instances and Hamming-distance kernels.
//
// Patterns are packed into 64-bit words so that distances cost O(n/64)
// popcounts; widths up to several million bits are routine in the
// thermodynamic regime. All types are immutable after construction and the
// free functions are pure, so everything here is safe to share across
// threads.
#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qam {

class BinaryPattern {
public:
    BinaryPattern() = default;
    explicit BinaryPattern(std::int64_t n);  // n zeros
    static BinaryPattern from_string(std::string_view bits);
    // Inverse of label packing; only defined for n <= 64.
    static BinaryPattern from_label(std::uint64_t label, std::int64_t n);

    std::int64_t size() const { return n_; }
    bool bit(std::int64_t i) const;
    void set_bit(std::int64_t i, bool value);
    std::int64_t popcount() const;

    // Bitwise XOR; widths must agree.
    BinaryPattern operator^(const BinaryPattern& other) const;

    bool operator==(const BinaryPattern&) const = default;
    auto operator<=>(const BinaryPattern&) const = default;

    std::string to_string() const;
    // Packed representation as a basis-state label, bit i of the word being
    // bits[i]. Only defined for n <= 64.
    std::uint64_t as_label() const;

private:
    std::int64_t n_ = 0;
    std::vector<std::uint64_t> words_;

    friend std::int64_t hamming_distance(const BinaryPattern&, const BinaryPattern&);
};

// Number of positions where a and b differ. Widths must agree.
std::int64_t hamming_distance(const BinaryPattern& a, const BinaryPattern& b);

// A stored pattern set: p >= 1 patterns of uniform width n. Duplicates are
// permitted and counted with multiplicity.
class MemoryInstance {
public:
    explicit MemoryInstance(std::vector<BinaryPattern> patterns);

    std::int64_t pattern_count() const { return static_cast<std::int64_t>(patterns_.size()); }
    std::int64_t width() const { return n_; }
    const BinaryPattern& pattern(std::int64_t k) const { return patterns_.at(static_cast<std::size_t>(k)); }
    const std::vector<BinaryPattern>& patterns() const { return patterns_; }

private:
    std::vector<BinaryPattern> patterns_;
    std::int64_t n_ = 0;
};

// Histogram of Hamming distances from a fixed input to every stored pattern.
// counts() has at most p entries and sums to p.
class DistanceSpectrum {
public:
    DistanceSpectrum(std::int64_t n, std::map<std::int64_t, std::int64_t> counts);

    std::int64_t width() const { return n_; }
    std::int64_t pattern_count() const { return p_; }
    const std::map<std::int64_t, std::int64_t>& counts() const { return counts_; }
    std::int64_t min_distance() const { return counts_.begin()->first; }

private:
    std::int64_t n_;
    std::int64_t p_;
    std::map<std::int64_t, std::int64_t> counts_;
};

// XOR every stored pattern with the input. Pairwise distances are preserved
// and the input itself maps to the all-zeros pattern; applying the same
// input twice is the identity.
MemoryInstance normalize_to_input(const MemoryInstance& mem, const BinaryPattern& input);

DistanceSpectrum distance_spectrum(const MemoryInstance& mem, const BinaryPattern& input);

// Parse a pattern file: one '0'/'1' string per line, all of equal length.
// Lines starting with '#' and empty lines are skipped; CRLF is tolerated.
// Ragged lengths, foreign characters or an empty stream raise parse_error
// with the offending line number.
MemoryInstance load_patterns(std::istream& in);

}  // namespace qam
