#include "qam/pattern.hpp"

#include <bit>
#include <istream>

#include "qam/errors.hpp"

namespace qam {

namespace {

std::size_t word_count(std::int64_t n) {
    return static_cast<std::size_t>((n + 63) / 64);
}

}  // namespace

BinaryPattern::BinaryPattern(std::int64_t n) : n_(n), words_(word_count(n), 0) {
    if (n <= 0) throw validation_error("pattern width must be positive");
}

BinaryPattern BinaryPattern::from_string(std::string_view bits) {
    if (bits.empty()) throw validation_error("empty pattern string");
    BinaryPattern p(static_cast<std::int64_t>(bits.size()));
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            p.words_[i / 64] |= std::uint64_t{1} << (i % 64);
        } else if (bits[i] != '0') {
            throw validation_error("pattern may contain only '0' and '1'");
        }
    }
    return p;
}

BinaryPattern BinaryPattern::from_label(std::uint64_t label, std::int64_t n) {
    if (n <= 0 || n > 64) throw validation_error("label form requires 1 <= n <= 64");
    BinaryPattern p(n);
    if (n < 64) label &= (std::uint64_t{1} << n) - 1;
    p.words_[0] = label;
    return p;
}

bool BinaryPattern::bit(std::int64_t i) const {
    return (words_[static_cast<std::size_t>(i / 64)] >> (i % 64)) & 1u;
}

void BinaryPattern::set_bit(std::int64_t i, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    auto& w = words_[static_cast<std::size_t>(i / 64)];
    if (value)
        w |= mask;
    else
        w &= ~mask;
}

std::int64_t BinaryPattern::popcount() const {
    std::int64_t total = 0;
    for (std::uint64_t w : words_) total += std::popcount(w);
    return total;
}

BinaryPattern BinaryPattern::operator^(const BinaryPattern& other) const {
    if (n_ != other.n_) throw validation_error("pattern width mismatch in XOR");
    BinaryPattern out = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] ^= other.words_[i];
    return out;
}

std::string BinaryPattern::to_string() const {
    std::string s(static_cast<std::size_t>(n_), '0');
    for (std::int64_t i = 0; i < n_; ++i)
        if (bit(i)) s[static_cast<std::size_t>(i)] = '1';
    return s;
}

std::uint64_t BinaryPattern::as_label() const {
    if (n_ > 64) throw validation_error("label form requires n <= 64");
    return words_.empty() ? 0 : words_[0];
}

std::int64_t hamming_distance(const BinaryPattern& a, const BinaryPattern& b) {
    if (a.n_ != b.n_) throw validation_error("pattern width mismatch in Hamming distance");
    std::int64_t d = 0;
    for (std::size_t i = 0; i < a.words_.size(); ++i) d += std::popcount(a.words_[i] ^ b.words_[i]);
    return d;
}

MemoryInstance::MemoryInstance(std::vector<BinaryPattern> patterns)
    : patterns_(std::move(patterns)) {
    if (patterns_.empty()) throw validation_error("memory must hold at least one pattern");
    n_ = patterns_.front().size();
    for (const auto& p : patterns_)
        if (p.size() != n_) throw validation_error("memory patterns must share one width");
}

DistanceSpectrum::DistanceSpectrum(std::int64_t n, std::map<std::int64_t, std::int64_t> counts)
    : n_(n), p_(0), counts_(std::move(counts)) {
    if (counts_.empty()) throw validation_error("distance spectrum must be non-empty");
    for (const auto& [d, c] : counts_) {
        if (d < 0 || d > n_) throw validation_error("distance outside [0, n]");
        if (c <= 0) throw validation_error("spectrum counts must be positive");
        p_ += c;
    }
}

MemoryInstance normalize_to_input(const MemoryInstance& mem, const BinaryPattern& input) {
    if (input.size() != mem.width()) throw validation_error("input width does not match memory");
    std::vector<BinaryPattern> normalized;
    normalized.reserve(static_cast<std::size_t>(mem.pattern_count()));
    for (const auto& p : mem.patterns()) normalized.push_back(p ^ input);
    return MemoryInstance(std::move(normalized));
}

DistanceSpectrum distance_spectrum(const MemoryInstance& mem, const BinaryPattern& input) {
    if (input.size() != mem.width()) throw validation_error("input width does not match memory");
    std::map<std::int64_t, std::int64_t> counts;
    for (const auto& p : mem.patterns()) ++counts[hamming_distance(p, input)];
    return DistanceSpectrum(mem.width(), std::move(counts));
}

MemoryInstance load_patterns(std::istream& in) {
    std::vector<BinaryPattern> patterns;
    std::string line;
    std::size_t line_no = 0;
    std::int64_t width = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        for (char c : line)
            if (c != '0' && c != '1') throw parse_error("illegal character in pattern", line_no);
        if (width < 0) {
            width = static_cast<std::int64_t>(line.size());
        } else if (static_cast<std::int64_t>(line.size()) != width) {
            throw parse_error("pattern length differs from previous lines", line_no);
        }
        patterns.push_back(BinaryPattern::from_string(line));
    }
    if (patterns.empty()) throw parse_error("no patterns in stream", line_no);
    return MemoryInstance(std::move(patterns));
}

}  // namespace qam
