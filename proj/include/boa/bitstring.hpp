#ifndef BOA_BITSTRING_HPP
#define BOA_BITSTRING_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace boa {

/// Fixed-length bit string packed into 64-bit words. The public contract is
/// positional access; packing exists because evaluation and model-building
/// inner loops scan millions of bits.
class BitString {
public:
    BitString() = default;

    explicit BitString(std::size_t n)
        : n_(n), words_((n + 63) / 64, 0) {}

    /// Build from text like "10110"; anything but '0'/'1' is rejected.
    static BitString from_string(const std::string& s) {
        BitString b(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1') b.set(i, true);
            else if (s[i] != '0') throw std::invalid_argument("BitString::from_string: bad character");
        }
        return b;
    }

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v) words_[i >> 6] |= mask;
        else   words_[i >> 6] &= ~mask;
    }

    /// Number of 1-bits in the whole string.
    std::size_t count_ones() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += std::popcount(w);
        return c;
    }

    /// Extract len (<= 64) bits starting at pos, LSB = bit at pos.
    std::uint64_t extract(std::size_t pos, std::size_t len) const {
        const std::size_t w = pos >> 6, off = pos & 63;
        std::uint64_t v = words_[w] >> off;
        if (off + len > 64 && w + 1 < words_.size()) v |= words_[w + 1] << (64 - off);
        return len == 64 ? v : v & ((std::uint64_t{1} << len) - 1);
    }

    /// Fill from a random stream, every bit i.i.d. fair; tail bits stay zero.
    void randomize(class RandomStream& rng);

    const std::vector<std::uint64_t>& words() const { return words_; }

    std::string to_string() const {
        std::string s(n_, '0');
        for (std::size_t i = 0; i < n_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

    friend bool operator==(const BitString& a, const BitString& b) {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace boa

#include "boa/rng.hpp"

namespace boa {

inline void BitString::randomize(RandomStream& rng) {
    for (auto& w : words_) w = rng.next_u64();
    const std::size_t tail = n_ & 63;
    if (tail != 0 && !words_.empty())
        words_.back() &= (std::uint64_t{1} << tail) - 1;
}

}  // namespace boa

#endif
