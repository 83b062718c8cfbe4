#ifndef BOA_PROBLEMS_HPP
#define BOA_PROBLEMS_HPP

#include <bit>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "boa/bitstring.hpp"

namespace boa {

enum class ProblemKind { Onemax, ConcatenatedTrap };

/// Benchmark fitness function. Trap blocks are consecutive disjoint bit
/// groups; the optimizer never sees the partition, only evaluate().
struct Problem {
    ProblemKind kind = ProblemKind::Onemax;
    std::size_t n = 0;           // total bits
    std::size_t block_size = 0;  // k, traps only
    std::size_t blocks = 0;      // m, traps only

    static Problem onemax(std::size_t n) {
        if (n == 0) throw std::invalid_argument("onemax: n must be >= 1");
        return Problem{ProblemKind::Onemax, n, 0, 0};
    }

    static Problem concatenated_trap(std::size_t k, std::size_t m) {
        if (k != 4 && k != 5)
            throw std::invalid_argument("concatenated_trap: block size must be 4 or 5");
        if (m == 0) throw std::invalid_argument("concatenated_trap: need at least one block");
        return Problem{ProblemKind::ConcatenatedTrap, k * m, k, m};
    }

    double optimum_value() const { return static_cast<double>(n); }

    std::string name() const {
        if (kind == ProblemKind::Onemax) return "onemax";
        return "trap" + std::to_string(block_size);
    }
};

/// Contribution of one trap block holding u ones.
inline double trap_value(std::size_t k, std::size_t u) {
    if (u == k) return static_cast<double>(k);
    return static_cast<double>(k) - 1.0 - static_cast<double>(u);
}

inline double evaluate(const Problem& p, const BitString& bits) {
    if (bits.size() != p.n)
        throw std::invalid_argument("evaluate: bit string length mismatch");
    if (p.kind == ProblemKind::Onemax)
        return static_cast<double>(bits.count_ones());
    double total = 0.0;
    for (std::size_t b = 0; b < p.blocks; ++b) {
        const std::uint64_t group = bits.extract(b * p.block_size, p.block_size);
        total += trap_value(p.block_size, static_cast<std::size_t>(std::popcount(group)));
    }
    return total;
}

/// Fraction of positions matching the global optimum (all-ones everywhere).
inline double fraction_correct(const Problem& p, const BitString& bits) {
    if (bits.size() != p.n)
        throw std::invalid_argument("fraction_correct: bit string length mismatch");
    return static_cast<double>(bits.count_ones()) / static_cast<double>(p.n);
}

inline bool is_success(const Problem& p, const BitString& bits,
                       double threshold = 0.9) {
    if (!(threshold > 0.0) || threshold > 1.0)
        throw std::invalid_argument("is_success: threshold must be in (0,1]");
    return fraction_correct(p, bits) >= threshold;
}

}  // namespace boa

#endif
