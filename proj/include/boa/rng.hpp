#ifndef BOA_RNG_HPP
#define BOA_RNG_HPP

#include <array>
#include <cstdint>

namespace boa {

/// Counter-keyed deterministic random stream (xoshiro256** seeded via
/// splitmix64). The same (master_seed, stream_id) pair always produces the
/// same sequence, on every host, so parallel experiment schedules cannot
/// change results. Streams are single-owner: never share one between tasks.
class RandomStream {
public:
    RandomStream() : RandomStream(0, 0) {}

    RandomStream(std::uint64_t master_seed, std::uint64_t stream_id)
        : stream_id_(stream_id) {
        // Distinct (seed, id) pairs land in unrelated splitmix trajectories.
        std::uint64_t z = mix64(master_seed ^ 0x6A09E667F3BCC909ULL) ^
                          mix64(stream_id + 0x9E3779B97F4A7C15ULL);
        for (auto& s : state_) {
            z += 0x9E3779B97F4A7C15ULL;
            s = mix64(z);
        }
        state_[0] |= 1;  // xoshiro forbids the all-zero state
    }

    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t next_below(std::uint64_t bound) {
        // Rejection sampling keeps the draw exactly uniform.
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    bool next_bernoulli(double p) { return next_double() < p; }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    static std::uint64_t mix64(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    std::array<std::uint64_t, 4> state_;
    std::uint64_t stream_id_;
};

inline RandomStream derive_stream(std::uint64_t master_seed,
                                  std::uint64_t stream_id) {
    return RandomStream(master_seed, stream_id);
}

/// Stateless hash of (seed, lane) into a fresh 64-bit seed. Used to key
/// nested experiment/probe/run streams without threading RNG state around.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t lane) {
    return RandomStream(seed, lane).next_u64();
}

}  // namespace boa

#endif
