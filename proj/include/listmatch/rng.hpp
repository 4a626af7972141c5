// Self-contained counter-seeded RNG so simulation streams are reproducible
// across platforms and independent of libstdc++ distribution internals.
#pragma once

#include <cstdint>

namespace listmatch {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Per-replication seed: splitmix-style mix of the master seed and the
// replication index. Identical streams require the same generator family;
// cross-language replication is statistical, not bitwise.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t rep_index) {
    std::uint64_t s = master_seed ^ (0xd1342543de82ef95ULL * (rep_index + 1));
    return splitmix64(s);
}

// xoshiro256** by Blackman & Vigna, seeded through splitmix64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) { reseed(seed); }

    void reseed(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

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

    // Uniform on [0, bound) by Lemire's multiply-with-rejection.
    std::uint32_t uniform_below(std::uint32_t bound) {
        std::uint64_t x = next_u64() >> 32;
        std::uint64_t m = x * bound;
        std::uint32_t low = static_cast<std::uint32_t>(m);
        if (low < bound) {
            const std::uint32_t threshold = (0u - bound) % bound;
            while (low < threshold) {
                x = next_u64() >> 32;
                m = x * bound;
                low = static_cast<std::uint32_t>(m);
            }
        }
        return static_cast<std::uint32_t>(m >> 32);
    }

    // Uniform on [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

private:
    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }

    std::uint64_t state_[4];
};

}  // namespace listmatch
