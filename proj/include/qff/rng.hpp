#pragma once

#include <cstdint>
#include <random>

namespace qff {

// Seeded RNG used everywhere randomness is needed. Thin wrapper around
// mt19937_64 with hand-rolled conversions so that the draw stream depends
// only on the seed, not on the standard library's distribution internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // unbiased uniform draw from {0, ..., n-1}
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n == 0) return 0;
        std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
        for (;;) {
            std::uint64_t r = eng_();
            if (r >= threshold) return r % n;
        }
    }

    // uniform in [0,1) with 53 random bits
    double uniform01() { return (eng_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::mt19937_64 eng_;
};

// splitmix64 finalizer; used to derive independent per-trial sub-seeds
// from a master seed without consuming the master stream.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace qff
