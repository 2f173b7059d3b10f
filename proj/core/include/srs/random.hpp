#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace srs {

// splitmix64 step; used to derive independent seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Deterministic RNG wrapper. std::mt19937_64 has a portable output sequence;
// the distribution helpers below are hand-rolled because the standard
// distributions are not guaranteed to produce identical streams across
// library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [0, n). Rejection sampling, no modulo bias.
    std::uint64_t next_below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// k distinct values from [0, n), ascending order. Floyd's algorithm; cost is
// O(k log k) regardless of n.
std::vector<int> sample_without_replacement(int n, int k, Rng& rng);

// In-place Fisher-Yates shuffle of the first k slots; pool.size() candidates.
// After the call pool[0..k) is a uniform ordered k-subset.
void partial_shuffle(std::vector<int>& pool, int k, Rng& rng);

// Uniform permutation of [0, n).
std::vector<int> random_permutation(int n, Rng& rng);

} // namespace srs
