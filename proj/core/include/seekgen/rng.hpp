#pragma once

#include <cstdint>
#include <string_view>

namespace seekgen {

/// SplitMix64. Small, fast, and identical on every platform, which is what
/// the reproducibility contract needs (std:: distributions are not
/// implementation-stable).
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, n). n must be > 0.
    uint64_t below(uint64_t n) { return next() % n; }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in (0, 1]; safe as a log() argument.
    double uniform_open() { return 1.0 - uniform(); }

private:
    uint64_t state_;
};

/// FNV-1a over bytes; stable across platforms, unlike std::hash.
inline uint64_t fnv1a(std::string_view s, uint64_t h = 0xCBF29CE484222325ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

/// Named derivation of a stage/item seed from the single global seed.
inline uint64_t derive_seed(uint64_t global_seed, std::string_view label) {
    uint64_t h = fnv1a(label);
    // One splitmix round to decorrelate nearby labels/seeds.
    uint64_t z = global_seed ^ h;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace seekgen
