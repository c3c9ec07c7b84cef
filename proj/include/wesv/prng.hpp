#pragma once

#include <cstdint>

namespace wesv {

/// Counter-based generator: output i of stream (seed) is
/// mix64(seed + (i+1) * 0x9E3779B97F4A7C15), the SplitMix64 finalizer.
/// Streams can be split by deriving a child seed from (seed, label); both
/// operations are pure functions, so any trial of a randomized verification
/// run can be reproduced from the single 64-bit seed printed in the report.
class Prng {
public:
    explicit Prng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = seed_ += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Independent child stream; label picks the branch.
    Prng split(std::uint64_t label) const {
        Prng base(seed_ ^ (0x9E3779B97F4A7C15ULL * (label + 1)));
        base.next();
        return base;
    }

    /// Uniform in [0, n), n > 0. Rejection keeps it exactly uniform and
    /// platform-independent.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t limit = ~0ULL - (~0ULL % n);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::uint64_t seed_;
};

}  // namespace wesv
