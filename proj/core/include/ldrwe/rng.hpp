#ifndef LDRWE_RNG_HPP
#define LDRWE_RNG_HPP

#include <cstdint>
#include <initializer_list>

namespace ldrwe::rng {

// SplitMix64 finalizer. All randomness in the library is derived from this
// mixer so that results are bit-identical across platforms and thread counts.
inline std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Hash a (seed, counter...) tuple to a single 64-bit word.
inline std::uint64_t hash_counters(std::uint64_t seed, std::initializer_list<std::int64_t> counters) {
    std::uint64_t h = mix(seed);
    for (std::int64_t c : counters) {
        h = mix(h ^ static_cast<std::uint64_t>(c));
    }
    return h;
}

inline double to_unit(std::uint64_t x) {
    // 53-bit mantissa, uniform on [0,1)
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

/// Sequential stream keyed by (seed, stream id). Replica r of a Monte Carlo
/// run uses Stream(seed, r), so scheduling order cannot change results.
class Stream {
public:
    explicit Stream(std::uint64_t seed, std::uint64_t stream_id = 0)
        : state_(hash_counters(seed, {static_cast<std::int64_t>(stream_id)})) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double next_u01() { return to_unit(next_u64()); }

private:
    std::uint64_t state_;
};

} // namespace ldrwe::rng

#endif // LDRWE_RNG_HPP
