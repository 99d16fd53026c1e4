#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace mab {

// splitmix64 finalizer (Vigna). Full-avalanche 64-bit mix.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Per-trial stream derivation. The seed is
//   mix64(mix64(mix64(master ^ fnv1a(experiment_id)) ^ fnv1a(stream_label))
//         ^ trial_index)
// which gives independent streams per (experiment, label, trial). This
// mapping is part of the output contract: changing it changes every
// simulation result byte.
inline std::uint64_t derive_seed(std::uint64_t master_seed,
                                 std::string_view experiment_id,
                                 std::string_view stream_label,
                                 std::uint64_t trial_index) {
    std::uint64_t h = mix64(master_seed ^ fnv1a64(experiment_id));
    h = mix64(h ^ fnv1a64(stream_label));
    return mix64(h ^ trial_index);
}

inline std::mt19937_64 make_stream(std::uint64_t master_seed,
                                   std::string_view experiment_id,
                                   std::string_view stream_label,
                                   std::uint64_t trial_index) {
    return std::mt19937_64(
        derive_seed(master_seed, experiment_id, stream_label, trial_index));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased uniform integer in [0, n), rejection sampled.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

}  // namespace mab
