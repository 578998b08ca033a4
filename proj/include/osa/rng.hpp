#ifndef OSA_RNG_HPP
#define OSA_RNG_HPP

#include <cstdint>

namespace osa {

// splitmix64 finalizer; full avalanche, good enough to decorrelate
// counter-mode streams.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Deterministic hash of (seed, stream, counter). Random access: the value
// for a given triple never depends on what was queried before.
inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream,
                                  std::uint64_t counter) {
    return mix64(mix64(mix64(seed) ^ stream) ^ counter);
}

// Map to [0, 1) with 53 bits of precision.
inline double to_unit_double(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Per-SU stream seed derived from the run seed and the SU id.
inline std::uint64_t substream_seed(std::uint64_t run_seed, std::uint64_t id) {
    return mix64(mix64(run_seed) ^ (id + 0x632be59bd9b4e019ull));
}

}  // namespace osa

#endif
