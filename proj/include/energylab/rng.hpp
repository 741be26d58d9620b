// rng.hpp
// Counter-based randomness. Every random quantity in the library is a pure
// function of (seed, domain, key): two rounds of the SplitMix64 finalizer
// over the keyed input. No sequential generator state exists anywhere, so
// sampling parallelizes trivially and a phase X_p under seed s is the same
// number no matter which thread, sample index, or call order produced it.
//
// derive(seed, domain, key) = f(f(seed + GOLDEN*(domain+1)) ^ key)
// where f is the SplitMix64 avalanche (Steele, Lea, Flood 2014).

#pragma once
#include <cstdint>

namespace energylab::rng {

inline constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += golden;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Domain tags keep independent random streams from colliding.
enum : std::uint64_t {
    domain_phase = 1,   // key = prime p
    domain_sample = 2,  // key = Monte Carlo sample index
    domain_shift = 3,   // key = shift-subsampling index
    domain_instance = 4 // key = test-instance index
};

inline std::uint64_t derive(std::uint64_t seed, std::uint64_t domain, std::uint64_t key) {
    return splitmix64(splitmix64(seed + golden * (domain + 1)) ^ key);
}

// Uniform double in [0,1) from the top 53 bits.
inline double to_unit(std::uint64_t x) {
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

inline double uniform01(std::uint64_t seed, std::uint64_t domain, std::uint64_t key) {
    return to_unit(derive(seed, domain, key));
}

} // namespace energylab::rng
