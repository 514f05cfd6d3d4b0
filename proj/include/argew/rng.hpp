#pragma once

#include <cstdint>
#include <random>

namespace argew::rng {

// splitmix64 finalizer. Used to turn (seed, tag...) tuples into decorrelated
// engine seeds so that every walk / epoch / stage gets its own stream and
// adding more draws to one stream never perturbs another.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t mix(std::uint64_t seed, std::uint64_t a) {
    return splitmix64(splitmix64(seed) ^ a);
}

constexpr std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return splitmix64(mix(seed, a) ^ b);
}

constexpr std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                            std::uint64_t c) {
    return splitmix64(mix(seed, a, b) ^ c);
}

inline std::mt19937_64 stream(std::uint64_t seed) {
    return std::mt19937_64(splitmix64(seed));
}

inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t a) {
    return std::mt19937_64(mix(seed, a));
}

inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return std::mt19937_64(mix(seed, a, b));
}

inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                              std::uint64_t c) {
    return std::mt19937_64(mix(seed, a, b, c));
}

}  // namespace argew::rng
