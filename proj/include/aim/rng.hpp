#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace aim {

// splitmix64 finalizer; the workhorse for deriving independent stream keys.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Collapses an ordered tuple of identifiers into one stream key. Keys built
// from distinct tuples are independent for all practical purposes, so runs
// can be scheduled in any order.
inline std::uint64_t stream_key(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (std::uint64_t p : parts) h = mix64(h ^ p);
    return h;
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::mt19937_64 make_rng(std::uint64_t key) {
    std::uint64_t s = key;
    std::seed_seq seq{static_cast<std::uint32_t>(mix64(s) >> 32), static_cast<std::uint32_t>(mix64(s)),
                      static_cast<std::uint32_t>(mix64(s + 1) >> 32),
                      static_cast<std::uint32_t>(mix64(s + 1)),
                      static_cast<std::uint32_t>(mix64(s + 2) >> 32),
                      static_cast<std::uint32_t>(mix64(s + 2))};
    return std::mt19937_64(seq);
}

}  // namespace aim
