#include "copt/rng.hpp"

#include <stdexcept>

namespace copt {

namespace {

inline std::uint64_t splitmix64_step(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

std::uint64_t Rng::next_u64() { return splitmix64_step(state_); }

double Rng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::next_below: bound must be positive");
    // Largest multiple of bound that fits in 64 bits; reject above it.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
        v = next_u64();
    } while (v >= limit);
    return v % bound;
}

Rng Rng::split(std::uint64_t label) const {
    // Child seed mixes the parent *seed* with the label through one
    // SplitMix64 round each, keeping sibling streams decorrelated.
    std::uint64_t s = seed_ ^ (label * 0xD1B54A32D192ED03ULL + 0x632BE59BD9B4E019ULL);
    std::uint64_t child = splitmix64_step(s);
    return Rng(child);
}

Rng Rng::split(std::string_view label) const { return split(fnv1a64(label)); }

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

} // namespace copt
