#pragma once

#include <cstdint>
#include <string_view>

namespace copt {

// Deterministic splittable PRNG built on SplitMix64 (Vigna's reference
// constants). A stream is identified by its seed; split() derives an
// independent child stream from the *seed*, not the current state, so the
// set of streams a run uses does not depend on draw order.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64();

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double();

    /// Uniform integer in [0, bound). Rejection sampling, no modulo bias.
    std::uint64_t next_below(std::uint64_t bound);

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    Rng split(std::uint64_t label) const;
    Rng split(std::string_view label) const;

  private:
    std::uint64_t seed_;
    std::uint64_t state_;
};

/// FNV-1a over the bytes of a string; used for labelled stream splitting.
std::uint64_t fnv1a64(std::string_view bytes);

} // namespace copt
