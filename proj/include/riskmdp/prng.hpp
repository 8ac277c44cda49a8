#pragma once

#include <cstdint>

namespace riskmdp {

/**
 * splitmix64 generator (Steele, Lea & Flood, "Fast splittable pseudorandom
 * number generators", OOPSLA 2014). Used for instance generation because the
 * whole update fits in three lines and is trivial to reproduce in any
 * language; the generator name is recorded next to the seed in instance
 * files so that other implementations can regenerate identical instances.
 */
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform draw from [0, 1) with 53 bits of resolution.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

} // namespace riskmdp
