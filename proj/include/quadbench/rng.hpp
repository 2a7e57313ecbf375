#pragma once

#include <cstdint>
#include <random>

namespace quadbench {

namespace detail {

// splitmix64; used to derive independent substream seeds from (seed, tags).
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace detail

// Deterministic, seedable 64-bit generator.  mt19937_64 output is fully
// specified by the standard; the uniform mapping below avoids the
// implementation-defined std::uniform_real_distribution so that identical
// seeds give bit-identical streams everywhere.
class rng_stream {
  public:
    explicit rng_stream(std::uint64_t seed) : eng_(seed) {}

    // Substream for one (tag_a, tag_b) cell of a run, e.g. (family, realization).
    static rng_stream substream(std::uint64_t seed, std::uint64_t tag_a, std::uint64_t tag_b) {
        std::uint64_t s = detail::mix64(seed);
        s = detail::mix64(s ^ detail::mix64(tag_a + 0x51ed9eb214724d6bull));
        s = detail::mix64(s ^ detail::mix64(tag_b + 0x2545f4914f6cdd1dull));
        return rng_stream(s);
    }

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform in the half-open interval (0, 1]; used for parameters that must
    // stay away from zero.
    double uniform_pos() { return 1.0 - uniform(); }

  private:
    std::mt19937_64 eng_;
};

}  // namespace quadbench
