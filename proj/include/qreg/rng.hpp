#pragma once

#include <cstdint>
#include <random>

namespace qreg {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}
} // namespace detail

/// Seeded pseudo-random generator (mt19937_64 underneath). Every sampling
/// operation in the library takes one of these explicitly; there is no
/// hidden global stream. `split()` derives an independent child stream,
/// advancing the parent.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 bits of mantissa. Hand-rolled so
    /// results are identical across standard-library implementations.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) {
            return 0;
        }
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = next_u64();
        while (v >= limit) {
            v = next_u64();
        }
        return v % n;
    }

    Rng split() { return Rng(detail::splitmix64(next_u64())); }

  private:
    std::mt19937_64 engine_;
};

} // namespace qreg
