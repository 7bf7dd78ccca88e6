#pragma once

#include <cstdint>
#include <random>

namespace gsgp {

/// Seeded random source with distribution helpers that are stable across
/// platforms (std:: distributions are implementation-defined, so draws are
/// made directly from the mt19937_64 word stream).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in [0, 1).
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n).
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(gen_() % n); }

    bool coin() { return (gen_() & 1u) != 0; }

    std::uint64_t word() { return gen_(); }

  private:
    std::mt19937_64 gen_;
};

} // namespace gsgp
