#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace quietlaser {

/// Seeded 64-bit Mersenne Twister. The engine is fully specified by the
/// standard, and uniforms are built from raw bits, so a given seed yields the
/// same stream with every conforming standard library.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform()
    {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Exponential variate with the given rate.
    double exponential(double rate) { return -std::log(uniform()) / rate; }

    std::mt19937_64& engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
};

}  // namespace quietlaser
