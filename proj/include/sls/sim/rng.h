#pragma once

#include <cstdint>
#include <random>

namespace sls::sim {

// Seeded pseudo-random stream. std::mt19937_64 output is fully specified
// by the standard, so a seed yields the same sequence on every platform.
// Distributions are derived here by hand for the same reason.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t NextU64() {
    ++position_;
    return engine_();
  }

  // Uniform on [0, 1) with 53 bits of precision.
  double NextUniform() { return static_cast<double>(NextU64() >> 11) * 0x1.0p-53; }

  // Uniform integer on [0, bound). bound must be positive.
  std::uint64_t NextBelow(std::uint64_t bound);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t position() const { return position_; }

 private:
  std::uint64_t seed_;
  std::uint64_t position_ = 0;
  std::mt19937_64 engine_;
};

}  // namespace sls::sim
