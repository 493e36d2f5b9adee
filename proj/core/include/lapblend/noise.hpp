#pragma once

#include <cstdint>
#include <random>

#include "lapblend/image.hpp"

namespace lapblend {

/// Seeded uniform generator for reproducible test inputs.
///
/// Draws from std::mt19937_64, whose output sequence is fixed by the C++
/// standard, and maps the top 53 bits to [0, 1). The standard distributions
/// are avoided on purpose: their output is implementation-defined.
class NoiseSource {
 public:
  explicit NoiseSource(std::uint64_t seed) : engine_(seed) {}

  double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

/// Independent per-texel uniform noise in [lo, hi).
Image white_noise(int width, int height, int channels, std::uint64_t seed, float lo = 0.0f,
                  float hi = 1.0f);

/// Band-limited noise: `cells` x `cells` white noise magnified bilinearly
/// (wrap addressing) to width x height. Both must be power-of-two multiples.
Image value_noise(int width, int height, int channels, int cells, std::uint64_t seed);

/// Single-channel horizontal ramp from 0 to 1 centered on column `center`,
/// rising over `ramp_width` texels (a hard step when ramp_width <= 1).
Image horizontal_ramp(int width, int height, double center, double ramp_width);

}  // namespace lapblend
