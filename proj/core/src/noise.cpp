#include "lapblend/noise.hpp"

#include <algorithm>
#include <cmath>

#include "lapblend/error.hpp"
#include "lapblend/pyramid.hpp"

namespace lapblend {

Image white_noise(int width, int height, int channels, std::uint64_t seed, float lo, float hi) {
  Image img(width, height, channels);
  NoiseSource rng(seed);
  for (float& v : img.samples()) v = static_cast<float>(rng.uniform(lo, hi));
  return img;
}

Image value_noise(int width, int height, int channels, int cells, std::uint64_t seed) {
  if (cells < 1 || width % cells != 0 || height % cells != 0 ||
      !is_power_of_two(width / cells) || height / cells != width / cells) {
    throw_invalid_input("value_noise: size must be a power-of-two multiple of the cell count");
  }
  const Image coarse = white_noise(cells, cells, channels, seed);
  return upsample_bilinear(coarse, width / cells, Addressing::Wrap);
}

Image horizontal_ramp(int width, int height, double center, double ramp_width) {
  Image img(width, height, 1);
  const double w = std::max(ramp_width, 1.0);
  for (int x = 0; x < width; ++x) {
    const double t = (x + 0.5 - center) / w + 0.5;
    const auto v = static_cast<float>(std::clamp(t, 0.0, 1.0));
    for (int y = 0; y < height; ++y) img(x, y) = v;
  }
  return img;
}

}  // namespace lapblend
