#include "lapblend/image.hpp"

#include <cmath>
#include <string>

#include "lapblend/error.hpp"

namespace lapblend {
namespace {

void check_dims(int width, int height, int channels) {
  if (width < 1 || height < 1) {
    throw_invalid_input("image dimensions must be at least 1x1, got " + std::to_string(width) +
                        "x" + std::to_string(height));
  }
  if (channels < 1 || channels > 4) {
    throw_invalid_input("image channel count must be in [1, 4], got " + std::to_string(channels));
  }
}

void check_same_shape(const Image& a, const Image& b, const char* op) {
  if (!a.same_shape(b)) {
    throw_invalid_input(std::string(op) + ": image shapes differ (" + std::to_string(a.width()) +
                        "x" + std::to_string(a.height()) + "x" + std::to_string(a.channels()) +
                        " vs " + std::to_string(b.width()) + "x" + std::to_string(b.height()) +
                        "x" + std::to_string(b.channels()) + ")");
  }
}

}  // namespace

Image::Image(int width, int height, int channels, float fill)
    : width_(width), height_(height), channels_(channels) {
  check_dims(width, height, channels);
  if (!std::isfinite(fill)) throw_invalid_input("image fill value must be finite");
  samples_.assign(texel_count() * static_cast<std::size_t>(channels), fill);
}

Image::Image(int width, int height, int channels, std::vector<float> samples)
    : width_(width), height_(height), channels_(channels), samples_(std::move(samples)) {
  check_dims(width, height, channels);
  if (samples_.size() != texel_count() * static_cast<std::size_t>(channels)) {
    throw_invalid_input("sample count " + std::to_string(samples_.size()) +
                        " does not match " + std::to_string(width) + "x" +
                        std::to_string(height) + "x" + std::to_string(channels));
  }
  if (!all_finite(*this)) throw_invalid_input("image contains non-finite samples");
}

bool all_finite(const Image& img) noexcept {
  for (float v : img.samples()) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

float max_abs_diff(const Image& a, const Image& b) {
  check_same_shape(a, b, "max_abs_diff");
  float worst = 0.0f;
  const auto sa = a.samples();
  const auto sb = b.samples();
  for (std::size_t i = 0; i < sa.size(); ++i) {
    worst = std::max(worst, std::abs(sa[i] - sb[i]));
  }
  return worst;
}

Image add(const Image& a, const Image& b) {
  check_same_shape(a, b, "add");
  Image out = a;
  auto so = out.samples();
  const auto sb = b.samples();
  for (std::size_t i = 0; i < so.size(); ++i) so[i] += sb[i];
  return out;
}

Image subtract(const Image& a, const Image& b) {
  check_same_shape(a, b, "subtract");
  Image out = a;
  auto so = out.samples();
  const auto sb = b.samples();
  for (std::size_t i = 0; i < so.size(); ++i) so[i] -= sb[i];
  return out;
}

Image scaled(const Image& img, float factor) {
  Image out = img;
  for (float& v : out.samples()) v *= factor;
  return out;
}

Image extract_channel(const Image& img, int channel) {
  if (channel < 0 || channel >= img.channels()) {
    throw_invalid_input("channel " + std::to_string(channel) + " out of range");
  }
  Image out(img.width(), img.height(), 1);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) out(x, y) = img(x, y, channel);
  }
  return out;
}

Image broadcast_channels(const Image& img, int channels) {
  if (img.channels() == channels) return img;
  if (img.channels() != 1) throw_invalid_input("only single-channel images can be broadcast");
  Image out(img.width(), img.height(), channels);
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      for (int c = 0; c < channels; ++c) out(x, y, c) = img(x, y);
    }
  }
  return out;
}

}  // namespace lapblend
