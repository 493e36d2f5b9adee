#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lapblend {

/// How texel fetches outside [0, size) are resolved.
enum class Addressing {
  Wrap,   // periodic, for tileable textures
  Clamp,  // clamp-to-edge, for non-tiling masks
};

/// Row-major, interleaved multi-channel float image.
///
/// Samples are nominally in [0, 1] but are never clamped here: Laplacian
/// levels are signed. A default-constructed Image is empty (0x0) and is only
/// meaningful as a placeholder.
class Image {
 public:
  Image() = default;
  Image(int width, int height, int channels, float fill = 0.0f);
  Image(int width, int height, int channels, std::vector<float> samples);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  bool empty() const noexcept { return samples_.empty(); }
  std::size_t texel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  float operator()(int x, int y, int c = 0) const noexcept {
    return samples_[index(x, y, c)];
  }
  float& operator()(int x, int y, int c = 0) noexcept { return samples_[index(x, y, c)]; }

  std::span<const float> samples() const& noexcept { return samples_; }
  std::span<float> samples() & noexcept { return samples_; }
  // A span into a temporary would dangle (range-for over a returned Image).
  std::span<float> samples() && = delete;

  std::span<const float> row(int y) const noexcept {
    return std::span<const float>(samples_).subspan(row_offset(y), row_stride());
  }
  std::span<float> row(int y) noexcept {
    return std::span<float>(samples_).subspan(row_offset(y), row_stride());
  }

  bool same_shape(const Image& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_ && channels_ == other.channels_;
  }

  bool operator==(const Image& other) const = default;

 private:
  std::size_t row_stride() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(channels_);
  }
  std::size_t row_offset(int y) const noexcept {
    return static_cast<std::size_t>(y) * row_stride();
  }
  std::size_t index(int x, int y, int c) const noexcept {
    return row_offset(y) + static_cast<std::size_t>(x) * static_cast<std::size_t>(channels_) +
           static_cast<std::size_t>(c);
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<float> samples_;
};

inline bool is_power_of_two(int v) noexcept { return v > 0 && (v & (v - 1)) == 0; }

/// Maps an arbitrary integer coordinate into [0, size).
inline int resolve_coord(int i, int size, Addressing addressing) noexcept {
  if (addressing == Addressing::Wrap) {
    const int r = i % size;
    return r < 0 ? r + size : r;
  }
  return i < 0 ? 0 : (i >= size ? size - 1 : i);
}

inline float fetch(const Image& img, int x, int y, int c, Addressing addressing) noexcept {
  return img(resolve_coord(x, img.width(), addressing), resolve_coord(y, img.height(), addressing),
             c);
}

bool all_finite(const Image& img) noexcept;

/// Largest absolute per-sample difference; images must share a shape.
float max_abs_diff(const Image& a, const Image& b);

Image add(const Image& a, const Image& b);
Image subtract(const Image& a, const Image& b);
Image scaled(const Image& img, float factor);

/// Copies one channel out as a single-channel image.
Image extract_channel(const Image& img, int channel);

/// Broadcasts a single-channel image to `channels` identical channels.
Image broadcast_channels(const Image& img, int channels);

}  // namespace lapblend
