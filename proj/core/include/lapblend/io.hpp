#pragma once

#include <filesystem>
#include <optional>

#include "lapblend/image.hpp"

namespace lapblend {

enum class ImageFormat {
  Png,  // 8- or 16-bit, 1-4 channels
  Exr,  // 32-bit float (half channels are widened on load), linear
};

/// Format implied by the file extension (.png, .exr), case-insensitive.
std::optional<ImageFormat> format_from_extension(const std::filesystem::path& path);

/// Standard sRGB transfer functions.
float srgb_to_linear(float encoded) noexcept;
float linear_to_srgb(float linear) noexcept;

/// Loads a PNG or OpenEXR file, detected from its signature. PNG samples map
/// to [0, 1]; with `srgb_decode` the color channels (not alpha) of a PNG are
/// converted to linear. EXR data is already linear and is returned as stored.
///
/// Errors: FileNotFound, UnsupportedFormat, CorruptData.
Image load_image(const std::filesystem::path& path, bool srgb_decode = false);

struct SaveOptions {
  /// Clamp samples to [0, 1] before writing. PNG output requires samples in
  /// range; with clamp off, out-of-range samples are an InvalidInput error.
  bool clamp = true;
  /// PNG bit depth, 8 or 16.
  int bit_depth = 8;
  /// Encode PNG color channels with the sRGB transfer function.
  bool srgb_encode = false;
};

/// Writes PNG or EXR depending on the extension. Errors: UnsupportedFormat,
/// IoError, InvalidInput.
void save_image(const Image& img, const std::filesystem::path& path, const SaveOptions& options = {});

}  // namespace lapblend
