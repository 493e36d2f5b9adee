#include "lapblend/mask.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lapblend/error.hpp"

namespace lapblend {

Image remap_to_mask_level(const Image& field, double threshold, double scale, int level) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw_invalid_input("dynamic mask scale must be positive, got " + std::to_string(scale));
  }
  if (!std::isfinite(threshold)) throw_invalid_input("dynamic mask threshold must be finite");
  if (level < 0) throw_invalid_input("dynamic mask level must be non-negative");
  if (field.channels() != 1) throw_invalid_input("dynamic mask source must be single-channel");

  const double width = std::ldexp(scale, level);
  Image out(field.width(), field.height(), 1);
  const auto src = field.samples();
  auto dst = out.samples();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const double v = (static_cast<double>(src[i]) - threshold) / width + 0.5;
    dst[i] = static_cast<float>(std::clamp(v, 0.0, 1.0));
  }
  return out;
}

Image dynamic_mask_level(const DynamicMask& mask, int level) {
  if (mask.source.empty()) throw_invalid_input("dynamic mask has no source image");
  return remap_to_mask_level(mask.source, mask.threshold, mask.scale, level);
}

Image mask_level_at(const MipChain& chain, int level, int output_level) {
  if (output_level < 0 || output_level > level) {
    throw_invalid_input("mask level " + std::to_string(level) +
                        " cannot be expanded to finer output level " +
                        std::to_string(output_level));
  }
  return upsample_bilinear(chain.level(level), 1 << (level - output_level), chain.addressing);
}

Image mask_levels_from_chain(const MipChain& chain, int level) {
  return mask_level_at(chain, level, 0);
}

}  // namespace lapblend
