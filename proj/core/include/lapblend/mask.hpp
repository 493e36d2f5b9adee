#pragma once

#include "lapblend/image.hpp"
#include "lapblend/pyramid.hpp"

namespace lapblend {

/// A smooth single-channel field (alpha ramp, distance field) whose Gaussian
/// mask levels are approximated by a clamped linear remap instead of a mip
/// chain.
///
/// `threshold` is the transition center in source-value units. `scale` is the
/// source-value span of the level-0 transition; for a [0,1] ramp stored across
/// N texels, a scale of 1/N gives a one-texel-wide level-0 transition. Level n
/// widens the transition by 2^n.
struct DynamicMask {
  Image source;
  double threshold = 0.5;
  double scale = 1.0 / 256.0;
};

/// clamp((source - threshold) / (scale * 2^level) + 0.5, 0, 1), per texel, at
/// the source resolution.
Image dynamic_mask_level(const DynamicMask& mask, int level);

/// Same remap applied to an arbitrary field, e.g. a mip level of the source.
Image remap_to_mask_level(const Image& field, double threshold, double scale, int level);

/// Gaussian mask level `level` of the chain, bilinearly expanded to level-0
/// resolution.
Image mask_levels_from_chain(const MipChain& chain, int level);

/// Gaussian mask level `level` expanded to the resolution of `output_level`
/// (requires output_level <= level).
Image mask_level_at(const MipChain& chain, int level, int output_level);

}  // namespace lapblend
