#pragma once

#include <variant>
#include <vector>

#include "lapblend/image.hpp"
#include "lapblend/mask.hpp"
#include "lapblend/pyramid.hpp"

namespace lapblend {

struct BlendParams {
  /// Laplacian levels blended with per-level mask sharpness. 0 is a plain
  /// pointwise linear blend.
  int num_levels = 4;
  /// Filter used when the blender has to build a chain itself (dynamic mask
  /// sources under minification) and by make_blend_input().
  FilterKind filter = FilterKind::Box;
  /// Build Laplacians from mip levels two apart; num_levels must be even.
  bool skip_levels = false;
  /// Clamp the final result to [0, 1]. Turn off for analysis runs.
  bool clamp_output = true;
  /// Minification level. Texture and mask fetches start at floor(lod) and the
  /// output has that mip level's resolution.
  double lod = 0.0;
  /// Blend Laplacian level i with mask level i + bias.
  int mask_level_bias = 0;
};

using MaskLayer = std::variant<MipChain, DynamicMask>;

/// Textures to blend and their weights.
///
/// Two textures with a single mask follow the shader convention: the mask is
/// the weight of textures[1], and textures[0] receives (1 - mask). Otherwise
/// there is one mask per texture; per texel and level the weights must sum to
/// 1 within 1e-4 and are renormalized to exactly 1.
struct BlendInput {
  std::vector<MipChain> textures;
  std::vector<MaskLayer> masks;
};

/// One blended Laplacian term: (G_fine - G_coarse) weighted by mask level
/// `mask`, scaled by `weight`.
struct LevelTerm {
  int fine = 0;
  int coarse = 0;
  int mask = 0;
  float weight = 1.0f;
};

/// Which mip levels a blend reads and how it combines them.
struct LevelPlan {
  int output_level = 0;
  std::vector<LevelTerm> laplacians;
  int gaussian = 0;
  int gaussian_mask = 0;

  /// Distinct mip levels fetched per texture.
  int fetch_count() const noexcept { return static_cast<int>(laplacians.size()) + 1; }
  int deepest_mask_level() const noexcept;
};

/// Resolves params into the level plan, rejecting inconsistent settings.
LevelPlan plan_levels(const BlendParams& params);

/// Mip fetches per texture: n+1 (full), n/2+1 (skip), max(n - floor(lod), 0)+1
/// (minified).
int sample_count(const BlendParams& params) noexcept;

/// a * (1 - m) + b * m per texel. `m` is single-channel or matches a and b.
Image linear_blend(const Image& a, const Image& b, const Image& m);

/// Laplacian texture blend. Honors every field of `params`.
Image laplacian_blend(const BlendInput& input, const BlendParams& params);

/// laplacian_blend at minification level params.lod. Fetches start at level
/// floor(lod); max(n - floor(lod), 0) Laplacian levels are blended and the
/// finest of them is scaled by 1 - frac(lod). The result is affine in
/// frac(lod) and close to, not equal to, a lerp toward the next integer LOD.
Image laplacian_blend_minified(const BlendInput& input, const BlendParams& params);

/// laplacian_blend with skip_levels forced on.
Image laplacian_blend_skip(const BlendInput& input, BlendParams params);

/// Builds full chains for a two-texture blend with a single mask image.
BlendInput make_blend_input(const Image& a, const Image& b, const Image& mask,
                            FilterKind filter, Addressing texture_addressing = Addressing::Wrap,
                            Addressing mask_addressing = Addressing::Wrap);

Image clamp_to_unit(Image img);

/// Decodes the first three channels as a [0,1]-encoded vector, normalizes it
/// and re-encodes. Zero vectors map to +Z.
void renormalize_normals(Image& img);

}  // namespace lapblend
