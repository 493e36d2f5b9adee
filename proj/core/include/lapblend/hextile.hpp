#pragma once

#include <array>
#include <cstdint>

#include "lapblend/blend.hpp"
#include "lapblend/image.hpp"
#include "lapblend/pyramid.hpp"

namespace lapblend {

/// Hexagonal macro-tiling.
///
/// Lattice: lattice coordinates are p = uv * tile_scale. Hex centers sit on a
/// triangular lattice with unit spacing, basis e1 = (1, 0), e2 = (1/2, sqrt(3)/2);
/// center (i, j) is at i*e1 + j*e2. A point is located in its lattice
/// triangle through the skewed coordinates a = px - py/sqrt(3), b = 2py/sqrt(3),
/// and its three weights are the barycentric coordinates with respect to the
/// triangle's corners. Each hexagon is the region where its center carries the
/// largest weight.
///
/// Per-level sharpening: for corner j with weight w_j, the edge distance is
/// d_j = w_j - max(other weights), zero on the hexagon edge. Level l uses
/// clamp(d_j / min(transition * 2^l, 1) + 0.5, 0, 1), renormalized over the
/// three corners. The width cap of 1 keeps corners outside the current triangle
/// at zero weight, so the weight field stays continuous.
///
/// Tile transforms: a 64-bit hash of (i, j, seed) yields a uv offset in [0, 1)^2
/// and, when jitter is on, a rotation by a multiple of 60 degrees about the
/// hex center.
struct HexTileParams {
  double tile_scale = 4.0;
  bool rotation_jitter = true;
  std::uint64_t seed = 0;
  /// Level-0 transition width in barycentric units.
  double transition = 1.0 / 16.0;
  BlendParams blend;
};

struct HexCell {
  int i = 0;
  int j = 0;
  bool operator==(const HexCell&) const = default;
};

struct HexVertex {
  HexCell cell;
  double weight = 0.0;
};

/// Barycentric weights of the three surrounding hex centers, sorted by
/// descending weight.
std::array<HexVertex, 3> hex_weights(double u, double v, const HexTileParams& params);

/// Sharpened weights for mask level `level`, in the order of `vertices`.
std::array<double, 3> hex_level_weights(const std::array<HexVertex, 3>& vertices, int level,
                                        double transition);

/// uv position of a hex center.
std::array<double, 2> hex_center_uv(HexCell cell, const HexTileParams& params);

struct TileTransform {
  double offset_u = 0.0;
  double offset_v = 0.0;
  int rotation = 0;  // multiples of 60 degrees
};

TileTransform tile_transform(HexCell cell, const HexTileParams& params);

/// Texture-space uv fetched for `cell` at output position (u, v).
std::array<double, 2> tile_uv(double u, double v, HexCell cell, const HexTileParams& params);

/// Bilinear fetch at normalized uv using GPU texel-center convention.
float sample_bilinear(const Image& img, double u, double v, int channel, Addressing addressing);

/// Renders an out_width x out_height hex-tiled image. One output texel spans
/// one level-0 texel of `texture`; each texel blends three tile fetches level
/// by level with the sharpened analytic weights.
Image hextile_render(const MipChain& texture, int out_width, int out_height,
                     const HexTileParams& params);

}  // namespace lapblend
