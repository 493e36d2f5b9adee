#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "lapblend/image.hpp"

namespace lapblend {

/// Prefilter applied before 2x decimation.
enum class FilterKind {
  Box,       // 2x2 average
  Lanczos2,  // 4x4 separable sinc(t) sinc(t/2), taps normalized to sum to 1
};

std::string_view to_string(FilterKind filter) noexcept;
std::optional<FilterKind> parse_filter(std::string_view name) noexcept;

/// sinc(t) * sinc(t / 2) for |t| < 2, zero elsewhere. `t` is in source texels.
double lanczos2_kernel(double t) noexcept;

/// Normalized 1D taps for source offsets -1, 0, +1, +2 relative to 2k, i.e.
/// distances -1.5, -0.5, +0.5, +1.5 from the center of output texel k.
std::array<float, 4> lanczos2_taps() noexcept;

/// Gaussian levels G_0 ... G_n, each exactly half the previous per axis.
struct MipChain {
  std::vector<Image> levels;
  FilterKind filter = FilterKind::Box;
  Addressing addressing = Addressing::Wrap;

  int level_count() const noexcept { return static_cast<int>(levels.size()); }
  const Image& level(int k) const;
  std::size_t total_texels() const noexcept;
};

enum class LaplacianMode {
  Exact,      // per-level G_k - up2(down(G_k)), expanded to full resolution
  MipApprox,  // up(G_k) - up(G_{k+1}) sampled straight from the mip chain
};

std::string_view to_string(LaplacianMode mode) noexcept;
std::optional<LaplacianMode> parse_laplacian_mode(std::string_view name) noexcept;

/// Full-resolution band-pass levels plus the expanded coarsest Gaussian.
/// The element-wise sum of `laplacians` and `base` reconstructs G_0.
struct LaplacianStack {
  std::vector<Image> laplacians;
  Image base;
  LaplacianMode mode = LaplacianMode::MipApprox;

  int level_count() const noexcept { return static_cast<int>(laplacians.size()); }
};

inline constexpr int kAllLevels = std::numeric_limits<int>::max();

/// Filter then drop every other sample. Output texel k covers source texels
/// 2k and 2k+1. Both dimensions must be even.
Image downsample(const Image& img, FilterKind filter, Addressing addressing = Addressing::Wrap);

/// Bilinear magnification by a power-of-two `factor`. Output texel j samples
/// source coordinate (j + 0.5) / factor - 0.5, the usual GPU texel-center
/// convention.
Image upsample_bilinear(const Image& img, int factor, Addressing addressing = Addressing::Wrap);

/// Builds the chain by repeated downsample(). Stops after `max_levels` levels
/// or once either dimension reaches 1. Requires power-of-two dimensions.
MipChain build_mip_chain(const Image& img, FilterKind filter, int max_levels = kAllLevels,
                         Addressing addressing = Addressing::Wrap);

/// G_k - up2(down(G_k)) at the resolution of `g_k`. Signed.
Image exact_laplacian_level(const Image& g_k, FilterKind filter,
                            Addressing addressing = Addressing::Wrap);

/// Decomposes the chain into `n` full-resolution Laplacian levels and a base.
///
/// MipApprox: L_k = up_{2^k}(G_k) - up_{2^{k+1}}(G_{k+1}), base = up_{2^n}(G_n);
///   telescopes by construction.
/// Exact: L_k = expand_k(exact_laplacian_level(G_k)), base = expand_n(G_n), where
///   expand_k applies up2 k times. A single up_{2^k} does not compose with up2,
///   so the iterated form is what makes the exact pyramid collapse to G_0.
LaplacianStack build_laplacian_stack(const MipChain& chain, int n, LaplacianMode mode);

/// Element-wise sum of all Laplacian levels and the base.
Image reconstruct(const LaplacianStack& stack);

/// up2 applied `times` times.
Image expand_iterated(const Image& img, int times, Addressing addressing = Addressing::Wrap);

}  // namespace lapblend
