#include "lapblend/pyramid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lapblend/error.hpp"
#include "lapblend/parallel.hpp"

namespace lapblend {
namespace {

double sinc(double x) noexcept {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

struct LerpTap {
  int i0;
  int i1;
  float t;
};

// Source taps for every output coordinate of a 1D bilinear magnification.
std::vector<LerpTap> bilinear_taps(int src_size, int factor, Addressing addressing) {
  std::vector<LerpTap> taps(static_cast<std::size_t>(src_size) * static_cast<std::size_t>(factor));
  for (std::size_t j = 0; j < taps.size(); ++j) {
    const double s = (static_cast<double>(j) + 0.5) / factor - 0.5;
    const double base = std::floor(s);
    const int i = static_cast<int>(base);
    taps[j] = {resolve_coord(i, src_size, addressing), resolve_coord(i + 1, src_size, addressing),
               static_cast<float>(s - base)};
  }
  return taps;
}

Image downsample_box(const Image& img) {
  const int w = img.width() / 2;
  const int h = img.height() / 2;
  const int ch = img.channels();
  Image out(w, h, ch);
  parallel_for_rows(h, [&](int y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < ch; ++c) {
        const float top = img(2 * x, 2 * y, c) + img(2 * x + 1, 2 * y, c);
        const float bottom = img(2 * x, 2 * y + 1, c) + img(2 * x + 1, 2 * y + 1, c);
        out(x, y, c) = (top + bottom) * 0.25f;
      }
    }
  });
  return out;
}

Image downsample_lanczos2(const Image& img, Addressing addressing) {
  const auto taps = lanczos2_taps();
  const int w = img.width() / 2;
  const int h = img.height() / 2;
  const int ch = img.channels();

  Image horizontal(w, img.height(), ch);
  parallel_for_rows(img.height(), [&](int y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < ch; ++c) {
        float acc = 0.0f;
        for (int t = 0; t < 4; ++t) acc += taps[t] * fetch(img, 2 * x - 1 + t, y, c, addressing);
        horizontal(x, y, c) = acc;
      }
    }
  });

  Image out(w, h, ch);
  parallel_for_rows(h, [&](int y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < ch; ++c) {
        float acc = 0.0f;
        for (int t = 0; t < 4; ++t) {
          acc += taps[t] * fetch(horizontal, x, 2 * y - 1 + t, c, addressing);
        }
        out(x, y, c) = acc;
      }
    }
  });
  return out;
}

}  // namespace

std::string_view to_string(FilterKind filter) noexcept {
  return filter == FilterKind::Box ? "box" : "lanczos2";
}

std::optional<FilterKind> parse_filter(std::string_view name) noexcept {
  if (name == "box") return FilterKind::Box;
  if (name == "lanczos2") return FilterKind::Lanczos2;
  return std::nullopt;
}

std::string_view to_string(LaplacianMode mode) noexcept {
  return mode == LaplacianMode::Exact ? "exact" : "approx";
}

std::optional<LaplacianMode> parse_laplacian_mode(std::string_view name) noexcept {
  if (name == "exact") return LaplacianMode::Exact;
  if (name == "approx" || name == "mip-approx") return LaplacianMode::MipApprox;
  return std::nullopt;
}

double lanczos2_kernel(double t) noexcept {
  if (std::abs(t) >= 2.0) return 0.0;
  return sinc(t) * sinc(t / 2.0);
}

std::array<float, 4> lanczos2_taps() noexcept {
  constexpr std::array<double, 4> distances{-1.5, -0.5, 0.5, 1.5};
  std::array<double, 4> raw{};
  double sum = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    raw[i] = lanczos2_kernel(distances[i]);
    sum += raw[i];
  }
  std::array<float, 4> taps{};
  for (std::size_t i = 0; i < raw.size(); ++i) taps[i] = static_cast<float>(raw[i] / sum);
  return taps;
}

const Image& MipChain::level(int k) const {
  if (k < 0 || k >= level_count()) {
    throw_invalid_input("mip level " + std::to_string(k) + " out of range (chain has " +
                        std::to_string(level_count()) + " levels)");
  }
  return levels[static_cast<std::size_t>(k)];
}

std::size_t MipChain::total_texels() const noexcept {
  std::size_t total = 0;
  for (const auto& lvl : levels) total += lvl.texel_count();
  return total;
}

Image downsample(const Image& img, FilterKind filter, Addressing addressing) {
  if (img.empty()) throw_invalid_input("downsample: empty image");
  if (img.width() % 2 != 0 || img.height() % 2 != 0) {
    throw_invalid_input("downsample: dimensions must be even, got " + std::to_string(img.width()) +
                        "x" + std::to_string(img.height()));
  }
  return filter == FilterKind::Box ? downsample_box(img) : downsample_lanczos2(img, addressing);
}

Image upsample_bilinear(const Image& img, int factor, Addressing addressing) {
  if (img.empty()) throw_invalid_input("upsample_bilinear: empty image");
  if (!is_power_of_two(factor)) {
    throw_invalid_input("upsample_bilinear: factor must be a power of two, got " +
                        std::to_string(factor));
  }
  if (factor == 1) return img;

  const int ch = img.channels();
  const int w = img.width() * factor;
  const int h = img.height() * factor;
  const auto xtaps = bilinear_taps(img.width(), factor, addressing);
  const auto ytaps = bilinear_taps(img.height(), factor, addressing);

  Image horizontal(w, img.height(), ch);
  parallel_for_rows(img.height(), [&](int y) {
    for (int x = 0; x < w; ++x) {
      const auto& tap = xtaps[static_cast<std::size_t>(x)];
      for (int c = 0; c < ch; ++c) {
        const float a = img(tap.i0, y, c);
        const float b = img(tap.i1, y, c);
        horizontal(x, y, c) = a + tap.t * (b - a);
      }
    }
  });

  Image out(w, h, ch);
  parallel_for_rows(h, [&](int y) {
    const auto& tap = ytaps[static_cast<std::size_t>(y)];
    const auto row0 = horizontal.row(tap.i0);
    const auto row1 = horizontal.row(tap.i1);
    auto dst = out.row(y);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = row0[i] + tap.t * (row1[i] - row0[i]);
  });
  return out;
}

MipChain build_mip_chain(const Image& img, FilterKind filter, int max_levels,
                         Addressing addressing) {
  if (img.empty()) throw_invalid_input("build_mip_chain: empty image");
  if (max_levels < 1) throw_invalid_input("build_mip_chain: max_levels must be at least 1");
  if (!is_power_of_two(img.width()) || !is_power_of_two(img.height())) {
    throw_invalid_input("build_mip_chain: dimensions must be powers of two, got " +
                        std::to_string(img.width()) + "x" + std::to_string(img.height()));
  }
  MipChain chain;
  chain.filter = filter;
  chain.addressing = addressing;
  chain.levels.push_back(img);
  while (chain.level_count() < max_levels) {
    const Image& last = chain.levels.back();
    if (last.width() == 1 || last.height() == 1) break;
    chain.levels.push_back(downsample(last, filter, addressing));
  }
  return chain;
}

Image exact_laplacian_level(const Image& g_k, FilterKind filter, Addressing addressing) {
  const Image coarse = downsample(g_k, filter, addressing);
  return subtract(g_k, upsample_bilinear(coarse, 2, addressing));
}

Image expand_iterated(const Image& img, int times, Addressing addressing) {
  Image out = img;
  for (int i = 0; i < times; ++i) out = upsample_bilinear(out, 2, addressing);
  return out;
}

LaplacianStack build_laplacian_stack(const MipChain& chain, int n, LaplacianMode mode) {
  if (n < 0) throw_invalid_input("build_laplacian_stack: level count must be non-negative");
  if (n + 1 > chain.level_count()) {
    throw_invalid_input("build_laplacian_stack: " + std::to_string(n) +
                        " Laplacian levels need " + std::to_string(n + 1) +
                        " mip levels, chain has " + std::to_string(chain.level_count()));
  }
  const Addressing addr = chain.addressing;
  LaplacianStack stack;
  stack.mode = mode;
  stack.laplacians.reserve(static_cast<std::size_t>(n));

  if (mode == LaplacianMode::MipApprox) {
    Image finer = chain.level(0);
    for (int k = 0; k < n; ++k) {
      Image coarser = upsample_bilinear(chain.level(k + 1), 1 << (k + 1), addr);
      stack.laplacians.push_back(subtract(finer, coarser));
      finer = std::move(coarser);
    }
    stack.base = std::move(finer);
  } else {
    for (int k = 0; k < n; ++k) {
      stack.laplacians.push_back(
          expand_iterated(exact_laplacian_level(chain.level(k), chain.filter, addr), k, addr));
    }
    stack.base = expand_iterated(chain.level(n), n, addr);
  }
  return stack;
}

Image reconstruct(const LaplacianStack& stack) {
  if (stack.base.empty()) throw_invalid_input("reconstruct: stack has no base level");
  Image sum(stack.base.width(), stack.base.height(), stack.base.channels());
  for (const auto& lap : stack.laplacians) {
    if (!lap.same_shape(stack.base)) throw_invalid_input("reconstruct: level dimensions differ");
  }
  auto out = sum.samples();
  for (const auto& lap : stack.laplacians) {
    const auto s = lap.samples();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += s[i];
  }
  const auto b = stack.base.samples();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return sum;
}

}  // namespace lapblend
