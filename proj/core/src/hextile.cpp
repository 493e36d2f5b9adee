#include "lapblend/hextile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "lapblend/error.hpp"
#include "lapblend/parallel.hpp"

namespace lapblend {
namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t cell_hash(HexCell cell, std::uint64_t seed, std::uint64_t salt) noexcept {
  std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL * (salt + 1));
  h = mix64(h ^ static_cast<std::uint32_t>(cell.i));
  h = mix64(h ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cell.j)) << 32));
  return h;
}

void validate(const HexTileParams& params) {
  if (!(params.tile_scale > 0.0) || !std::isfinite(params.tile_scale)) {
    throw_invalid_input("hex tile_scale must be positive");
  }
  if (!(params.transition > 0.0) || !std::isfinite(params.transition)) {
    throw_invalid_input("hex transition width must be positive");
  }
}

}  // namespace

std::array<HexVertex, 3> hex_weights(double u, double v, const HexTileParams& params) {
  const double px = u * params.tile_scale;
  const double py = v * params.tile_scale;
  const double a = px - py / kSqrt3;
  const double b = 2.0 * py / kSqrt3;
  const double ia = std::floor(a);
  const double ib = std::floor(b);
  const double fa = a - ia;
  const double fb = b - ib;
  const int i = static_cast<int>(ia);
  const int j = static_cast<int>(ib);

  std::array<HexVertex, 3> out;
  if (fa + fb < 1.0) {
    out = {HexVertex{{i, j}, 1.0 - fa - fb}, HexVertex{{i + 1, j}, fa},
           HexVertex{{i, j + 1}, fb}};
  } else {
    out = {HexVertex{{i + 1, j + 1}, fa + fb - 1.0}, HexVertex{{i, j + 1}, 1.0 - fa},
           HexVertex{{i + 1, j}, 1.0 - fb}};
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const HexVertex& l, const HexVertex& r) { return l.weight > r.weight; });
  return out;
}

std::array<double, 3> hex_level_weights(const std::array<HexVertex, 3>& vertices, int level,
                                        double transition) {
  if (!(transition > 0.0)) throw_invalid_input("hex transition width must be positive");
  const double width = std::min(std::ldexp(transition, std::max(level, 0)), 1.0);
  std::array<double, 3> w{};
  double sum = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double others = std::max(vertices[(k + 1) % 3].weight, vertices[(k + 2) % 3].weight);
    const double d = vertices[k].weight - others;
    w[k] = std::clamp(d / width + 0.5, 0.0, 1.0);
    sum += w[k];
  }
  // The dominant corner has d >= 0, so sum >= 0.5.
  for (double& x : w) x /= sum;
  return w;
}

std::array<double, 2> hex_center_uv(HexCell cell, const HexTileParams& params) {
  const double px = cell.i + 0.5 * cell.j;
  const double py = 0.5 * kSqrt3 * cell.j;
  return {px / params.tile_scale, py / params.tile_scale};
}

TileTransform tile_transform(HexCell cell, const HexTileParams& params) {
  TileTransform t;
  const std::uint64_t h = cell_hash(cell, params.seed, 0);
  t.offset_u = static_cast<double>(h & 0xffffffffULL) * 0x1.0p-32;
  t.offset_v = static_cast<double>(h >> 32) * 0x1.0p-32;
  if (params.rotation_jitter) t.rotation = static_cast<int>(cell_hash(cell, params.seed, 1) % 6);
  return t;
}

std::array<double, 2> tile_uv(double u, double v, HexCell cell, const HexTileParams& params) {
  const TileTransform t = tile_transform(cell, params);
  const auto center = hex_center_uv(cell, params);
  double du = u - center[0];
  double dv = v - center[1];
  if (t.rotation != 0) {
    const double angle = t.rotation * (std::numbers::pi / 3.0);
    const double cs = std::cos(angle);
    const double sn = std::sin(angle);
    const double ru = cs * du - sn * dv;
    const double rv = sn * du + cs * dv;
    du = ru;
    dv = rv;
  }
  return {center[0] + du + t.offset_u, center[1] + dv + t.offset_v};
}

namespace {

struct BilinearTap {
  int x0 = 0;
  int y0 = 0;
  float tx = 0.0f;
  float ty = 0.0f;
};

BilinearTap bilinear_tap(const Image& img, double u, double v, Addressing addressing) {
  const double sx = u * img.width() - 0.5;
  const double sy = v * img.height() - 0.5;
  const double fx = std::floor(sx);
  const double fy = std::floor(sy);
  // Reduce far-away coordinates before the int conversion; both forms keep
  // the addressing result unchanged.
  auto reduce = [addressing](double f, int size) {
    if (addressing == Addressing::Wrap) return static_cast<int>(std::fmod(f, size * 1024.0));
    return static_cast<int>(std::clamp(f, -1.0, static_cast<double>(size)));
  };
  return {reduce(fx, img.width()), reduce(fy, img.height()), static_cast<float>(sx - fx),
          static_cast<float>(sy - fy)};
}

float sample_tap(const Image& img, const BilinearTap& t, int channel, Addressing addressing) {
  const float a = fetch(img, t.x0, t.y0, channel, addressing);
  const float b = fetch(img, t.x0 + 1, t.y0, channel, addressing);
  const float c = fetch(img, t.x0, t.y0 + 1, channel, addressing);
  const float d = fetch(img, t.x0 + 1, t.y0 + 1, channel, addressing);
  const float top = a + t.tx * (b - a);
  const float bottom = c + t.tx * (d - c);
  return top + t.ty * (bottom - top);
}

}  // namespace

float sample_bilinear(const Image& img, double u, double v, int channel, Addressing addressing) {
  return sample_tap(img, bilinear_tap(img, u, v, addressing), channel, addressing);
}

Image hextile_render(const MipChain& texture, int out_width, int out_height,
                     const HexTileParams& params) {
  validate(params);
  if (out_width < 1 || out_height < 1) throw_invalid_input("hextile output must be non-empty");
  const LevelPlan plan = plan_levels(params.blend);
  if (texture.level_count() <= plan.gaussian) {
    throw_invalid_input("texture chain has " + std::to_string(texture.level_count()) +
                        " mip levels, hex blend needs " + std::to_string(plan.gaussian + 1));
  }

  const Image& base = texture.level(0);
  const int ch = base.channels();
  const Addressing addr = texture.addressing;
  Image out(out_width, out_height, ch);

  std::vector<int> levels{plan.gaussian};
  for (const auto& term : plan.laplacians) {
    levels.push_back(term.fine);
    levels.push_back(term.coarse);
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<std::size_t> slot(static_cast<std::size_t>(levels.back()) + 1);
  for (std::size_t l = 0; l < levels.size(); ++l) slot[static_cast<std::size_t>(levels[l])] = l;

  parallel_for_rows(out_height, [&](int y) {
    std::vector<std::array<double, 3>> lw(plan.laplacians.size() + 1);
    std::vector<BilinearTap> taps(3 * levels.size());
    for (int x = 0; x < out_width; ++x) {
      const double u = (x + 0.5) / base.width();
      const double v = (y + 0.5) / base.height();
      const auto vertices = hex_weights(u, v, params);
      std::array<std::array<double, 2>, 3> uvs;
      for (std::size_t k = 0; k < 3; ++k) uvs[k] = tile_uv(u, v, vertices[k].cell, params);

      for (std::size_t t = 0; t < plan.laplacians.size(); ++t) {
        lw[t] = hex_level_weights(vertices, plan.laplacians[t].mask, params.transition);
      }
      lw.back() = hex_level_weights(vertices, plan.gaussian_mask, params.transition);

      // One bilinear setup per (tile, level), shared by all channels.
      for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t l = 0; l < levels.size(); ++l) {
          taps[k * levels.size() + l] =
              bilinear_tap(texture.level(levels[l]), uvs[k][0], uvs[k][1], addr);
        }
      auto sample = [&](std::size_t k, int level, int c) {
        const std::size_t l = slot[static_cast<std::size_t>(level)];
        return sample_tap(texture.level(level), taps[k * levels.size() + l], c, addr);
      };

      for (int c = 0; c < ch; ++c) {
        float acc = 0.0f;
        for (std::size_t t = 0; t < plan.laplacians.size(); ++t) {
          const LevelTerm& term = plan.laplacians[t];
          float level_sum = 0.0f;
          for (std::size_t k = 0; k < 3; ++k) {
            const float lap = sample(k, term.fine, c) - sample(k, term.coarse, c);
            level_sum += lap * static_cast<float>(lw[t][k]);
          }
          acc += term.weight * level_sum;
        }
        float gauss = 0.0f;
        for (std::size_t k = 0; k < 3; ++k) {
          gauss += sample(k, plan.gaussian, c) * static_cast<float>(lw.back()[k]);
        }
        out(x, y, c) = acc + gauss;
      }
    }
  });

  return params.blend.clamp_output ? clamp_to_unit(std::move(out)) : out;
}

}  // namespace lapblend
