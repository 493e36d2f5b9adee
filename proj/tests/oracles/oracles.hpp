#pragma once

// Brute-force reference implementations used only by tests. They work in
// double precision with direct (non-separable) loops and never call the
// library's resampling code.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "lapblend/image.hpp"

namespace oracle {

struct Grid {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<double> v;

  Grid() = default;
  Grid(int w, int h, int c) : width(w), height(h), channels(c), v(std::size_t(w) * h * c, 0.0) {}

  double& at(int x, int y, int c) { return v[(std::size_t(y) * width + x) * channels + c]; }
  double at(int x, int y, int c) const { return v[(std::size_t(y) * width + x) * channels + c]; }

  double wrap(int x, int y, int c) const {
    x = ((x % width) + width) % width;
    y = ((y % height) + height) % height;
    return at(x, y, c);
  }
  double edge(int x, int y, int c) const {
    return at(std::clamp(x, 0, width - 1), std::clamp(y, 0, height - 1), c);
  }
  double fetch(int x, int y, int c, bool wrap_mode) const {
    return wrap_mode ? wrap(x, y, c) : edge(x, y, c);
  }
};

inline Grid from_image(const lapblend::Image& img) {
  Grid g(img.width(), img.height(), img.channels());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      for (int c = 0; c < img.channels(); ++c) g.at(x, y, c) = img(x, y, c);
  return g;
}

inline double max_abs_diff(const Grid& g, const lapblend::Image& img) {
  double worst = 0.0;
  for (int y = 0; y < g.height; ++y)
    for (int x = 0; x < g.width; ++x)
      for (int c = 0; c < g.channels; ++c)
        worst = std::max(worst, std::abs(g.at(x, y, c) - double(img(x, y, c))));
  return worst;
}

inline Grid sub(const Grid& a, const Grid& b) {
  Grid out = a;
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] -= b.v[i];
  return out;
}

inline double lanczos2(double t) {
  if (t == 0.0) return 1.0;
  if (std::abs(t) >= 2.0) return 0.0;
  const double a = std::numbers::pi * t;
  const double b = std::numbers::pi * t / 2.0;
  return (std::sin(a) / a) * (std::sin(b) / b);
}

/// Direct 2D box or 4x4 Lanczos2 convolution followed by decimation.
inline Grid downsample(const Grid& src, bool lanczos, bool wrap_mode = true) {
  Grid out(src.width / 2, src.height / 2, src.channels);
  if (!lanczos) {
    for (int y = 0; y < out.height; ++y)
      for (int x = 0; x < out.width; ++x)
        for (int c = 0; c < src.channels; ++c) {
          double s = 0.0;
          for (int j = 0; j < 2; ++j)
            for (int i = 0; i < 2; ++i) s += src.at(2 * x + i, 2 * y + j, c);
          out.at(x, y, c) = s / 4.0;
        }
    return out;
  }
  // Output texel k is centered at source coordinate 2k + 0.5.
  double w2d[4][4];
  double total = 0.0;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) {
      w2d[j][i] = lanczos2(i - 1.5) * lanczos2(j - 1.5);
      total += w2d[j][i];
    }
  for (int y = 0; y < out.height; ++y)
    for (int x = 0; x < out.width; ++x)
      for (int c = 0; c < src.channels; ++c) {
        double s = 0.0;
        for (int j = 0; j < 4; ++j)
          for (int i = 0; i < 4; ++i)
            s += w2d[j][i] / total * src.fetch(2 * x - 1 + i, 2 * y - 1 + j, c, wrap_mode);
        out.at(x, y, c) = s;
      }
  return out;
}

/// Bilinear interpolation evaluated directly at every output texel center.
inline Grid upsample(const Grid& src, int factor, bool wrap_mode = true) {
  Grid out(src.width * factor, src.height * factor, src.channels);
  for (int y = 0; y < out.height; ++y)
    for (int x = 0; x < out.width; ++x) {
      const double sx = (x + 0.5) / factor - 0.5;
      const double sy = (y + 0.5) / factor - 0.5;
      const int x0 = int(std::floor(sx));
      const int y0 = int(std::floor(sy));
      const double tx = sx - x0;
      const double ty = sy - y0;
      for (int c = 0; c < src.channels; ++c) {
        out.at(x, y, c) = (1 - tx) * (1 - ty) * src.fetch(x0, y0, c, wrap_mode) +
                          tx * (1 - ty) * src.fetch(x0 + 1, y0, c, wrap_mode) +
                          (1 - tx) * ty * src.fetch(x0, y0 + 1, c, wrap_mode) +
                          tx * ty * src.fetch(x0 + 1, y0 + 1, c, wrap_mode);
      }
    }
  return out;
}

/// Box mip level k equals the mean over aligned 2^k x 2^k blocks.
inline Grid block_average(const Grid& src, int k) {
  const int s = 1 << k;
  Grid out(src.width / s, src.height / s, src.channels);
  for (int y = 0; y < out.height; ++y)
    for (int x = 0; x < out.width; ++x)
      for (int c = 0; c < src.channels; ++c) {
        double sum = 0.0;
        for (int j = 0; j < s; ++j)
          for (int i = 0; i < s; ++i) sum += src.at(x * s + i, y * s + j, c);
        out.at(x, y, c) = sum / (double(s) * s);
      }
  return out;
}

inline double dynamic_mask(double value, double t, double s, int n) {
  return std::clamp((value - t) / (s * std::pow(2.0, n)) + 0.5, 0.0, 1.0);
}

/// Two-texture blend read straight from mip levels (shader semantics):
/// fetch levels start+0 .. start+count, all magnified to level `start`.
/// The mask weights the second texture; mask level l + bias pairs with
/// texture level l, and `step` is the distance between paired mip levels.
inline Grid shader_blend(const std::vector<Grid>& a, const std::vector<Grid>& b,
                         const std::vector<Grid>& m, int start, int count, int bias = 0,
                         int step = 1) {
  auto up = [&](const Grid& g, int level) { return upsample(g, 1 << (level - start)); };
  // count is the number of Laplacian terms; fetched levels are start, start+step, ...
  std::vector<Grid> ua, ub, um;
  for (int l = start; l <= start + count * step; l += step) {
    ua.push_back(up(a[l], l));
    ub.push_back(up(b[l], l));
    um.push_back(up(m[l + bias], l + bias));
  }
  Grid out(ua[0].width, ua[0].height, ua[0].channels);
  for (int y = 0; y < out.height; ++y)
    for (int x = 0; x < out.width; ++x)
      for (int c = 0; c < out.channels; ++c) {
        double acc = 0.0;
        for (int i = 0; i <= count; ++i) {
          const double mi = um[i].at(x, y, um[i].channels == 1 ? 0 : c);
          const double la = i < count ? ua[i].at(x, y, c) - ua[i + 1].at(x, y, c) : ua[i].at(x, y, c);
          const double lb = i < count ? ub[i].at(x, y, c) - ub[i + 1].at(x, y, c) : ub[i].at(x, y, c);
          acc += la * (1 - mi) + lb * mi;
        }
        out.at(x, y, c) = acc;
      }
  return out;
}

}  // namespace oracle
