#include "lapblend/blend.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

#include "lapblend/error.hpp"
#include "lapblend/parallel.hpp"

namespace lapblend {
namespace {

constexpr double kPartitionTolerance = 1e-4;

// Mask levels and texture levels resampled to the output resolution.
using LevelImages = std::map<int, Image>;

void validate_input(const BlendInput& input, const LevelPlan& plan) {
  if (input.textures.size() < 2) throw_invalid_input("blend needs at least two textures");
  const Image& ref = input.textures.front().level(0);
  for (const auto& chain : input.textures) {
    if (chain.levels.empty()) throw_invalid_input("texture chain is empty");
    if (!chain.levels.front().same_shape(ref)) {
      throw_invalid_input("all textures must share dimensions and channel count");
    }
    if (chain.level_count() <= plan.gaussian) {
      throw_invalid_input("texture chain has " + std::to_string(chain.level_count()) +
                          " mip levels, blend needs " + std::to_string(plan.gaussian + 1));
    }
  }

  const bool two_way = input.textures.size() == 2 && input.masks.size() == 1;
  if (!two_way && input.masks.size() != input.textures.size()) {
    throw_invalid_input("expected one mask for two textures or one mask per texture, got " +
                        std::to_string(input.masks.size()) + " masks for " +
                        std::to_string(input.textures.size()) + " textures");
  }

  const int deepest = plan.deepest_mask_level();
  for (const auto& layer : input.masks) {
    if (const auto* chain = std::get_if<MipChain>(&layer)) {
      if (chain->levels.empty()) throw_invalid_input("mask chain is empty");
      const Image& m0 = chain->levels.front();
      if (m0.width() != ref.width() || m0.height() != ref.height()) {
        throw_invalid_input("mask dimensions must match the textures");
      }
      if (m0.channels() != 1 && m0.channels() != ref.channels()) {
        throw_invalid_input("mask must be single-channel or match the texture channel count");
      }
      if (chain->level_count() <= deepest) {
        throw_invalid_input("mask chain has " + std::to_string(chain->level_count()) +
                            " mip levels, blend needs " + std::to_string(deepest + 1));
      }
    } else {
      const auto& dyn = std::get<DynamicMask>(layer);
      if (dyn.source.width() != ref.width() || dyn.source.height() != ref.height()) {
        throw_invalid_input("dynamic mask source dimensions must match the textures");
      }
      if (dyn.source.channels() != 1) {
        throw_invalid_input("dynamic mask source must be single-channel");
      }
    }
  }
}

// Gaussian levels of one mask layer at the output resolution.
class MaskSampler {
 public:
  MaskSampler(const MaskLayer& layer, int output_level, FilterKind filter)
      : layer_(&layer), output_level_(output_level) {
    if (const auto* dyn = std::get_if<DynamicMask>(layer_); dyn && output_level > 0) {
      // The remap reads the source at the fetched LOD, like a GPU sampler would.
      field_ = build_mip_chain(dyn->source, filter, output_level + 1, Addressing::Clamp)
                   .level(output_level);
    }
  }

  Image level(int level) const {
    if (const auto* chain = std::get_if<MipChain>(layer_)) {
      return mask_level_at(*chain, level, output_level_);
    }
    const auto& dyn = std::get<DynamicMask>(*layer_);
    if (output_level_ == 0) return dynamic_mask_level(dyn, level);
    return remap_to_mask_level(field_, dyn.threshold, dyn.scale, level);
  }

 private:
  const MaskLayer* layer_;
  int output_level_;
  Image field_;
};

std::set<int> texture_levels(const LevelPlan& plan) {
  std::set<int> levels{plan.gaussian};
  for (const auto& term : plan.laplacians) {
    levels.insert(term.fine);
    levels.insert(term.coarse);
  }
  return levels;
}

std::set<int> mask_levels(const LevelPlan& plan) {
  std::set<int> levels{plan.gaussian_mask};
  for (const auto& term : plan.laplacians) levels.insert(term.mask);
  return levels;
}

// Per-texture weights for the general (one mask per texture) form, with the
// partition of unity enforced.
std::vector<LevelImages> normalized_weights(const BlendInput& input, const LevelPlan& plan,
                                            const BlendParams& params, int channels) {
  const std::size_t count = input.textures.size();
  std::vector<MaskSampler> samplers;
  for (const auto& layer : input.masks) {
    samplers.emplace_back(layer, plan.output_level, params.filter);
  }
  std::vector<LevelImages> weights(count);
  for (int level : mask_levels(plan)) {
    for (std::size_t j = 0; j < count; ++j) {
      weights[j][level] = broadcast_channels(samplers[j].level(level), channels);
    }
    const std::size_t samples = weights.front()[level].samples().size();
    for (std::size_t i = 0; i < samples; ++i) {
      double sum = 0.0;
      for (std::size_t j = 0; j < count; ++j) sum += weights[j][level].samples()[i];
      const double deviation = std::abs(sum - 1.0);
      if (deviation > kPartitionTolerance) {
        throw_invalid_input("mask weights at level " + std::to_string(level) + " sum to " +
                            std::to_string(sum) + ", expected 1 within 1e-4");
      }
      if (deviation > 0.0) {
        for (std::size_t j = 0; j < count; ++j) {
          float& w = weights[j][level].samples()[i];
          w = static_cast<float>(w / sum);
        }
      }
    }
  }
  return weights;
}

// Images touched by one Laplacian term, resolved ahead of the texel loop.
struct ResolvedTerm {
  std::vector<const Image*> fine;
  std::vector<const Image*> coarse;
  std::vector<const Image*> weight;  // per texture, or the single two-way mask
  float scale = 1.0f;
};

}  // namespace

int LevelPlan::deepest_mask_level() const noexcept {
  int deepest = gaussian_mask;
  for (const auto& term : laplacians) deepest = std::max(deepest, term.mask);
  return deepest;
}

LevelPlan plan_levels(const BlendParams& params) {
  const int n = params.num_levels;
  if (n < 0) throw_invalid_input("num_levels must be non-negative");
  if (params.mask_level_bias < 0) throw_invalid_input("mask_level_bias must be non-negative");
  if (!std::isfinite(params.lod) || params.lod < 0.0) {
    throw_invalid_input("lod must be a finite non-negative value");
  }
  const int bias = params.mask_level_bias;
  LevelPlan plan;

  if (params.skip_levels) {
    if (n % 2 != 0) {
      throw_invalid_input("level skipping needs an even level count, got " + std::to_string(n));
    }
    if (params.lod != 0.0) throw_invalid_input("level skipping does not support minification");
    for (int i = 0; i < n; i += 2) plan.laplacians.push_back({i, i + 2, i + bias, 1.0f});
    plan.gaussian = n;
    plan.gaussian_mask = n + bias;
    return plan;
  }

  const double first = std::floor(params.lod);
  const int start = static_cast<int>(first);
  const auto fraction = static_cast<float>(params.lod - first);
  const int blended = std::max(n - start, 0);
  plan.output_level = start;
  for (int i = start; i < start + blended; ++i) {
    plan.laplacians.push_back({i, i + 1, i + bias, i == start ? 1.0f - fraction : 1.0f});
  }
  plan.gaussian = start + blended;
  plan.gaussian_mask = plan.gaussian + bias;
  return plan;
}

int sample_count(const BlendParams& params) noexcept {
  const int n = std::max(params.num_levels, 0);
  if (params.skip_levels) return n / 2 + 1;
  const int start = static_cast<int>(std::floor(std::max(params.lod, 0.0)));
  return std::max(n - start, 0) + 1;
}

Image linear_blend(const Image& a, const Image& b, const Image& m) {
  if (!a.same_shape(b)) throw_invalid_input("linear_blend: texture shapes differ");
  if (m.width() != a.width() || m.height() != a.height()) {
    throw_invalid_input("linear_blend: mask dimensions differ from textures");
  }
  if (m.channels() != 1 && m.channels() != a.channels()) {
    throw_invalid_input("linear_blend: mask must be single-channel or match textures");
  }
  const int ch = a.channels();
  const bool scalar_mask = m.channels() == 1;
  Image out(a.width(), a.height(), ch);
  parallel_for_rows(a.height(), [&](int y) {
    for (int x = 0; x < a.width(); ++x) {
      for (int c = 0; c < ch; ++c) {
        const float w = m(x, y, scalar_mask ? 0 : c);
        out(x, y, c) = a(x, y, c) * (1.0f - w) + b(x, y, c) * w;
      }
    }
  });
  return out;
}

Image laplacian_blend(const BlendInput& input, const BlendParams& params) {
  const LevelPlan plan = plan_levels(params);
  validate_input(input, plan);

  const int out_level = plan.output_level;
  const std::size_t count = input.textures.size();
  const int ch = input.textures.front().level(0).channels();

  std::vector<LevelImages> tex(count);
  for (std::size_t j = 0; j < count; ++j) {
    const MipChain& chain = input.textures[j];
    for (int level : texture_levels(plan)) {
      tex[j][level] =
          upsample_bilinear(chain.level(level), 1 << (level - out_level), chain.addressing);
    }
  }

  const Image& ref = tex.front().at(plan.gaussian);
  Image out(ref.width(), ref.height(), ch);

  const bool two_way = count == 2 && input.masks.size() == 1;
  std::vector<LevelImages> weights;
  if (two_way) {
    const MaskSampler sampler(input.masks.front(), out_level, params.filter);
    weights.resize(1);
    for (int level : mask_levels(plan)) weights[0][level] = sampler.level(level);
  } else {
    weights = normalized_weights(input, plan, params, ch);
  }

  auto resolve = [&](int fine, int coarse, int mask, float scale) {
    ResolvedTerm term;
    term.scale = scale;
    for (std::size_t j = 0; j < count; ++j) {
      term.fine.push_back(&tex[j].at(fine));
      term.coarse.push_back(coarse < 0 ? nullptr : &tex[j].at(coarse));
    }
    for (const auto& w : weights) term.weight.push_back(&w.at(mask));
    return term;
  };
  std::vector<ResolvedTerm> terms;
  for (const auto& t : plan.laplacians) terms.push_back(resolve(t.fine, t.coarse, t.mask, t.weight));
  const ResolvedTerm gauss = resolve(plan.gaussian, -1, plan.gaussian_mask, 1.0f);

  if (two_way) {
    const bool scalar_mask = gauss.weight[0]->channels() == 1;
    parallel_for_rows(out.height(), [&](int y) {
      for (int x = 0; x < out.width(); ++x) {
        for (int c = 0; c < ch; ++c) {
          const int mc = scalar_mask ? 0 : c;
          float acc = 0.0f;
          for (const auto& term : terms) {
            const float m = (*term.weight[0])(x, y, mc);
            const float la = (*term.fine[0])(x, y, c) - (*term.coarse[0])(x, y, c);
            const float lb = (*term.fine[1])(x, y, c) - (*term.coarse[1])(x, y, c);
            acc += term.scale * (la * (1.0f - m) + lb * m);
          }
          const float m = (*gauss.weight[0])(x, y, mc);
          acc += (*gauss.fine[0])(x, y, c) * (1.0f - m) + (*gauss.fine[1])(x, y, c) * m;
          out(x, y, c) = acc;
        }
      }
    });
  } else {
    parallel_for_rows(out.height(), [&](int y) {
      for (int x = 0; x < out.width(); ++x) {
        for (int c = 0; c < ch; ++c) {
          float acc = 0.0f;
          for (const auto& term : terms) {
            float level_sum = 0.0f;
            for (std::size_t j = 0; j < count; ++j) {
              const float lap = (*term.fine[j])(x, y, c) - (*term.coarse[j])(x, y, c);
              level_sum += lap * (*term.weight[j])(x, y, c);
            }
            acc += term.scale * level_sum;
          }
          float base = 0.0f;
          for (std::size_t j = 0; j < count; ++j) {
            base += (*gauss.fine[j])(x, y, c) * (*gauss.weight[j])(x, y, c);
          }
          out(x, y, c) = acc + base;
        }
      }
    });
  }

  return params.clamp_output ? clamp_to_unit(std::move(out)) : out;
}

Image laplacian_blend_minified(const BlendInput& input, const BlendParams& params) {
  return laplacian_blend(input, params);
}

Image laplacian_blend_skip(const BlendInput& input, BlendParams params) {
  params.skip_levels = true;
  return laplacian_blend(input, params);
}

BlendInput make_blend_input(const Image& a, const Image& b, const Image& mask, FilterKind filter,
                            Addressing texture_addressing, Addressing mask_addressing) {
  BlendInput input;
  input.textures.push_back(build_mip_chain(a, filter, kAllLevels, texture_addressing));
  input.textures.push_back(build_mip_chain(b, filter, kAllLevels, texture_addressing));
  input.masks.emplace_back(build_mip_chain(mask, filter, kAllLevels, mask_addressing));
  return input;
}

Image clamp_to_unit(Image img) {
  for (float& v : img.samples()) v = std::clamp(v, 0.0f, 1.0f);
  return img;
}

void renormalize_normals(Image& img) {
  if (img.channels() < 3) throw_invalid_input("normal renormalization needs 3+ channels");
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      double v[3];
      double len2 = 0.0;
      for (int c = 0; c < 3; ++c) {
        v[c] = 2.0 * img(x, y, c) - 1.0;
        len2 += v[c] * v[c];
      }
      if (len2 <= 0.0) {
        v[0] = 0.0;
        v[1] = 0.0;
        v[2] = 1.0;
        len2 = 1.0;
      }
      const double inv = 1.0 / std::sqrt(len2);
      for (int c = 0; c < 3; ++c) img(x, y, c) = static_cast<float>(v[c] * inv * 0.5 + 0.5);
    }
  }
}

}  // namespace lapblend
