#include "lapblend/analysis.hpp"

#include <cmath>
#include <json.hpp>

#include "lapblend/blend.hpp"
#include "lapblend/error.hpp"

namespace lapblend {
namespace {

constexpr double kZeroVariance = 1e-12;

Rect resolve_region(const Image& img, std::optional<Rect> region) {
  const Rect r = region.value_or(Rect{0, 0, img.width(), img.height()});
  if (r.width <= 0 || r.height <= 0) throw_invalid_input("analysis region is empty");
  if (r.x < 0 || r.y < 0 || r.x + r.width > img.width() || r.y + r.height > img.height()) {
    throw_invalid_input("analysis region exceeds image bounds");
  }
  return r;
}

double channel_mean(const Image& img, int c, const Rect& r) {
  double sum = 0.0;
  for (int y = r.y; y < r.y + r.height; ++y) {
    for (int x = r.x; x < r.x + r.width; ++x) sum += img(x, y, c);
  }
  return sum / (static_cast<double>(r.width) * r.height);
}

double pearson(const Image& a, const Image& b, int channel, double var_a, double var_b) {
  return covariance(a, b, channel) / std::sqrt(var_a * var_b);
}

}  // namespace

std::vector<double> variance(const Image& img, std::optional<Rect> region) {
  if (img.empty()) throw_invalid_input("variance of an empty image");
  const Rect r = resolve_region(img, region);
  std::vector<double> out(static_cast<std::size_t>(img.channels()));
  for (int c = 0; c < img.channels(); ++c) {
    const double mean = channel_mean(img, c, r);
    double acc = 0.0;
    for (int y = r.y; y < r.y + r.height; ++y) {
      for (int x = r.x; x < r.x + r.width; ++x) {
        const double d = img(x, y, c) - mean;
        acc += d * d;
      }
    }
    out[static_cast<std::size_t>(c)] = acc / (static_cast<double>(r.width) * r.height);
  }
  return out;
}

double covariance(const Image& a, const Image& b, int channel, std::optional<Rect> region) {
  if (!a.same_shape(b)) throw_invalid_input("covariance: image shapes differ");
  if (channel < 0 || channel >= a.channels()) throw_invalid_input("covariance: bad channel");
  const Rect r = resolve_region(a, region);
  const double ma = channel_mean(a, channel, r);
  const double mb = channel_mean(b, channel, r);
  double acc = 0.0;
  for (int y = r.y; y < r.y + r.height; ++y) {
    for (int x = r.x; x < r.x + r.width; ++x) {
      acc += (a(x, y, channel) - ma) * (b(x, y, channel) - mb);
    }
  }
  return acc / (static_cast<double>(r.width) * r.height);
}

double predicted_blend_variance(double w, double var_x, double var_y, double cov_xy) noexcept {
  return (1.0 - w) * (1.0 - w) * var_x + w * w * var_y + 2.0 * w * (1.0 - w) * cov_xy;
}

std::vector<ProfilePoint> blend_variance_profile(const Image& a, const Image& b, int steps,
                                                 int channel) {
  if (!a.same_shape(b)) throw_invalid_input("blend_variance_profile: image shapes differ");
  if (steps < 2) throw_invalid_input("blend_variance_profile: need at least two steps");
  const auto ch = static_cast<std::size_t>(channel);
  const double var_a = variance(a).at(ch);
  const double var_b = variance(b).at(ch);
  const double cov = covariance(a, b, channel);

  std::vector<ProfilePoint> profile;
  profile.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double w = static_cast<double>(i) / (steps - 1);
    const Image mask(a.width(), a.height(), 1, static_cast<float>(w));
    const Image blended = linear_blend(a, b, mask);
    profile.push_back({w, variance(blended).at(ch), predicted_blend_variance(w, var_a, var_b, cov)});
  }
  return profile;
}

double integrate_profile(const std::vector<ProfilePoint>& profile) {
  if (profile.size() < 2) throw_invalid_input("integrate_profile: need at least two points");
  double area = 0.0;
  for (std::size_t i = 1; i < profile.size(); ++i) {
    const double h = profile[i].mask - profile[i - 1].mask;
    area += 0.5 * h * (profile[i].measured + profile[i - 1].measured);
  }
  return area;
}

double mean_transition_variance(const Image& a, const Image& b, int steps, int channel) {
  return integrate_profile(blend_variance_profile(a, b, steps, channel));
}

LevelCorrelation level_correlation(const LaplacianStack& stack, int channel) {
  if (stack.laplacians.empty()) throw_invalid_input("level_correlation: stack has no levels");
  const auto ch = static_cast<std::size_t>(channel);
  if (channel < 0 || channel >= stack.base.channels()) {
    throw_invalid_input("level_correlation: bad channel");
  }

  std::vector<const Image*> images;
  for (const auto& lap : stack.laplacians) images.push_back(&lap);
  images.push_back(&stack.base);

  LevelCorrelation out;
  out.source_variance = variance(reconstruct(stack)).at(ch);
  for (const Image* img : images) out.level_variance.push_back(variance(*img).at(ch));

  const std::size_t count = images.size();
  out.correlation.assign(count, std::vector<std::optional<double>>(count));
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i; j < count; ++j) {
      const double vi = out.level_variance[i];
      const double vj = out.level_variance[j];
      if (vi <= kZeroVariance || vj <= kZeroVariance) continue;
      const double r = i == j ? 1.0 : pearson(*images[i], *images[j], channel, vi, vj);
      out.correlation[i][j] = r;
      out.correlation[j][i] = r;
    }
  }

  if (out.source_variance > kZeroVariance) {
    double sum = 0.0;
    for (double v : out.level_variance) sum += v;
    out.variance_sum_residual = std::abs(out.source_variance - sum) / out.source_variance;
  }
  return out;
}

std::string to_json_text(const StatsReport& report) {
  using nlohmann::json;
  auto optional_value = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };

  json matrix = json::array();
  for (const auto& row : report.levels.correlation) {
    json jrow = json::array();
    for (const auto& v : row) jrow.push_back(optional_value(v));
    matrix.push_back(std::move(jrow));
  }
  json profile = json::array();
  for (const auto& p : report.transition_profile) {
    profile.push_back({{"mask", p.mask}, {"measured", p.measured}, {"predicted", p.predicted}});
  }

  json doc;
  doc["source_variance"] = report.levels.source_variance;
  doc["per_level_variance"] = report.levels.level_variance;
  doc["cross_level_correlation"] = std::move(matrix);
  doc["variance_sum_residual"] = optional_value(report.levels.variance_sum_residual);
  doc["transition_profile"] = std::move(profile);
  doc["blend_source_variance"] = report.blend_source_variance;
  doc["mean_transition_variance"] = report.mean_transition_variance;
  doc["mean_transition_ratio"] =
      report.blend_source_variance > 0.0
          ? json(report.mean_transition_variance / report.blend_source_variance)
          : json(nullptr);
  return doc.dump(2) + "\n";
}

}  // namespace lapblend
