#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lapblend/image.hpp"
#include "lapblend/pyramid.hpp"

namespace lapblend {

struct Rect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
};

/// Population variance per channel over `region` (whole image by default).
std::vector<double> variance(const Image& img, std::optional<Rect> region = std::nullopt);

/// Population covariance of one channel of two same-shaped images.
double covariance(const Image& a, const Image& b, int channel = 0,
                  std::optional<Rect> region = std::nullopt);

/// Variance of (1 - w) X + w Y from the moments of X and Y.
double predicted_blend_variance(double w, double var_x, double var_y, double cov_xy) noexcept;

struct ProfilePoint {
  double mask = 0.0;       // constant blend weight of the second image
  double measured = 0.0;   // variance of linear_blend(a, b, mask)
  double predicted = 0.0;  // predicted_blend_variance from measured moments
};

/// Measures blend variance at `steps` uniformly spaced mask values in [0, 1].
std::vector<ProfilePoint> blend_variance_profile(const Image& a, const Image& b, int steps,
                                                 int channel = 0);

/// Trapezoid-rule integral of the measured profile over [0, 1].
double integrate_profile(const std::vector<ProfilePoint>& profile);

/// Mean variance across a linear transition: the integral of the measured
/// blend variance over mask values in [0, 1].
double mean_transition_variance(const Image& a, const Image& b, int steps = 65, int channel = 0);

/// Correlation structure of a Laplacian stack (levels followed by the base).
struct LevelCorrelation {
  double source_variance = 0.0;
  std::vector<double> level_variance;
  /// Pearson correlation; nullopt where either image has numerically zero
  /// variance (<= 1e-12).
  std::vector<std::vector<std::optional<double>>> correlation;
  /// |Var(X) - sum of level variances| / Var(X); nullopt for constant sources.
  std::optional<double> variance_sum_residual;
};

LevelCorrelation level_correlation(const LaplacianStack& stack, int channel = 0);

struct StatsReport {
  LevelCorrelation levels;
  std::vector<ProfilePoint> transition_profile;
  double mean_transition_variance = 0.0;
  double blend_source_variance = 0.0;
};

/// Serializes the report as an indented JSON document. Undefined entries are
/// written as null.
std::string to_json_text(const StatsReport& report);

}  // namespace lapblend
