#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lapblend/blend.hpp"
#include "lapblend/pyramid.hpp"

namespace lapblend::cli {

enum class Subcommand { Blend, Pyramid, Analyze, Hextile, Compare, Noisegrid };

const char* to_string(Subcommand s) noexcept;

enum class Baseline { Linear, Full };

/// Everything one invocation of the tool needs. Subcommands without file
/// inputs generate seeded procedural ones.
struct RunConfig {
  Subcommand subcommand = Subcommand::Blend;

  std::optional<std::filesystem::path> tex_a;
  std::optional<std::filesystem::path> tex_b;
  std::vector<std::filesystem::path> textures;  // --tex, repeatable
  std::vector<std::filesystem::path> masks;     // --mask, repeatable
  /// --mask-dynamic t,s: the first mask (or a procedural ramp) is the field.
  std::optional<std::pair<double, double>> mask_dynamic;

  BlendParams blend;
  LaplacianMode mode = LaplacianMode::MipApprox;
  Addressing texture_addressing = Addressing::Wrap;
  Addressing mask_addressing = Addressing::Wrap;

  bool srgb = false;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> report;
  std::optional<std::filesystem::path> debug_levels;
  std::optional<double> amplify;
  int bit_depth = 8;
  int threads = 0;
  int size = 0;  // procedural input / hextile output size, 0 = per-subcommand default

  bool linear = false;  // blend: pointwise path
  bool renormalize_normals = false;
  Baseline baseline = Baseline::Linear;

  double tile_scale = 4.0;
  bool rotate = true;
  double transition = 1.0 / 16.0;
};

/// Checks cross-field constraints. Throws lapblend::Error(InvalidInput).
void validate(const RunConfig& config);

/// Executes one run. Progress goes to `log`, errors to `err`. Returns 0 on
/// success and 1 after reporting an error.
int run(const RunConfig& config, std::ostream& log, std::ostream& err);

/// Parses argv-style arguments (without the program name) and runs. Usage
/// errors return 2, help returns 0.
int run_command_line(const std::vector<std::string>& args, std::ostream& log, std::ostream& err);

}  // namespace lapblend::cli
