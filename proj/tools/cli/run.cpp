#include "run.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

#include "lapblend/analysis.hpp"
#include "lapblend/error.hpp"
#include "lapblend/hextile.hpp"
#include "lapblend/io.hpp"
#include "lapblend/mask.hpp"
#include "lapblend/noise.hpp"
#include "lapblend/parallel.hpp"

namespace lapblend::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr int kDefaultSize = 256;
constexpr int kAnalyzeSize = 512;
constexpr int kNoisegridTile = 128;
constexpr int kProfileSteps = 65;

int procedural_size(const RunConfig& config, int fallback) {
  return config.size > 0 ? config.size : fallback;
}

// Seeded stand-ins for missing input files.
Image procedural_texture(int size, std::uint64_t seed, int which) {
  const int cells = std::max(size / (which == 0 ? 4 : 16), 1);
  return value_noise(size, size, 3, cells, seed * 4 + std::uint64_t(which));
}

Image procedural_mask(int size) { return horizontal_ramp(size, size, size / 2.0, size / 16.0); }

Image procedural_field(int size) {
  return horizontal_ramp(size, size, size / 2.0, static_cast<double>(size));
}

Image load_mask(const fs::path& path, int texture_channels) {
  Image m = load_image(path, false);
  if (m.channels() != 1 && m.channels() != texture_channels) m = extract_channel(m, 0);
  return m;
}

std::vector<fs::path> texture_paths(const RunConfig& config) {
  if (!config.textures.empty()) return config.textures;
  std::vector<fs::path> paths;
  if (config.tex_a) paths.push_back(*config.tex_a);
  if (config.tex_b) paths.push_back(*config.tex_b);
  return paths;
}

std::vector<Image> load_textures(const RunConfig& config, std::size_t wanted) {
  std::vector<Image> out;
  for (const auto& p : texture_paths(config)) out.push_back(load_image(p, config.srgb));
  if (out.empty()) {
    const int size = procedural_size(config, kDefaultSize);
    for (std::size_t i = 0; i < wanted; ++i) {
      out.push_back(procedural_texture(size, config.seed, static_cast<int>(i)));
    }
  }
  return out;
}

struct Inputs {
  std::vector<Image> textures;
  BlendInput blend;
};

Inputs blend_inputs(const RunConfig& config) {
  Inputs in;
  in.textures = load_textures(config, 2);
  if (in.textures.size() < 2) throw_invalid_input("blending needs at least two textures");
  const FilterKind filter = config.blend.filter;
  for (const auto& t : in.textures) {
    in.blend.textures.push_back(build_mip_chain(t, filter, kAllLevels, config.texture_addressing));
  }
  const int w = in.textures.front().width();
  const int h = in.textures.front().height();
  const int ch = in.textures.front().channels();

  if (config.mask_dynamic) {
    if (in.textures.size() != 2) throw_invalid_input("--mask-dynamic needs exactly two textures");
    Image field = config.masks.empty() ? procedural_field(w)
                                       : extract_channel(load_image(config.masks.front()), 0);
    if (config.masks.empty() && w != h) throw_invalid_input("procedural field needs square textures");
    in.blend.masks.emplace_back(
        DynamicMask{std::move(field), config.mask_dynamic->first, config.mask_dynamic->second});
    return in;
  }

  if (config.masks.empty()) {
    if (in.textures.size() != 2) throw_invalid_input("give one --mask per texture");
    if (w != h) throw_invalid_input("procedural mask needs square textures");
    in.blend.masks.emplace_back(
        build_mip_chain(procedural_mask(w), filter, kAllLevels, config.mask_addressing));
    return in;
  }
  for (const auto& p : config.masks) {
    in.blend.masks.emplace_back(
        build_mip_chain(load_mask(p, ch), filter, kAllLevels, config.mask_addressing));
  }
  return in;
}

SaveOptions save_options(const RunConfig& config, bool clamp) {
  return SaveOptions{clamp, config.bit_depth, config.srgb};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

void save(const Image& img, const fs::path& path, const SaveOptions& options, std::ostream& log) {
  save_image(img, path, options);
  log << "wrote " << path.string() << '\n';
}

void save_report(const ordered_json& doc, const fs::path& path, std::ostream& log) {
  write_text(path, doc.dump(2));
  log << "wrote " << path.string() << '\n';
}

// Signed values shown as 0.5 + amplify * v.
Image signed_display(const Image& img, double amplify) {
  Image out = img;
  for (float& v : out.samples()) v = static_cast<float>(0.5 + amplify * v);
  return clamp_to_unit(std::move(out));
}

Image with_channels(const Image& img, int channels) {
  return img.channels() == channels ? img : broadcast_channels(img, channels);
}

// Tiles of equal height left to right.
Image hstack(const std::vector<Image>& tiles) {
  int width = 0;
  int channels = 1;
  for (const auto& t : tiles) {
    width += t.width();
    channels = std::max(channels, t.channels());
  }
  Image out(width, tiles.front().height(), channels);
  int x0 = 0;
  for (const auto& tile : tiles) {
    const Image t = with_channels(tile, channels);
    for (int y = 0; y < t.height(); ++y)
      for (int x = 0; x < t.width(); ++x)
        for (int c = 0; c < channels; ++c) out(x0 + x, y, c) = t(x, y, c);
    x0 += t.width();
  }
  return out;
}

Image vstack(const std::vector<Image>& rows) {
  int height = 0;
  int channels = 1;
  for (const auto& r : rows) {
    height += r.height();
    channels = std::max(channels, r.channels());
  }
  Image out(rows.front().width(), height, channels);
  int y0 = 0;
  for (const auto& row : rows) {
    const Image r = with_channels(row, channels);
    for (int y = 0; y < r.height(); ++y)
      for (int x = 0; x < r.width(); ++x)
        for (int c = 0; c < channels; ++c) out(x, y0 + y, c) = r(x, y, c);
    y0 += r.height();
  }
  return out;
}

Image laplacian_sheet(const LaplacianStack& stack, double amplify) {
  std::vector<Image> tiles;
  for (const auto& l : stack.laplacians) tiles.push_back(signed_display(l, amplify));
  tiles.push_back(clamp_to_unit(stack.base));
  return hstack(tiles);
}

ordered_json plan_json(const BlendParams& params) {
  const LevelPlan plan = plan_levels(params);
  ordered_json terms = ordered_json::array();
  for (const auto& t : plan.laplacians) {
    terms.push_back({{"fine", t.fine}, {"coarse", t.coarse}, {"mask", t.mask}, {"weight", t.weight}});
  }
  return {{"levels", params.num_levels},
          {"filter", std::string(to_string(params.filter))},
          {"skip", params.skip_levels},
          {"lod", params.lod},
          {"mask_bias", params.mask_level_bias},
          {"output_level", plan.output_level},
          {"laplacian_terms", std::move(terms)},
          {"gaussian_level", plan.gaussian},
          {"sample_count", sample_count(params)}};
}

Image apply_blend(const RunConfig& config, const Inputs& in) {
  if (!config.linear) return laplacian_blend(in.blend, config.blend);
  if (in.textures.size() != 2 || in.blend.masks.size() != 1) {
    throw_invalid_input("--linear blends exactly two textures with one mask");
  }
  if (config.blend.lod != 0.0) throw_invalid_input("--linear does not support --lod");
  const auto& layer = in.blend.masks.front();
  const Image m = std::holds_alternative<MipChain>(layer)
                      ? std::get<MipChain>(layer).level(0)
                      : dynamic_mask_level(std::get<DynamicMask>(layer), 0);
  Image out = linear_blend(in.textures[0], in.textures[1], m);
  return config.blend.clamp_output ? clamp_to_unit(std::move(out)) : out;
}

void run_blend(const RunConfig& config, std::ostream& log) {
  const Inputs in = blend_inputs(config);
  Image out = apply_blend(config, in);
  if (config.renormalize_normals) renormalize_normals(out);
  save(out, *config.out, save_options(config, config.blend.clamp_output), log);

  if (config.debug_levels) {
    const int n = config.blend.num_levels;
    const auto stack = build_laplacian_stack(
        build_mip_chain(out, config.blend.filter, n + 1, config.texture_addressing), n, config.mode);
    save(laplacian_sheet(stack, config.amplify.value_or(1.0)), *config.debug_levels,
         save_options(config, true), log);
  }
  if (config.report) {
    ordered_json doc{{"subcommand", "blend"},
                     {"width", out.width()},
                     {"height", out.height()},
                     {"textures", in.textures.size()},
                     {"linear", config.linear}};
    if (!config.linear) doc["plan"] = plan_json(config.blend);
    save_report(doc, *config.report, log);
  }
}

void run_pyramid(const RunConfig& config, std::ostream& log) {
  const Image tex = load_textures(config, 1).front();
  const int n = config.blend.num_levels;
  const MipChain chain = build_mip_chain(tex, config.blend.filter, n + 1, config.texture_addressing);
  const auto stack = build_laplacian_stack(chain, n, config.mode);

  std::vector<Image> gaussians;
  for (int k = 0; k <= n; ++k) {
    gaussians.push_back(clamp_to_unit(expand_iterated(chain.level(k), k, config.texture_addressing)));
  }
  const Image sheet = vstack({hstack(gaussians), laplacian_sheet(stack, config.amplify.value_or(1.0))});
  save(sheet, *config.out, save_options(config, true), log);

  if (config.report) {
    const auto lc = level_correlation(stack);
    ordered_json doc{{"subcommand", "pyramid"},
                     {"levels", n},
                     {"filter", std::string(to_string(config.blend.filter))},
                     {"mode", std::string(to_string(config.mode))},
                     {"total_texels", build_mip_chain(tex, config.blend.filter).total_texels()},
                     {"base_texels", tex.width() * tex.height()},
                     {"source_variance", lc.source_variance},
                     {"per_level_variance", lc.level_variance}};
    save_report(doc, *config.report, log);
  }
}

void run_analyze(const RunConfig& config, std::ostream& log) {
  Image a;
  Image b;
  const auto paths = texture_paths(config);
  if (paths.empty()) {
    const int size = procedural_size(config, kAnalyzeSize);
    a = white_noise(size, size, 1, config.seed * 2 + 1);
    b = white_noise(size, size, 1, config.seed * 2 + 2);
  } else {
    if (paths.size() != 2) throw_invalid_input("analyze takes two textures");
    a = load_image(paths[0], config.srgb);
    b = load_image(paths[1], config.srgb);
  }
  const int n = config.blend.num_levels;
  StatsReport report;
  report.levels = level_correlation(build_laplacian_stack(
      build_mip_chain(a, config.blend.filter, n + 1, config.texture_addressing), n, config.mode));
  report.transition_profile = blend_variance_profile(a, b, kProfileSteps);
  report.mean_transition_variance = integrate_profile(report.transition_profile);
  report.blend_source_variance = variance(a)[0];

  const std::string text = to_json_text(report);
  for (const auto& path : {config.out, config.report}) {
    if (!path) continue;
    write_text(*path, text);
    log << "wrote " << path->string() << '\n';
  }
}

void run_hextile(const RunConfig& config, std::ostream& log) {
  const auto paths = texture_paths(config);
  if (paths.size() > 1) throw_invalid_input("hextile takes one texture");
  Image tex = paths.empty() ? procedural_texture(kDefaultSize, config.seed, 0)
                            : load_image(paths.front(), config.srgb);
  const int size = config.size > 0 ? config.size : 2 * tex.width();
  HexTileParams params;
  params.tile_scale = config.tile_scale;
  params.rotation_jitter = config.rotate;
  params.seed = config.seed;
  params.transition = config.transition;
  params.blend = config.blend;
  const MipChain chain =
      build_mip_chain(tex, config.blend.filter, kAllLevels, config.texture_addressing);
  const Image out = hextile_render(chain, size, size, params);
  save(out, *config.out, save_options(config, config.blend.clamp_output), log);
}

void run_compare(const RunConfig& config, std::ostream& log) {
  const Inputs in = blend_inputs(config);
  BlendParams base_params = config.blend;
  base_params.skip_levels = false;
  if (config.baseline == Baseline::Linear) base_params.num_levels = 0;
  const Image baseline = laplacian_blend(in.blend, base_params);
  const Image candidate = laplacian_blend(in.blend, config.blend);
  const double amplify = config.amplify.value_or(5.0);

  Image diff(candidate.width(), candidate.height(), candidate.channels());
  double sum = 0.0;
  float worst = 0.0f;
  for (std::size_t i = 0; i < diff.samples().size(); ++i) {
    const float d = std::abs(candidate.samples()[i] - baseline.samples()[i]);
    sum += d;
    worst = std::max(worst, d);
    diff.samples()[i] = static_cast<float>(amplify * d);
  }
  const Image sheet = hstack({clamp_to_unit(baseline), clamp_to_unit(candidate), clamp_to_unit(diff)});
  save(sheet, *config.out, save_options(config, true), log);

  if (config.report) {
    ordered_json doc{{"subcommand", "compare"},
                     {"baseline", config.baseline == Baseline::Linear ? "linear" : "full"},
                     {"amplify", amplify},
                     {"mean_abs_difference", sum / static_cast<double>(diff.samples().size())},
                     {"max_abs_difference", worst},
                     {"plan", plan_json(config.blend)}};
    save_report(doc, *config.report, log);
  }
}

// Rows: noise octaves from coarse to fine. Columns: linear blends with
// growing ramp widths, then the Laplacian blend across a hard step.
void run_noisegrid(const RunConfig& config, std::ostream& log) {
  const int size = procedural_size(config, kNoisegridTile);
  if (size < 16) throw_invalid_input("noisegrid tiles must be at least 16 texels");
  std::vector<int> cells;
  for (int c = 4; c <= size; c *= 4) cells.push_back(c);
  const std::vector<double> radii{1.0, size / 8.0, size / 2.0};

  const Image step = horizontal_ramp(size, size, size / 2.0, 1.0);
  const MipChain step_chain =
      build_mip_chain(step, config.blend.filter, kAllLevels, Addressing::Clamp);
  const Rect band{size / 2 - size / 8, 0, size / 4, size};

  std::vector<Image> rows;
  ordered_json tiles = ordered_json::array();
  for (std::size_t r = 0; r < cells.size(); ++r) {
    const Image a = value_noise(size, size, 1, cells[r], config.seed * 64 + 2 * r);
    const Image b = value_noise(size, size, 1, cells[r], config.seed * 64 + 2 * r + 1);
    const double source_var = 0.5 * (variance(a)[0] + variance(b)[0]);
    std::vector<Image> row;
    auto record = [&](const Image& img, const std::string& kind, double radius) {
      tiles.push_back({{"cells", cells[r]},
                       {"kind", kind},
                       {"radius", radius},
                       {"band_variance_ratio", variance(img, band)[0] / source_var}});
      row.push_back(img);
    };
    for (double radius : radii) {
      record(clamp_to_unit(linear_blend(a, b, horizontal_ramp(size, size, size / 2.0, radius))),
             "linear", radius);
    }
    BlendInput input;
    input.textures.push_back(build_mip_chain(a, config.blend.filter, kAllLevels, config.texture_addressing));
    input.textures.push_back(build_mip_chain(b, config.blend.filter, kAllLevels, config.texture_addressing));
    input.masks.emplace_back(step_chain);
    record(laplacian_blend(input, config.blend), "laplacian", 1.0);
    rows.push_back(hstack(row));
  }
  save(vstack(rows), *config.out, save_options(config, true), log);
  if (config.report) {
    save_report({{"subcommand", "noisegrid"}, {"tile_size", size}, {"tiles", std::move(tiles)}},
                *config.report, log);
  }
}

bool file_based(Subcommand s) { return s != Subcommand::Noisegrid; }

std::pair<double, double> parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  auto number = [&](std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw_invalid_input("--mask-dynamic expects t,s but got '" + text + "'");
    }
    return v;
  };
  if (comma == std::string::npos) throw_invalid_input("--mask-dynamic expects t,s");
  const std::string_view all(text);
  return {number(all.substr(0, comma)), number(all.substr(comma + 1))};
}

}  // namespace

const char* to_string(Subcommand s) noexcept {
  switch (s) {
    case Subcommand::Blend: return "blend";
    case Subcommand::Pyramid: return "pyramid";
    case Subcommand::Analyze: return "analyze";
    case Subcommand::Hextile: return "hextile";
    case Subcommand::Compare: return "compare";
    case Subcommand::Noisegrid: return "noisegrid";
  }
  return "unknown";
}

void validate(const RunConfig& c) {
  auto empty_path = [](const std::optional<fs::path>& p) { return p && p->empty(); };
  if (empty_path(c.tex_a) || empty_path(c.tex_b) || empty_path(c.out) || empty_path(c.report) ||
      empty_path(c.debug_levels)) {
    throw_invalid_input("paths must be non-empty");
  }
  for (const auto& p : c.textures) if (p.empty()) throw_invalid_input("paths must be non-empty");
  for (const auto& p : c.masks) if (p.empty()) throw_invalid_input("paths must be non-empty");
  if (!c.textures.empty() && (c.tex_a || c.tex_b)) {
    throw_invalid_input("use either --tex or --tex-a/--tex-b");
  }
  if (c.tex_b && !c.tex_a) throw_invalid_input("--tex-b needs --tex-a");
  if (c.subcommand == Subcommand::Analyze) {
    if (!c.report && !c.out) throw_invalid_input("analyze needs --report or --out");
  } else if (!c.out) {
    throw_invalid_input(std::string(to_string(c.subcommand)) + " needs --out");
  }
  if (c.blend.num_levels < 0) throw_invalid_input("--levels must be non-negative");
  if (!(c.blend.lod >= 0.0)) throw_invalid_input("--lod must be non-negative");
  if (c.blend.mask_level_bias < 0) throw_invalid_input("--mask-bias must be non-negative");
  if (c.bit_depth != 8 && c.bit_depth != 16) throw_invalid_input("--bit-depth must be 8 or 16");
  if (c.amplify && !(*c.amplify > 0.0)) throw_invalid_input("--amplify must be positive");
  if (c.threads < 0) throw_invalid_input("--threads must be non-negative");
  if (c.size < 0 || (c.size > 0 && !is_power_of_two(c.size))) {
    throw_invalid_input("--size must be a power of two");
  }
  if (c.mask_dynamic && !(c.mask_dynamic->second > 0.0)) {
    throw_invalid_input("--mask-dynamic scale must be positive");
  }
  if (c.linear && c.subcommand != Subcommand::Blend) throw_invalid_input("--linear is a blend flag");
  if (!file_based(c.subcommand) && (c.tex_a || !c.textures.empty() || !c.masks.empty())) {
    throw_invalid_input("noisegrid takes no input files");
  }
}

int run(const RunConfig& config, std::ostream& log, std::ostream& err) {
  try {
    validate(config);
    set_thread_count(config.threads);
    switch (config.subcommand) {
      case Subcommand::Blend: run_blend(config, log); break;
      case Subcommand::Pyramid: run_pyramid(config, log); break;
      case Subcommand::Analyze: run_analyze(config, log); break;
      case Subcommand::Hextile: run_hextile(config, log); break;
      case Subcommand::Compare: run_compare(config, log); break;
      case Subcommand::Noisegrid: run_noisegrid(config, log); break;
    }
    return 0;
  } catch (const Error& e) {
    err << "error [" << lapblend::to_string(e.code()) << "]: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return 1;
}

int run_command_line(const std::vector<std::string>& args, std::ostream& log, std::ostream& err) {
  CLI::App app{"Laplacian texture blending", "lapblend"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string filter = "box";
  std::string mode = "approx";
  std::string addressing = "wrap";
  std::string mask_addressing = "wrap";
  std::string baseline = "linear";
  std::string mask_dynamic;
  bool no_clamp = false;
  bool skip = false;
  const std::vector<std::string> filters{"box", "lanczos2"};
  const std::vector<std::string> modes{"exact", "approx", "mip-approx"};
  const std::vector<std::string> addressings{"wrap", "clamp"};

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Output image (or report for analyze)");
    sub->add_option("--report", cfg.report, "JSON report path");
    sub->add_option("--seed", cfg.seed, "Seed for procedural inputs");
    sub->add_option("--threads", cfg.threads, "Worker threads, 0 = all cores");
    sub->add_option("--size", cfg.size, "Procedural input size (hextile: output size)");
    sub->add_option("--bit-depth", cfg.bit_depth, "PNG output bit depth (8 or 16)");
    sub->add_flag("--srgb", cfg.srgb, "Decode sRGB input textures, encode sRGB PNG output");
    sub->add_option("--levels", cfg.blend.num_levels, "Laplacian levels");
    sub->add_option("--filter", filter, "Mip filter")->check(CLI::IsMember(filters));
    sub->add_option("--tex-a", cfg.tex_a, "First texture");
    sub->add_option("--tex-b", cfg.tex_b, "Second texture");
    sub->add_option("--tex", cfg.textures, "Texture (repeatable)")->take_all();
    sub->add_option("--addressing", addressing, "Texture addressing")
        ->check(CLI::IsMember(addressings));
  };
  auto blending = [&](CLI::App* sub) {
    sub->add_option("--mask", cfg.masks, "Mask image (repeatable: one per texture)")->take_all();
    sub->add_option("--mask-dynamic", mask_dynamic, "Treat the mask as a field: threshold,scale");
    sub->add_flag("--skip", skip, "Skip every other mip level");
    sub->add_option("--lod", cfg.blend.lod, "Minification level");
    sub->add_option("--mask-bias", cfg.blend.mask_level_bias, "Mask level bias");
    sub->add_flag("--no-clamp", no_clamp, "Do not clamp the result to [0, 1]");
    sub->add_option("--mask-addressing", mask_addressing, "Mask addressing")
        ->check(CLI::IsMember(addressings));
  };

  struct Entry {
    Subcommand kind;
    CLI::App* app;
  };
  std::vector<Entry> subs;
  auto* blend = app.add_subcommand("blend", "Blend textures");
  common(blend);
  blending(blend);
  blend->add_flag("--linear", cfg.linear, "Pointwise linear blend");
  blend->add_flag("--renormalize-normals", cfg.renormalize_normals, "Renormalize as a normal map");
  blend->add_option("--debug-levels", cfg.debug_levels, "Contact sheet of the output's levels");
  blend->add_option("--amplify", cfg.amplify, "Gain for signed level display");
  blend->add_option("--mode", mode, "Laplacian mode for --debug-levels")->check(CLI::IsMember(modes));
  subs.push_back({Subcommand::Blend, blend});

  auto* pyramid = app.add_subcommand("pyramid", "Mip and Laplacian contact sheet");
  common(pyramid);
  pyramid->add_option("--mode", mode, "Laplacian mode")->check(CLI::IsMember(modes));
  pyramid->add_option("--amplify", cfg.amplify, "Gain for signed level display");
  subs.push_back({Subcommand::Pyramid, pyramid});

  auto* analyze = app.add_subcommand("analyze", "Variance and level correlation report");
  common(analyze);
  analyze->add_option("--mode", mode, "Laplacian mode")->check(CLI::IsMember(modes));
  subs.push_back({Subcommand::Analyze, analyze});

  auto* hextile = app.add_subcommand("hextile", "Hexagonal tiling with Laplacian blending");
  common(hextile);
  hextile->add_flag("--skip", skip, "Skip every other mip level");
  hextile->add_option("--mask-bias", cfg.blend.mask_level_bias, "Mask level bias");
  hextile->add_flag("--no-clamp", no_clamp, "Do not clamp the result to [0, 1]");
  hextile->add_option("--tile-scale", cfg.tile_scale, "Hex cells per texture width");
  hextile->add_flag("--rotate,!--no-rotate", cfg.rotate, "Random 60 degree tile rotations");
  hextile->add_option("--transition", cfg.transition, "Level-0 hex transition width");
  subs.push_back({Subcommand::Hextile, hextile});

  auto* compare = app.add_subcommand("compare", "Baseline, candidate and amplified difference");
  common(compare);
  blending(compare);
  compare->add_option("--amplify", cfg.amplify, "Difference gain (default 5)");
  compare->add_option("--baseline", baseline, "linear or full")
      ->check(CLI::IsMember(std::vector<std::string>{"linear", "full"}));
  subs.push_back({Subcommand::Compare, compare});

  auto* noisegrid = app.add_subcommand("noisegrid", "Noise octave by blend radius grid");
  common(noisegrid);
  subs.push_back({Subcommand::Noisegrid, noisegrid});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, log, err);
  }

  for (const auto& s : subs) {
    if (s.app->parsed()) cfg.subcommand = s.kind;
  }
  cfg.blend.filter = *parse_filter(filter);
  cfg.mode = *parse_laplacian_mode(mode);
  cfg.texture_addressing = addressing == "clamp" ? Addressing::Clamp : Addressing::Wrap;
  cfg.mask_addressing = mask_addressing == "clamp" ? Addressing::Clamp : Addressing::Wrap;
  cfg.baseline = baseline == "full" ? Baseline::Full : Baseline::Linear;
  cfg.blend.skip_levels = skip;
  cfg.blend.clamp_output = !no_clamp;
  if (!mask_dynamic.empty()) {
    try {
      cfg.mask_dynamic = parse_pair(mask_dynamic);
    } catch (const Error& e) {
      err << "error [" << lapblend::to_string(e.code()) << "]: " << e.what() << '\n';
      return 2;
    }
  }
  return run(cfg, log, err);
}

}  // namespace lapblend::cli
