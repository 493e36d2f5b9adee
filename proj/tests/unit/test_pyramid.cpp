#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "lapblend/analysis.hpp"
#include "lapblend/parallel.hpp"
#include "lapblend/pyramid.hpp"
#include "oracles/oracles.hpp"

using namespace lapblend;

namespace {

Image checkerboard(int n) {
  Image img(n, n, 1);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) img(x, y) = float((x + y) % 2);
  return img;
}

double channel_mean(const Image& img, int c) {
  double s = 0.0;
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) s += img(x, y, c);
  return s / double(img.texel_count());
}

}  // namespace

TEST_CASE("lanczos2 taps") {
  // sinc(t) sinc(t/2) at |t| = 0.5 and 1.5, normalized: exactly 9/16 and -1/16.
  const auto taps = lanczos2_taps();
  CHECK(taps[0] == doctest::Approx(-0.0625).epsilon(1e-7));
  CHECK(taps[1] == doctest::Approx(0.5625).epsilon(1e-7));
  CHECK(taps[2] == doctest::Approx(0.5625).epsilon(1e-7));
  CHECK(taps[3] == doctest::Approx(-0.0625).epsilon(1e-7));
  CHECK(lanczos2_kernel(0.0) == 1.0);
  CHECK(lanczos2_kernel(2.0) == 0.0);
  CHECK(lanczos2_kernel(-2.5) == 0.0);
  CHECK(lanczos2_kernel(1.0) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("downsample") {
  SUBCASE("constant 2x2 box") {
    const Image out = downsample(Image(2, 2, 1, 0.5f), FilterKind::Box);
    REQUIRE(out.width() == 1);
    REQUIRE(out.height() == 1);
    CHECK(out(0, 0) == 0.5f);
  }
  SUBCASE("checkerboard box averages to one half") {
    const Image out = downsample(checkerboard(4), FilterKind::Box);
    CHECK(out.width() == 2);
    for (float v : out.samples()) CHECK(v == 0.5f);
  }
  SUBCASE("lanczos2 impulse response with wrap addressing") {
    Image impulse(4, 4, 1);
    impulse(1, 1) = 1.0f;
    const Image out = downsample(impulse, FilterKind::Lanczos2);
    CHECK(out(0, 0) == doctest::Approx(81.0 / 256.0).epsilon(1e-6));
    CHECK(out(1, 0) == doctest::Approx(-9.0 / 256.0).epsilon(1e-6));
    CHECK(out(0, 1) == doctest::Approx(-9.0 / 256.0).epsilon(1e-6));
    CHECK(out(1, 1) == doctest::Approx(1.0 / 256.0).epsilon(1e-6));
  }
  SUBCASE("8x8 noise lanczos2 matches direct 2D convolution") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const Image img = testing::random_image(8, 8, 3, seed);
      const Image out = downsample(img, FilterKind::Lanczos2);
      CHECK(oracle::max_abs_diff(oracle::downsample(oracle::from_image(img), true), out) <= 1e-6);
      const Image clamped = downsample(img, FilterKind::Lanczos2, Addressing::Clamp);
      CHECK(oracle::max_abs_diff(oracle::downsample(oracle::from_image(img), true, false),
                                 clamped) <= 1e-6);
    }
  }
  SUBCASE("errors") {
    CHECK(testing::error_code_of([] { downsample(Image(), FilterKind::Box); }) ==
          ErrorCode::InvalidInput);
    CHECK(testing::error_code_of([] { downsample(Image(3, 4, 1), FilterKind::Box); }) ==
          ErrorCode::InvalidInput);
  }
}

TEST_CASE("upsample_bilinear") {
  const Image img = testing::random_image(4, 2, 2, 11);
  CHECK(upsample_bilinear(img, 1) == img);

  const Image flat = upsample_bilinear(Image(1, 1, 1, 0.7f), 4);
  CHECK(flat.width() == 4);
  for (float v : flat.samples()) CHECK(v == 0.7f);

  Image row(2, 1, 1);
  row(1, 0) = 1.0f;
  const Image up = upsample_bilinear(row, 2);
  CHECK(up(0, 0) == 0.25f);
  CHECK(up(1, 0) == 0.25f);
  CHECK(up(2, 0) == 0.75f);
  CHECK(up(3, 0) == 0.75f);

  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const Image src = testing::random_image(2, 2, 3, seed);
    for (int factor : {2, 4, 8}) {
      const auto g = oracle::from_image(src);
      CHECK(oracle::max_abs_diff(oracle::upsample(g, factor), upsample_bilinear(src, factor)) <=
            1e-6);
      CHECK(oracle::max_abs_diff(oracle::upsample(g, factor, false),
                                 upsample_bilinear(src, factor, Addressing::Clamp)) <= 1e-6);
    }
  }

  CHECK(testing::error_code_of([&] { upsample_bilinear(img, 3); }) == ErrorCode::InvalidInput);
  CHECK(testing::error_code_of([&] { upsample_bilinear(img, 0); }) == ErrorCode::InvalidInput);
}

TEST_CASE("build_mip_chain") {
  const Image img(256, 256, 1, 0.3f);
  const MipChain full = build_mip_chain(img, FilterKind::Box, 9);
  CHECK(full.level_count() == 9);
  CHECK(full.level(8).width() == 1);

  const MipChain truncated = build_mip_chain(img, FilterKind::Box, 4);
  REQUIRE(truncated.level_count() == 4);
  for (int k = 0; k < 4; ++k) CHECK(truncated.level(k).width() == 256 >> k);

  // 65536 * (1 + 1/4 + ... + 1/4^8) = 87381 < ceil(4/3 * 65536).
  const MipChain all = build_mip_chain(img, FilterKind::Lanczos2);
  CHECK(all.level_count() == 9);
  CHECK(all.total_texels() == 87381u);
  CHECK(double(all.total_texels()) < 4.0 / 3.0 * 65536.0);

  const MipChain wide = build_mip_chain(Image(64, 16, 1), FilterKind::Box);
  CHECK(wide.level_count() == 5);
  CHECK(wide.levels.back().height() == 1);
  CHECK(wide.levels.back().width() == 4);

  CHECK(testing::error_code_of([] { build_mip_chain(Image(96, 64, 1), FilterKind::Box); }) ==
        ErrorCode::InvalidInput);
  CHECK(testing::error_code_of([&] { build_mip_chain(img, FilterKind::Box, 0); }) ==
        ErrorCode::InvalidInput);
  CHECK(testing::error_code_of([&] { full.level(9); }) == ErrorCode::InvalidInput);
}

TEST_CASE("box mip levels are block averages") {
  const Image img = testing::random_image(32, 32, 2, 5);
  const MipChain chain = build_mip_chain(img, FilterKind::Box);
  for (int k = 0; k < chain.level_count(); ++k) {
    CHECK(oracle::max_abs_diff(oracle::block_average(oracle::from_image(img), k), chain.level(k)) <=
          1e-6);
  }
}

TEST_CASE("exact_laplacian_level") {
  const Image box = exact_laplacian_level(Image(8, 8, 2, 0.4f), FilterKind::Box);
  for (float v : box.samples()) {
    CHECK(v == 0.0f);
  }
  const Image lanczos = exact_laplacian_level(Image(8, 8, 2, 0.4f), FilterKind::Lanczos2);
  for (float v : lanczos.samples()) {
    CHECK(std::abs(v) <= 1e-6f);
  }

  const Image board = checkerboard(4);
  const Image lap = exact_laplacian_level(board, FilterKind::Box);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) CHECK(lap(x, y) == board(x, y) - 0.5f);

  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const Image img = testing::random_image(8, 8, 1, seed);
    const auto g = oracle::from_image(img);
    const auto expected = oracle::sub(g, oracle::upsample(oracle::downsample(g, true), 2));
    CHECK(oracle::max_abs_diff(expected, exact_laplacian_level(img, FilterKind::Lanczos2)) <= 1e-6);
  }
}

TEST_CASE("build_laplacian_stack and reconstruct") {
  const Image img = testing::random_image(64, 64, 3, 21);

  SUBCASE("degenerate stack") {
    const auto stack = build_laplacian_stack(build_mip_chain(img, FilterKind::Box), 0,
                                             LaplacianMode::MipApprox);
    CHECK(stack.laplacians.empty());
    CHECK(stack.base == img);
  }
  SUBCASE("constant chain") {
    for (auto mode : {LaplacianMode::Exact, LaplacianMode::MipApprox}) {
      const auto stack =
          build_laplacian_stack(build_mip_chain(Image(32, 32, 1, 0.6f), FilterKind::Box), 3, mode);
      for (const auto& lap : stack.laplacians)
        for (float v : lap.samples()) CHECK(v == 0.0f);
      for (float v : stack.base.samples()) CHECK(v == 0.6f);
    }
  }
  SUBCASE("telescoping sum") {
    const auto stack = build_laplacian_stack(build_mip_chain(img, FilterKind::Box), 4,
                                             LaplacianMode::MipApprox);
    CHECK(stack.laplacians.size() == 4);
    CHECK(max_abs_diff(reconstruct(stack), img) <= 1e-5f);
  }
  SUBCASE("exact mode levels are expanded per-level laplacians") {
    const MipChain chain = build_mip_chain(img, FilterKind::Lanczos2);
    const auto stack = build_laplacian_stack(chain, 3, LaplacianMode::Exact);
    const auto level2 = exact_laplacian_level(chain.level(2), FilterKind::Lanczos2);
    auto expected = oracle::from_image(level2);
    expected = oracle::upsample(oracle::upsample(expected, 2), 2);
    CHECK(oracle::max_abs_diff(expected, stack.laplacians[2]) <= 1e-5);
  }
  SUBCASE("mip approx levels are differences of magnified mip levels") {
    const MipChain chain = build_mip_chain(img, FilterKind::Box);
    const auto stack = build_laplacian_stack(chain, 3, LaplacianMode::MipApprox);
    const auto g1 = oracle::upsample(oracle::from_image(chain.level(1)), 2);
    const auto g2 = oracle::upsample(oracle::from_image(chain.level(2)), 4);
    CHECK(oracle::max_abs_diff(oracle::sub(g1, g2), stack.laplacians[1]) <= 1e-6);
  }
  SUBCASE("errors") {
    const MipChain chain = build_mip_chain(Image(8, 8, 1), FilterKind::Box);
    CHECK(testing::error_code_of([&] {
            build_laplacian_stack(chain, 4, LaplacianMode::Exact);
          }) == ErrorCode::InvalidInput);
    LaplacianStack bad;
    bad.base = Image(4, 4, 1);
    bad.laplacians.push_back(Image(2, 2, 1));
    CHECK(testing::error_code_of([&] { reconstruct(bad); }) == ErrorCode::InvalidInput);
    CHECK(testing::error_code_of([] { reconstruct(LaplacianStack{}); }) == ErrorCode::InvalidInput);
  }
  SUBCASE("hand-built stack over a ramp") {
    Image ramp(4, 4, 1);
    for (int y = 0; y < 4; ++y)
      for (int x = 0; x < 4; ++x) ramp(x, y) = 0.1f * float(x + 4 * y);
    LaplacianStack stack;
    stack.laplacians = {ramp, scaled(ramp, -0.5f)};
    stack.base = Image(4, 4, 1, 0.25f);
    const Image sum = reconstruct(stack);
    for (int y = 0; y < 4; ++y)
      for (int x = 0; x < 4; ++x) {
        const double expected = 0.1 * (x + 4 * y) * 0.5 + 0.25;
        CHECK(sum(x, y) == doctest::Approx(expected).epsilon(1e-6));
      }
    LaplacianStack zeros;
    zeros.laplacians = {Image(4, 4, 1), Image(4, 4, 1)};
    zeros.base = ramp;
    CHECK(reconstruct(zeros) == ramp);
  }
}

TEST_CASE("property: reconstruction identity") {
  lapblend::NoiseSource gen(2024);
  for (int trial = 0; trial < 24; ++trial) {
    const int size = 8 << int(gen.uniform() * 4);  // 8..64
    const int channels = 1 + int(gen.uniform() * 4);
    const Image img = testing::random_image(size, size, channels, 100 + trial);
    for (auto filter : {FilterKind::Box, FilterKind::Lanczos2}) {
      const MipChain chain = build_mip_chain(img, filter);
      for (auto mode : {LaplacianMode::Exact, LaplacianMode::MipApprox}) {
        for (int n = 0; n < chain.level_count(); ++n) {
          const auto stack = build_laplacian_stack(chain, n, mode);
          CHECK(max_abs_diff(reconstruct(stack), img) <= 1e-5f);
        }
      }
    }
  }
}

TEST_CASE("property: constant images give zero laplacians for both filters") {
  for (float value : {0.0f, 0.37f, 1.0f}) {
    for (auto filter : {FilterKind::Box, FilterKind::Lanczos2}) {
      const MipChain chain = build_mip_chain(Image(32, 32, 2, value), filter);
      for (auto mode : {LaplacianMode::Exact, LaplacianMode::MipApprox}) {
        const auto stack = build_laplacian_stack(chain, 4, mode);
        for (const auto& lap : stack.laplacians)
          for (float v : lap.samples()) CHECK(std::abs(v) <= 1e-6f);
      }
    }
  }
}

TEST_CASE("property: box laplacians preserve DC under wrap addressing") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Image img = testing::random_image(64, 64, 2, seed);
    const MipChain chain = build_mip_chain(img, FilterKind::Box);
    for (auto mode : {LaplacianMode::Exact, LaplacianMode::MipApprox}) {
      const auto stack = build_laplacian_stack(chain, 5, mode);
      for (const auto& lap : stack.laplacians)
        for (int c = 0; c < 2; ++c) CHECK(std::abs(channel_mean(lap, c)) <= 1e-6);
    }
  }
}

TEST_CASE("property: filters are normalized") {
  for (auto filter : {FilterKind::Box, FilterKind::Lanczos2}) {
    for (auto addr : {Addressing::Wrap, Addressing::Clamp}) {
      const Image out = downsample(Image(16, 16, 1, 1.0f), filter, addr);
      for (float v : out.samples()) CHECK(std::abs(v - 1.0f) <= 1e-7f);
    }
  }
}

TEST_CASE("property: pyramid operators are linear") {
  lapblend::NoiseSource gen(77);
  for (int trial = 0; trial < 8; ++trial) {
    const Image x = testing::random_image(32, 32, 2, 300 + trial);
    const Image y = testing::random_image(32, 32, 2, 400 + trial);
    const auto a = float(gen.uniform(-2.0, 2.0));
    const auto b = float(gen.uniform(-2.0, 2.0));
    const Image combo = add(scaled(x, a), scaled(y, b));
    auto lin = [&](auto&& op) {
      return max_abs_diff(op(combo), add(scaled(op(x), a), scaled(op(y), b)));
    };
    for (auto filter : {FilterKind::Box, FilterKind::Lanczos2}) {
      CHECK(lin([&](const Image& i) { return downsample(i, filter); }) <= 1e-5f);
      CHECK(lin([&](const Image& i) { return exact_laplacian_level(i, filter); }) <= 1e-5f);
      for (auto mode : {LaplacianMode::Exact, LaplacianMode::MipApprox}) {
        const auto stack_of = [&](const Image& i) {
          return build_laplacian_stack(build_mip_chain(i, filter), 3, mode);
        };
        const auto sc = stack_of(combo);
        const auto sx = stack_of(x);
        const auto sy = stack_of(y);
        for (std::size_t k = 0; k < 3; ++k) {
          CHECK(max_abs_diff(sc.laplacians[k], add(scaled(sx.laplacians[k], a),
                                                   scaled(sy.laplacians[k], b))) <= 1e-5f);
        }
      }
    }
    CHECK(lin([&](const Image& i) { return upsample_bilinear(i, 4); }) <= 1e-5f);
  }
}

TEST_CASE("results do not depend on the thread count") {
  const Image img = testing::random_image(128, 128, 3, 9);
  set_thread_count(1);
  const auto one = build_laplacian_stack(build_mip_chain(img, FilterKind::Lanczos2), 5,
                                         LaplacianMode::Exact);
  set_thread_count(4);
  const auto four = build_laplacian_stack(build_mip_chain(img, FilterKind::Lanczos2), 5,
                                          LaplacianMode::Exact);
  set_thread_count(0);
  for (std::size_t k = 0; k < one.laplacians.size(); ++k) {
    CHECK(one.laplacians[k] == four.laplacians[k]);
  }
  CHECK(one.base == four.base);
}

TEST_CASE("Lanczos2 Laplacian levels carry more energy than box levels") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const Image img = testing::random_image(256, 256, 1, 900 + seed);
    for (auto mode : {LaplacianMode::Exact, LaplacianMode::MipApprox}) {
      const auto box = build_laplacian_stack(build_mip_chain(img, FilterKind::Box), 4, mode);
      const auto lan = build_laplacian_stack(build_mip_chain(img, FilterKind::Lanczos2), 4, mode);
      CHECK(variance(lan.base)[0] > variance(box.base)[0]);
      for (int k = 0; k < 4; ++k) {
        const double vb = variance(box.laplacians[std::size_t(k)])[0];
        const double vl = variance(lan.laplacians[std::size_t(k)])[0];
        // Level 0 is dominated by the finest octave either way.
        if (k == 0) {
          CHECK(vl == doctest::Approx(vb).epsilon(0.02));
        } else {
          CHECK(vl > 1.4 * vb);
        }
      }
    }
  }
}
