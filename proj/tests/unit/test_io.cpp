#include <doctest.h>

#include <cmath>
#include <fstream>

#include "helpers.hpp"
#include "lapblend/io.hpp"

using namespace lapblend;

TEST_CASE("format_from_extension") {
  CHECK(format_from_extension("a.png") == ImageFormat::Png);
  CHECK(format_from_extension("dir/B.PNG") == ImageFormat::Png);
  CHECK(format_from_extension("c.exr") == ImageFormat::Exr);
  CHECK(!format_from_extension("d.jpg").has_value());
  CHECK(!format_from_extension("noext").has_value());
}

TEST_CASE("sRGB transfer functions") {
  CHECK(srgb_to_linear(0.0f) == 0.0f);
  CHECK(srgb_to_linear(1.0f) == doctest::Approx(1.0f));
  CHECK(srgb_to_linear(0.5f) == doctest::Approx(0.21404f).epsilon(1e-4));
  CHECK(linear_to_srgb(0.21404f) == doctest::Approx(0.5f).epsilon(1e-4));
  for (int i = 0; i <= 100; ++i) {
    const float v = float(i) / 100.0f;
    CHECK(linear_to_srgb(srgb_to_linear(v)) == doctest::Approx(v).epsilon(1e-5));
  }
}

TEST_CASE("PNG round trips") {
  const auto dir = testing::tmp_dir();
  for (int channels = 1; channels <= 4; ++channels) {
    const Image img = testing::random_image(17, 9, channels, std::uint64_t(channels));
    const auto p8 = dir / ("rt8_" + std::to_string(channels) + ".png");
    save_image(img, p8);
    const Image back8 = load_image(p8);
    REQUIRE(back8.same_shape(img));
    CHECK(max_abs_diff(back8, img) <= 0.5f / 255.0f + 1e-6f);

    const auto p16 = dir / ("rt16_" + std::to_string(channels) + ".png");
    save_image(img, p16, SaveOptions{true, 16, false});
    CHECK(max_abs_diff(load_image(p16), img) <= 0.5f / 65535.0f + 1e-6f);
  }
}

TEST_CASE("PNG sRGB encoding leaves alpha linear") {
  const auto path = testing::tmp_dir() / "srgb.png";
  Image img(2, 1, 4, 0.25f);
  save_image(img, path, SaveOptions{true, 16, true});
  const Image raw = load_image(path);
  CHECK(raw(0, 0, 0) == doctest::Approx(linear_to_srgb(0.25f)).epsilon(1e-4));
  CHECK(raw(0, 0, 3) == doctest::Approx(0.25f).epsilon(1e-4));
  const Image decoded = load_image(path, true);
  CHECK(decoded(1, 0, 1) == doctest::Approx(0.25f).epsilon(1e-4));
  CHECK(decoded(1, 0, 3) == doctest::Approx(0.25f).epsilon(1e-4));
}

TEST_CASE("PNG clamping") {
  const auto path = testing::tmp_dir() / "clamp.png";
  Image img(2, 2, 1, 0.5f);
  img(0, 0) = 1.5f;
  img(1, 0) = -0.25f;
  save_image(img, path);
  const Image back = load_image(path);
  CHECK(back(0, 0) == 1.0f);
  CHECK(back(1, 0) == 0.0f);
  CHECK(testing::error_code_of([&] { save_image(img, path, SaveOptions{false, 8, false}); }) ==
        ErrorCode::InvalidInput);
  CHECK(testing::error_code_of([&] { save_image(img, path, SaveOptions{true, 12, false}); }) ==
        ErrorCode::InvalidInput);
}

TEST_CASE("EXR round trips keep float values") {
  const auto dir = testing::tmp_dir();
  for (int channels = 1; channels <= 4; ++channels) {
    Image img = testing::random_image(16, 8, channels, 40 + std::uint64_t(channels));
    for (float& v : img.samples()) v = v * 4.0f - 2.0f;
    const auto path = dir / ("rt_" + std::to_string(channels) + ".exr");
    save_image(img, path, SaveOptions{false, 8, false});
    const Image back = load_image(path);
    CHECK(back == img);
  }
}

TEST_CASE("load errors") {
  const auto dir = testing::tmp_dir();
  CHECK(testing::error_code_of([&] { load_image(dir / "does_not_exist.png"); }) ==
        ErrorCode::FileNotFound);
  {
    std::ofstream(dir / "text.png") << "this is not an image";
  }
  CHECK(testing::error_code_of([&] { load_image(dir / "text.png"); }) ==
        ErrorCode::UnsupportedFormat);

  save_image(testing::random_image(32, 32, 3, 1), dir / "full.png");
  std::string bytes;
  {
    std::ifstream in(dir / "full.png", std::ios::binary);
    bytes.assign(std::istreambuf_iterator<char>(in), {});
  }
  {
    std::ofstream out(dir / "truncated.png", std::ios::binary);
    out.write(bytes.data(), std::streamsize(bytes.size() / 2));
  }
  CHECK(testing::error_code_of([&] { load_image(dir / "truncated.png"); }) ==
        ErrorCode::CorruptData);

  save_image(testing::random_image(32, 32, 3, 2), dir / "full.exr");
  {
    std::ifstream in(dir / "full.exr", std::ios::binary);
    bytes.assign(std::istreambuf_iterator<char>(in), {});
  }
  {
    std::ofstream out(dir / "truncated.exr", std::ios::binary);
    out.write(bytes.data(), std::streamsize(bytes.size() / 2));
  }
  CHECK(testing::error_code_of([&] { load_image(dir / "truncated.exr"); }) ==
        ErrorCode::CorruptData);
}

TEST_CASE("save errors") {
  const Image img(4, 4, 1, 0.5f);
  CHECK(testing::error_code_of([&] { save_image(img, testing::tmp_dir() / "x.bmp"); }) ==
        ErrorCode::UnsupportedFormat);
  CHECK(testing::error_code_of([&] { save_image(img, "/nonexistent_dir/x/y.png"); }) ==
        ErrorCode::IoError);
  CHECK(testing::error_code_of([&] { save_image(img, "/nonexistent_dir/x/y.exr"); }) ==
        ErrorCode::IoError);
  CHECK(testing::error_code_of([&] { save_image(Image(), testing::tmp_dir() / "e.png"); }) ==
        ErrorCode::InvalidInput);
}

TEST_CASE("8-bit PNG code values") {
  const auto path = testing::tmp_dir() / "codes.png";
  Image img(3, 1, 1);
  img(0, 0) = 1.0f;
  img(1, 0) = 0.0f;
  img(2, 0) = 188.0f / 255.0f;
  save_image(img, path);
  const Image raw = load_image(path);
  CHECK(raw(0, 0) == 1.0f);
  CHECK(raw(1, 0) == 0.0f);
  const Image lin = load_image(path, true);
  // Closed-form EOTF evaluated in double.
  const double c = 188.0 / 255.0;
  const double expected = std::pow((c + 0.055) / 1.055, 2.4);
  CHECK(expected == doctest::Approx(0.5029).epsilon(1e-3));
  CHECK(lin(2, 0) == doctest::Approx(expected).epsilon(1e-6));
}
