#include "lapblend/io.hpp"

#include <png.h>

#include <ImfChannelList.h>
#include <ImfFrameBuffer.h>
#include <ImfHeader.h>
#include <ImfInputFile.h>
#include <ImfOutputFile.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "lapblend/error.hpp"

namespace lapblend {
namespace {

namespace fs = std::filesystem;

struct FileCloser {
  void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

bool has_alpha(int channels) noexcept { return channels == 2 || channels == 4; }

bool is_color_channel(int c, int channels) noexcept {
  return !(has_alpha(channels) && c == channels - 1);
}

std::optional<ImageFormat> sniff_format(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::array<unsigned char, 8> magic{};
  in.read(reinterpret_cast<char*>(magic.data()), magic.size());
  const auto got = in.gcount();
  if (got >= 8 && png_sig_cmp(magic.data(), 0, 8) == 0) return ImageFormat::Png;
  if (got >= 4 && magic[0] == 0x76 && magic[1] == 0x2f && magic[2] == 0x31 && magic[3] == 0x01) {
    return ImageFormat::Exr;
  }
  return std::nullopt;
}

Image load_png(const fs::path& path, bool srgb_decode) {
  FilePtr file(std::fopen(path.c_str(), "rb"));
  if (!file) throw Error(ErrorCode::IoError, "cannot open " + path.string());

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error(ErrorCode::IoError, "libpng initialization failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw Error(ErrorCode::IoError, "libpng initialization failed");
  }

  std::vector<unsigned char> pixels;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw Error(ErrorCode::CorruptData, "corrupt PNG data in " + path.string());
  }

  png_init_io(png, file.get());
  png_read_info(png, info);
  png_set_expand(png);  // palette -> RGB, low-bit gray -> 8 bit, tRNS -> alpha
  if (png_get_bit_depth(png, info) == 16 && std::endian::native == std::endian::little) {
    png_set_swap(png);
  }
  png_read_update_info(png, info);

  const auto width = static_cast<int>(png_get_image_width(png, info));
  const auto height = static_cast<int>(png_get_image_height(png, info));
  const int channels = png_get_channels(png, info);
  const int depth = png_get_bit_depth(png, info);
  const std::size_t row_bytes = png_get_rowbytes(png, info);

  pixels.resize(row_bytes * static_cast<std::size_t>(height));
  rows.resize(static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y) rows[static_cast<std::size_t>(y)] = &pixels[row_bytes * y];
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  if (channels < 1 || channels > 4 || (depth != 8 && depth != 16)) {
    throw Error(ErrorCode::UnsupportedFormat, "unsupported PNG layout in " + path.string());
  }

  std::vector<float> samples(static_cast<std::size_t>(width) * height * channels);
  const double scale = depth == 16 ? 1.0 / 65535.0 : 1.0 / 255.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    unsigned value = 0;
    if (depth == 16) {
      std::uint16_t v16;
      std::memcpy(&v16, &pixels[2 * i], sizeof(v16));
      value = v16;
    } else {
      value = pixels[i];
    }
    samples[i] = static_cast<float>(value * scale);
  }
  if (srgb_decode) {
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (is_color_channel(static_cast<int>(i % channels), channels)) {
        samples[i] = srgb_to_linear(samples[i]);
      }
    }
  }
  return Image(width, height, channels, std::move(samples));
}

std::vector<std::string> exr_channel_names(int channels) {
  switch (channels) {
    case 1:
      return {"Y"};
    case 2:
      return {"Y", "A"};
    case 3:
      return {"R", "G", "B"};
    default:
      return {"R", "G", "B", "A"};
  }
}

Image load_exr(const fs::path& path) {
  try {
    Imf::InputFile file(path.c_str());
    const Imf::Header& header = file.header();
    const Imath::Box2i window = header.dataWindow();
    const int width = window.max.x - window.min.x + 1;
    const int height = window.max.y - window.min.y + 1;
    const Imf::ChannelList& list = header.channels();

    std::vector<std::string> names;
    if (list.findChannel("R") && list.findChannel("G") && list.findChannel("B")) {
      names = {"R", "G", "B"};
    } else if (list.findChannel("Y")) {
      names = {"Y"};
    } else if (list.begin() != list.end()) {
      names = {list.begin().name()};
    } else {
      throw Error(ErrorCode::CorruptData, "EXR file has no channels: " + path.string());
    }
    if (list.findChannel("A")) names.push_back("A");

    const int channels = static_cast<int>(names.size());
    std::vector<float> samples(static_cast<std::size_t>(width) * height * channels);
    const std::size_t x_stride = sizeof(float) * channels;
    const std::size_t y_stride = x_stride * width;
    Imf::FrameBuffer fb;
    for (int c = 0; c < channels; ++c) {
      char* origin = reinterpret_cast<char*>(samples.data() + c) -
                     window.min.x * x_stride - window.min.y * y_stride;
      fb.insert(names[static_cast<std::size_t>(c)].c_str(),
                Imf::Slice(Imf::FLOAT, origin, x_stride, y_stride));
    }
    file.setFrameBuffer(fb);
    file.readPixels(window.min.y, window.max.y);
    for (float& v : samples) {
      if (!std::isfinite(v)) throw Error(ErrorCode::CorruptData, "non-finite EXR sample");
    }
    return Image(width, height, channels, std::move(samples));
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::CorruptData, "cannot read EXR " + path.string() + ": " + e.what());
  }
}

void save_png(const Image& img, const fs::path& path, const SaveOptions& options) {
  if (options.bit_depth != 8 && options.bit_depth != 16) {
    throw_invalid_input("PNG bit depth must be 8 or 16");
  }
  const int ch = img.channels();
  const double max_code = options.bit_depth == 16 ? 65535.0 : 255.0;
  const std::size_t bytes_per_sample = options.bit_depth == 16 ? 2 : 1;
  const std::size_t row_bytes = static_cast<std::size_t>(img.width()) * ch * bytes_per_sample;
  std::vector<unsigned char> pixels(row_bytes * static_cast<std::size_t>(img.height()));

  const auto samples = img.samples();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    float v = samples[i];
    if (options.clamp) {
      v = std::clamp(v, 0.0f, 1.0f);
    } else if (v < 0.0f || v > 1.0f) {
      throw_invalid_input("sample " + std::to_string(v) + " outside [0, 1]; enable clamping");
    }
    if (options.srgb_encode && is_color_channel(static_cast<int>(i % ch), ch)) {
      v = linear_to_srgb(v);
    }
    const auto code = static_cast<unsigned>(std::lround(static_cast<double>(v) * max_code));
    if (options.bit_depth == 16) {
      pixels[2 * i] = static_cast<unsigned char>(code >> 8);  // PNG is big-endian
      pixels[2 * i + 1] = static_cast<unsigned char>(code & 0xff);
    } else {
      pixels[i] = static_cast<unsigned char>(code);
    }
  }

  FilePtr file(std::fopen(path.c_str(), "wb"));
  if (!file) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw Error(ErrorCode::IoError, "libpng initialization failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw Error(ErrorCode::IoError, "libpng initialization failed");
  }
  std::vector<png_bytep> rows(static_cast<std::size_t>(img.height()));
  for (int y = 0; y < img.height(); ++y) {
    rows[static_cast<std::size_t>(y)] = &pixels[row_bytes * y];
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw Error(ErrorCode::IoError, "failed writing PNG " + path.string());
  }
  static constexpr std::array<int, 4> kColorTypes{PNG_COLOR_TYPE_GRAY, PNG_COLOR_TYPE_GRAY_ALPHA,
                                                  PNG_COLOR_TYPE_RGB, PNG_COLOR_TYPE_RGBA};
  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()),
               static_cast<png_uint_32>(img.height()), options.bit_depth,
               kColorTypes[static_cast<std::size_t>(ch - 1)], PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

void save_exr(const Image& img, const fs::path& path, const SaveOptions& options) {
  Image data = img;
  if (options.clamp) {
    for (float& v : data.samples()) v = std::clamp(v, 0.0f, 1.0f);
  }
  const int ch = data.channels();
  const auto names = exr_channel_names(ch);
  try {
    Imf::Header header(data.width(), data.height());
    header.compression() = Imf::ZIP_COMPRESSION;
    for (const auto& name : names) header.channels().insert(name.c_str(), Imf::Channel(Imf::FLOAT));
    const std::size_t x_stride = sizeof(float) * ch;
    const std::size_t y_stride = x_stride * data.width();
    Imf::FrameBuffer fb;
    for (int c = 0; c < ch; ++c) {
      fb.insert(names[static_cast<std::size_t>(c)].c_str(),
                Imf::Slice(Imf::FLOAT, reinterpret_cast<char*>(data.samples().data() + c),
                           x_stride, y_stride));
    }
    Imf::OutputFile file(path.c_str(), header);
    file.setFrameBuffer(fb);
    file.writePixels(data.height());
  } catch (const std::exception& e) {
    throw Error(ErrorCode::IoError, "cannot write EXR " + path.string() + ": " + e.what());
  }
}

}  // namespace

std::optional<ImageFormat> format_from_extension(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".png") return ImageFormat::Png;
  if (ext == ".exr") return ImageFormat::Exr;
  return std::nullopt;
}

float srgb_to_linear(float encoded) noexcept {
  const double c = encoded;
  const double v = c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
  return static_cast<float>(v);
}

float linear_to_srgb(float linear) noexcept {
  const double l = linear;
  const double v = l <= 0.0031308 ? l * 12.92 : 1.055 * std::pow(l, 1.0 / 2.4) - 0.055;
  return static_cast<float>(v);
}

Image load_image(const fs::path& path, bool srgb_decode) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw Error(ErrorCode::FileNotFound, "no such file: " + path.string());
  }
  const auto format = sniff_format(path);
  if (!format) throw Error(ErrorCode::UnsupportedFormat, "not a PNG or EXR file: " + path.string());
  return *format == ImageFormat::Png ? load_png(path, srgb_decode) : load_exr(path);
}

void save_image(const Image& img, const fs::path& path, const SaveOptions& options) {
  if (img.empty()) throw_invalid_input("cannot save an empty image");
  const auto format = format_from_extension(path);
  if (!format) {
    throw Error(ErrorCode::UnsupportedFormat,
                "output must end in .png or .exr: " + path.string());
  }
  if (*format == ImageFormat::Png) {
    save_png(img, path, options);
  } else {
    save_exr(img, path, options);
  }
}

}  // namespace lapblend
