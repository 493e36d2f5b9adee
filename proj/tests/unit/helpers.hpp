#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "lapblend/error.hpp"
#include "lapblend/image.hpp"
#include "lapblend/noise.hpp"

namespace testing {

inline lapblend::Image random_image(int w, int h, int c, std::uint64_t seed) {
  return lapblend::white_noise(w, h, c, seed);
}

inline std::filesystem::path tmp_dir() {
  std::filesystem::path dir(LAPBLEND_TEST_TMPDIR);
  std::filesystem::create_directories(dir);
  return dir;
}

template <typename F>
lapblend::ErrorCode error_code_of(F&& f) {
  try {
    f();
  } catch (const lapblend::Error& e) {
    return e.code();
  }
  return static_cast<lapblend::ErrorCode>(0);
}

}  // namespace testing
