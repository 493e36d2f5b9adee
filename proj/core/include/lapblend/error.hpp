#pragma once

#include <stdexcept>
#include <string>

namespace lapblend {

enum class ErrorCode {
  InvalidInput = 1,
  FileNotFound,
  UnsupportedFormat,
  CorruptData,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure reported by the library is an Error carrying a stable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void throw_invalid_input(const std::string& message);

}  // namespace lapblend
