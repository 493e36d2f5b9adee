#include "lapblend/error.hpp"

namespace lapblend {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput:
      return "invalid input";
    case ErrorCode::FileNotFound:
      return "file not found";
    case ErrorCode::UnsupportedFormat:
      return "unsupported format";
    case ErrorCode::CorruptData:
      return "corrupt data";
    case ErrorCode::IoError:
      return "i/o error";
  }
  return "unknown error";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

void throw_invalid_input(const std::string& message) {
  throw Error(ErrorCode::InvalidInput, message);
}

}  // namespace lapblend
