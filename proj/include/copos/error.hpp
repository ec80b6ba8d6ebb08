#pragma once

#include <stdexcept>
#include <string>

namespace copos {

enum class ErrorCode {
  InvalidArgument = 1,
  Parse = 2,
  UncoveredMonomial = 3,
  Numerical = 4,
  Unsupported = 5,
  Inconsistent = 6,
  Internal = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace copos
