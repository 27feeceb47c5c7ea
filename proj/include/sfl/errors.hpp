#pragma once

#include <stdexcept>
#include <string>

namespace sfl {

// Every error raised by the library carries a short machine-readable code
// ("ZeroEntry", "DimensionMismatch", ...) next to the human message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace sfl
