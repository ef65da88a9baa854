#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace metageo {

/// Exact solver asked for an instance beyond its configured cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input text failed to parse; carries the 1-based token position.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& msg, std::size_t token_pos)
      : std::invalid_argument("token " + std::to_string(token_pos) + ": " + msg),
        token_pos_(token_pos) {}

  std::size_t token_pos() const noexcept { return token_pos_; }

 private:
  std::size_t token_pos_;
};

}  // namespace metageo
