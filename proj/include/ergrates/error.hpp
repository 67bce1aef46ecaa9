#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ergrates {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Binary operation on vectors of different dimension.
class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t lhs, std::size_t rhs)
      : Error("dimension mismatch: " + std::to_string(lhs) + " vs " +
              std::to_string(rhs)) {}
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An operation that needs a strictly convex body received the cube.
class NotStrictlyConvex : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A numerical routine could not reach its tolerance within its work budget.
/// Oracles raise this instead of returning a degraded value.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration. Carries every problem found, not only the first.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> messages)
      : Error(join(messages)), messages_(std::move(messages)) {}
  explicit ConfigError(const std::string& message)
      : ConfigError(std::vector<std::string>{message}) {}

  const std::vector<std::string>& messages() const { return messages_; }

 private:
  static std::string join(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& line : lines) {
      if (!out.empty()) out += '\n';
      out += line;
    }
    return out;
  }

  std::vector<std::string> messages_;
};

}  // namespace ergrates
