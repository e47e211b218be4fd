#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace geoecc {

enum class ErrorKind {
  InvalidParameter,
  Capacity,
  UnsupportedFamily,
  NoFiniteRatio,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::UnsupportedFamily: return "unsupported-family";
    case ErrorKind::NoFiniteRatio: return "no-finite-ratio";
  }
  return "unknown";
}

/// Every library failure is reported through this type; `kind()` tells the
/// CLI which error object to emit.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, const std::string& message) {
  if (!condition) fail(ErrorKind::InvalidParameter, message);
}

}  // namespace geoecc
