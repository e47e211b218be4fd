#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geoecc/codes.hpp"

namespace geoecc {

/// An m-height value in [1, +inf]. Infinity is stored as IEEE +inf. The
/// witness is an information vector attaining the value, or for +inf a
/// direction whose codeword has c_(m) = 0.
struct ExtendedHeight {
  double value = 1.0;
  std::optional<Vector> witness;

  static ExtendedHeight finite(double v, std::optional<Vector> w = std::nullopt) {
    return {v, std::move(w)};
  }
  static ExtendedHeight infinite(std::optional<Vector> w = std::nullopt) {
    return {std::numeric_limits<double>::infinity(), std::move(w)};
  }

  bool is_infinite() const { return std::isinf(value); }
};

struct MHeightProfile {
  FamilyTag family;
  std::size_t n = 0;
  std::vector<ExtendedHeight> heights;  // heights[m - 1] for m = 1..n-1

  const ExtendedHeight& at(std::size_t m) const {
    require(m >= 1 && m <= heights.size(), "m outside profile range");
    return heights[m - 1];
  }
  std::size_t max_m() const { return heights.size(); }
};

/// Relative agreement with infinities matched exactly.
inline bool heights_agree(double a, double b, double rel_tol) {
  if (std::isinf(a) || std::isinf(b)) return std::isinf(a) && std::isinf(b);
  return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace geoecc
