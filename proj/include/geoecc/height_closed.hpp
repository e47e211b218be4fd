#pragma once

// Closed-form m-heights of the built-in code families, with a witness
// information vector for each finite value.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "geoecc/codes.hpp"
#include "geoecc/domains.hpp"
#include "geoecc/height.hpp"

namespace geoecc {

namespace detail {

inline Vector cross(std::span<const double> a, std::span<const double> b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline Vector column_vector(const GeneratorMatrix& g, std::size_t one_based) {
  const auto col = g.column(one_based - 1);
  return Vector(col.begin(), col.end());
}

}  // namespace detail

/// Dual polygonal code of length n. For m <= n-2 the maximum sits at
/// alpha = pi/2n (m even) or alpha = 0 (m odd); h_{n-1} is infinite since a
/// direction orthogonal to g_0 zeroes one coordinate.
inline ExtendedHeight polygonal_height(int n, int m) {
  require(n >= 2, "dual polygonal code needs n >= 2");
  require(m >= 1 && m <= n - 1, "m must lie in [1, n-1]");
  if (m == n - 1) return ExtendedHeight::infinite(Vector{0.0, 1.0});
  const double step = std::numbers::pi / (2.0 * n);
  const double den = std::cos((m + 1) * step);
  if (m % 2 == 0) return ExtendedHeight::finite(std::cos(step) / den, Vector{std::cos(step), std::sin(step)});
  return ExtendedHeight::finite(1.0 / den, Vector{1.0, 0.0});
}

inline ExtendedHeight icosahedral_height(int m) {
  require(m >= 1 && m <= 5, "icosahedral m must lie in [1, 5]");
  using constants::sqrt5;
  const auto g = dual_icosahedral();
  switch (m) {
    case 1:
    case 2: return ExtendedHeight::finite(sqrt5, detail::column_vector(g, 1));
    case 3: return ExtendedHeight::finite(2.0 + sqrt5, icosahedral_domain().vertices[2]);
    default:
      // any direction orthogonal to two axes zeroes two of six coordinates
      return ExtendedHeight::infinite(detail::cross(g.column(0), g.column(1)));
  }
}

namespace detail {

/// Argmax over the six candidate points of c_(0)/c_(m), using the actual
/// (m+1)-th largest projection as denominator.
inline Vector dodecahedral_candidate_witness(int m) {
  const auto g = dual_dodecahedral();
  const auto domain = dodecahedral_domain();
  Vector best_point;
  double best = -1.0;
  for (const auto& [u, v] : dodecahedral_candidates()) {
    Vector x = domain.point(u, v);
    const double ratio = direction_height(g, x, static_cast<std::size_t>(m));
    if (ratio > best) {
      best = ratio;
      best_point = std::move(x);
    }
  }
  return best_point;
}

}  // namespace detail

inline ExtendedHeight dodecahedral_height(int m) {
  require(m >= 1 && m <= 9, "dodecahedral m must lie in [1, 9]");
  using constants::phi;
  using constants::sqrt5;
  const auto domain = dodecahedral_domain();
  switch (m) {
    case 1: return ExtendedHeight::finite(3.0 / sqrt5, domain.vertices[0]);
    case 2: return ExtendedHeight::finite(phi, domain.vertices[1]);
    case 3: return ExtendedHeight::finite(4.0 - sqrt5, detail::dodecahedral_candidate_witness(3));
    case 4: return ExtendedHeight::finite(3.0, detail::dodecahedral_candidate_witness(4));
    case 5: return ExtendedHeight::finite(2.0 + sqrt5, detail::dodecahedral_candidate_witness(5));
    case 6: return ExtendedHeight::finite(2.0 + sqrt5, detail::dodecahedral_candidate_witness(6));
    case 7: return ExtendedHeight::finite(5.0 + 2.0 * sqrt5, detail::dodecahedral_candidate_witness(7));
    default: {
      // n - k + 1 = 8: a direction orthogonal to two axes has two zero
      // coordinates, so c_(8) = c_(9) = 0.
      const auto g = dual_dodecahedral();
      return ExtendedHeight::infinite(detail::cross(g.column(0), g.column(1)));
    }
  }
}

inline MHeightProfile closed_profile(FamilyTag family) {
  MHeightProfile profile;
  profile.family = family;
  switch (family.kind) {
    case FamilyKind::DualPolygonal:
      require(family.n >= 2, "dual polygonal code needs n >= 2");
      profile.n = static_cast<std::size_t>(family.n);
      for (int m = 1; m < family.n; ++m) profile.heights.push_back(polygonal_height(family.n, m));
      return profile;
    case FamilyKind::DualIcosahedral:
      profile.n = 6;
      for (int m = 1; m <= 5; ++m) profile.heights.push_back(icosahedral_height(m));
      return profile;
    case FamilyKind::DualDodecahedral:
      profile.n = 10;
      for (int m = 1; m <= 9; ++m) profile.heights.push_back(dodecahedral_height(m));
      return profile;
    case FamilyKind::Custom: break;
  }
  fail(ErrorKind::UnsupportedFamily, "closed forms exist only for the built-in families");
}

}  // namespace geoecc
