#pragma once

// Fundamental domains: the arc of information directions for the dual
// polygonal codes and the sub-triangles of a face for the polyhedral codes.
// Every codeword of the code equals, up to a coordinate permutation and sign
// changes, a multiple of one generated from a point of the domain.

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <numbers>
#include <utility>
#include <variant>
#include <vector>

#include "geoecc/codes.hpp"
#include "geoecc/error.hpp"

namespace geoecc {

struct Arc {
  int n = 2;  // directions (cos a, sin a) for a in [0, pi / 2n]

  double upper() const { return std::numbers::pi / (2.0 * n); }
  Vector direction(double alpha) const { return {std::cos(alpha), std::sin(alpha)}; }
};

/// Barycentric triangle x(u, v) = u v1 + v v2 + (1 - u - v) v3 over
/// D = {u, v >= 0, u + v <= 1}.
struct Triangle {
  std::array<Vector, 3> vertices;

  Vector point(double u, double v) const {
    Vector x(3);
    const double w = 1.0 - u - v;
    for (std::size_t i = 0; i < 3; ++i)
      x[i] = u * vertices[0][i] + v * vertices[1][i] + w * vertices[2][i];
    return x;
  }
};

using FundamentalDomain = std::variant<Arc, Triangle>;

inline constexpr double kDomainSlack = 1e-12;

inline bool in_standard_triangle(double u, double v) {
  return u >= -kDomainSlack && v >= -kDomainSlack && u + v <= 1.0 + kDomainSlack;
}

inline Arc make_arc(int n) {
  require(n >= 2, "arc domain needs n >= 2");
  return Arc{n};
}

inline Triangle make_triangle(Vector v1, Vector v2, Vector v3) {
  require(v1.size() == 3 && v2.size() == 3 && v3.size() == 3, "triangle vertices must be 3-vectors");
  const double e1[3] = {v2[0] - v1[0], v2[1] - v1[1], v2[2] - v1[2]};
  const double e2[3] = {v3[0] - v1[0], v3[1] - v1[1], v3[2] - v1[2]};
  const double cx = e1[1] * e2[2] - e1[2] * e2[1];
  const double cy = e1[2] * e2[0] - e1[0] * e2[2];
  const double cz = e1[0] * e2[1] - e1[1] * e2[0];
  const double scale = std::max(1.0, norm(v1) * norm(v1));
  require(std::sqrt(cx * cx + cy * cy + cz * cz) > 1e-12 * scale,
          "triangle vertices are affinely dependent");
  return Triangle{{std::move(v1), std::move(v2), std::move(v3)}};
}

namespace detail {

inline Vector column_average(const GeneratorMatrix& g, std::initializer_list<std::size_t> one_based) {
  Vector x(g.k(), 0.0);
  for (std::size_t j : one_based) {
    const auto col = g.column(j - 1);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += col[i];
  }
  for (double& v : x) v /= static_cast<double>(one_based.size());
  return x;
}

}  // namespace detail

inline Arc polygonal_domain(int n) { return make_arc(n); }

/// T = conv{g1, (g1+g3)/2, (g1+g3+g5)/3}.
inline Triangle icosahedral_domain() {
  const auto g = dual_icosahedral();
  return make_triangle(detail::column_average(g, {1}), detail::column_average(g, {1, 3}),
                       detail::column_average(g, {1, 3, 5}));
}

/// T' = conv{x_A, x_B, x_C} with x_A = g1, x_B = (g1+g5)/2 and
/// x_C = (g1+g2+g5+g6+g9)/5, the centre of the face.
inline Triangle dodecahedral_domain() {
  const auto g = dual_dodecahedral();
  return make_triangle(detail::column_average(g, {1}), detail::column_average(g, {1, 5}),
                       detail::column_average(g, {1, 2, 5, 6, 9}));
}

inline FundamentalDomain default_domain(FamilyTag family) {
  switch (family.kind) {
    case FamilyKind::DualPolygonal: return polygonal_domain(family.n);
    case FamilyKind::DualIcosahedral: return icosahedral_domain();
    case FamilyKind::DualDodecahedral: return dodecahedral_domain();
    case FamilyKind::Custom: break;
  }
  fail(ErrorKind::UnsupportedFamily, "custom matrices have no known fundamental domain");
}

/// The six points of T' (as (u, v)) that contain every maximizer of the
/// dodecahedral m-height for m = 3..7.
inline std::vector<std::pair<double, double>> dodecahedral_candidates() {
  using constants::phi;
  using constants::sqrt5;
  return {
      {1.0, 0.0},
      {0.0, 0.0},
      {0.0, 1.0},
      {0.0, (1.0 + 3.0 * sqrt5) / 11.0},
      {phi / 3.0, 0.0},
      {0.0, 2.0 * sqrt5 - 4.0},
  };
}

}  // namespace geoecc
