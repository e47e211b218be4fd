#pragma once

// Generator matrices for the dual polygonal and dual polyhedral analog codes,
// encoding into real codewords, and the MDS structure check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "geoecc/error.hpp"

namespace geoecc {

using Vector = std::vector<double>;

namespace constants {
inline const double sqrt5 = std::sqrt(5.0);
inline const double phi = (1.0 + sqrt5) / 2.0;
inline const double inv_phi = phi - 1.0;  // 1/phi since phi^2 = phi + 1
}  // namespace constants

enum class FamilyKind { DualPolygonal, DualIcosahedral, DualDodecahedral, Custom };

struct FamilyTag {
  FamilyKind kind = FamilyKind::Custom;
  int n = 0;  // only meaningful for DualPolygonal

  static FamilyTag dual_polygonal(int n) { return {FamilyKind::DualPolygonal, n}; }
  static FamilyTag dual_icosahedral() { return {FamilyKind::DualIcosahedral, 6}; }
  static FamilyTag dual_dodecahedral() { return {FamilyKind::DualDodecahedral, 10}; }
  static FamilyTag custom() { return {FamilyKind::Custom, 0}; }

  bool builtin() const { return kind != FamilyKind::Custom; }

  friend bool operator==(const FamilyTag&, const FamilyTag&) = default;
};

inline std::string_view family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::DualPolygonal: return "dual-polygonal";
    case FamilyKind::DualIcosahedral: return "dual-icosahedral";
    case FamilyKind::DualDodecahedral: return "dual-dodecahedral";
    case FamilyKind::Custom: return "custom";
  }
  return "custom";
}

inline FamilyKind parse_family(std::string_view name) {
  if (name == "dual-polygonal") return FamilyKind::DualPolygonal;
  if (name == "dual-icosahedral") return FamilyKind::DualIcosahedral;
  if (name == "dual-dodecahedral") return FamilyKind::DualDodecahedral;
  if (name == "custom") return FamilyKind::Custom;
  fail(ErrorKind::InvalidParameter, "unknown family '" + std::string(name) + "'");
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

/// A real k x n generator matrix stored column by column. Columns are the
/// code's "axes" g_0..g_{n-1}; codewords are c_j = u . g_j.
class GeneratorMatrix {
 public:
  GeneratorMatrix(std::vector<Vector> columns, FamilyTag family)
      : columns_(std::move(columns)), family_(family) {
    require(!columns_.empty(), "generator matrix needs at least one column");
    k_ = columns_.front().size();
    require(k_ >= 1, "generator matrix columns must have dimension >= 1");
    for (const auto& col : columns_) {
      require(col.size() == k_, "ragged generator matrix columns");
      for (double x : col) require(std::isfinite(x), "non-finite generator matrix entry");
    }
    require(columns_.size() >= k_, "generator matrix needs n >= k");
  }

  std::size_t k() const { return k_; }
  std::size_t n() const { return columns_.size(); }
  FamilyTag family() const { return family_; }
  std::span<const double> column(std::size_t j) const { return columns_.at(j); }
  const std::vector<Vector>& columns() const { return columns_; }

  friend bool operator==(const GeneratorMatrix& a, const GeneratorMatrix& b) {
    return a.columns_ == b.columns_;
  }

 private:
  std::size_t k_ = 0;
  std::vector<Vector> columns_;
  FamilyTag family_;
};

/// Columns at angles pi*j/n, evenly spread over the half circle.
inline GeneratorMatrix dual_polygonal(int n) {
  require(n >= 2, "dual polygonal code needs n >= 2");
  std::vector<Vector> cols;
  cols.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double theta = std::numbers::pi * j / n;
    cols.push_back({std::cos(theta), std::sin(theta)});
  }
  return GeneratorMatrix(std::move(cols), FamilyTag::dual_polygonal(n));
}

/// The six icosahedral vertex axes; every column has squared norm 2 + phi.
inline GeneratorMatrix dual_icosahedral() {
  using constants::phi;
  std::vector<Vector> cols = {
      {0.0, 1.0, phi}, {0.0, 1.0, -phi}, {1.0, phi, 0.0},
      {1.0, -phi, 0.0}, {phi, 0.0, 1.0}, {phi, 0.0, -1.0},
  };
  return GeneratorMatrix(std::move(cols), FamilyTag::dual_icosahedral());
}

/// The ten dodecahedral vertex axes; every column has squared norm 3.
inline GeneratorMatrix dual_dodecahedral() {
  using constants::inv_phi;
  using constants::phi;
  std::vector<Vector> cols = {
      {1.0, 1.0, 1.0},      {1.0, 1.0, -1.0},      {1.0, -1.0, 1.0},
      {1.0, -1.0, -1.0},    {0.0, phi, inv_phi},   {0.0, phi, -inv_phi},
      {inv_phi, 0.0, phi},  {inv_phi, 0.0, -phi},  {phi, inv_phi, 0.0},
      {phi, -inv_phi, 0.0},
  };
  return GeneratorMatrix(std::move(cols), FamilyTag::dual_dodecahedral());
}

inline GeneratorMatrix from_columns(std::vector<Vector> columns) {
  return GeneratorMatrix(std::move(columns), FamilyTag::custom());
}

inline GeneratorMatrix builtin_matrix(FamilyTag family) {
  switch (family.kind) {
    case FamilyKind::DualPolygonal: return dual_polygonal(family.n);
    case FamilyKind::DualIcosahedral: return dual_icosahedral();
    case FamilyKind::DualDodecahedral: return dual_dodecahedral();
    case FamilyKind::Custom: break;
  }
  fail(ErrorKind::UnsupportedFamily, "custom family has no built-in matrix");
}

struct Codeword {
  Vector entries;
  Vector order_stats;                  // |c| sorted nonincreasing
  std::vector<std::size_t> order_perm;  // order_stats[i] == |entries[order_perm[i]]|
};

inline Codeword make_codeword(Vector entries) {
  Codeword c;
  c.entries = std::move(entries);
  const std::size_t n = c.entries.size();
  c.order_perm.resize(n);
  std::iota(c.order_perm.begin(), c.order_perm.end(), std::size_t{0});
  // stable sort keeps ascending index order among equal magnitudes
  std::stable_sort(c.order_perm.begin(), c.order_perm.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(c.entries[a]) > std::abs(c.entries[b]);
  });
  c.order_stats.resize(n);
  for (std::size_t i = 0; i < n; ++i) c.order_stats[i] = std::abs(c.entries[c.order_perm[i]]);
  return c;
}

inline Codeword encode(const GeneratorMatrix& g, std::span<const double> u) {
  require(u.size() == g.k(), "information vector dimension does not match k");
  Vector entries(g.n());
  for (std::size_t j = 0; j < g.n(); ++j) entries[j] = dot(u, g.column(j));
  return make_codeword(std::move(entries));
}

/// c_(0) / c_(m). Infinite when c_(m) vanishes under a nonzero codeword;
/// NaN for the zero codeword.
inline double codeword_height(const Codeword& c, std::size_t m) {
  require(m < c.order_stats.size(), "m out of range for codeword");
  const double top = c.order_stats.front();
  const double den = c.order_stats[m];
  if (top == 0.0) return std::numeric_limits<double>::quiet_NaN();
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return top / den;
}

inline double direction_height(const GeneratorMatrix& g, std::span<const double> u,
                               std::size_t m) {
  return codeword_height(encode(g, u), m);
}

namespace detail {

template <typename F>
void for_each_combination(std::size_t n, std::size_t r, F&& f) {
  if (r > n) return;
  std::vector<std::size_t> idx(r);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    f(std::span<const std::size_t>(idx));
    if (r == 0) return;
    std::size_t i = r;
    while (i > 0 && idx[i - 1] == n - r + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// True iff every k-subset of columns is linearly independent, using the
/// scale-aware test |det| > 1e-9 * prod(column norms).
inline bool is_mds(const GeneratorMatrix& g) {
  const std::size_t k = g.k();
  bool mds = true;
  Eigen::MatrixXd sub(k, k);
  detail::for_each_combination(g.n(), k, [&](std::span<const std::size_t> cols) {
    if (!mds) return;
    double scale = 1.0;
    for (std::size_t c = 0; c < k; ++c) {
      const auto col = g.column(cols[c]);
      for (std::size_t r = 0; r < k; ++r) sub(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = col[r];
      scale *= norm(col);
    }
    if (!(std::abs(sub.determinant()) > 1e-9 * scale)) mds = false;
  });
  return mds;
}

}  // namespace geoecc
