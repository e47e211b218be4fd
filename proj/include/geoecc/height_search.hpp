#pragma once

// Numeric companions to the closed forms: order/rank checks on the
// fundamental domains, finite-difference monotonicity checks, and a direct
// grid search for m-height lower bounds.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "geoecc/codes.hpp"
#include "geoecc/domains.hpp"
#include "geoecc/error.hpp"
#include "geoecc/height.hpp"

namespace geoecc {

inline constexpr int kDefaultArcResolution = 10000;
inline constexpr int kDefaultTriangleResolution = 300;
inline constexpr int kRefinementIterations = 64;
inline constexpr int kMaxPolls = 20000;
inline constexpr double kTieTol = 1e-12;
inline constexpr double kFiniteDifferenceStep = 1e-6;
inline constexpr double kDerivativeThreshold = 1e-8;

struct Violation {
  std::string what;
  double magnitude = 0.0;
};

/// Descending order of |x . g_j| at one domain point. `perm` is 0-based for
/// the polygonal family and 1-based (axes g_1..g_n) for the polyhedral ones.
struct RankReport {
  Vector point;
  std::vector<std::size_t> perm;
  int index_base = 0;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

/// Two magnitudes closer than this are treated as equal by every ordering
/// assertion.
inline bool tied(double a, double b) {
  return std::abs(a - b) <= kTieTol * std::max({1.0, std::abs(a), std::abs(b)});
}

namespace detail {

inline std::vector<std::size_t> descending_order(std::span<const double> magnitudes, std::size_t base) {
  std::vector<std::size_t> perm(magnitudes.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return magnitudes[a] > magnitudes[b]; });
  for (auto& p : perm) p += base;
  return perm;
}

inline std::vector<double> projections(const GeneratorMatrix& g, std::span<const double> x) {
  std::vector<double> beta(g.n());
  for (std::size_t j = 0; j < g.n(); ++j) beta[j] = std::abs(dot(x, g.column(j)));
  return beta;
}

inline void require_in_triangle(double u, double v) {
  require(std::isfinite(u) && std::isfinite(v) && in_standard_triangle(u, v),
          "(u, v) lies outside the parameter triangle");
}

}  // namespace detail

/// Expected index of the k-th largest |c_j| on the polygonal arc:
/// 0, 1, n-1, 2, n-2, ...
inline std::size_t polygonal_rank_index(int n, int k) {
  if (k == 0) return 0;
  if (k % 2 == 1) return static_cast<std::size_t>((k + 1) / 2);
  return static_cast<std::size_t>(n - k / 2);
}

inline RankReport polygonal_order_indices(int n, double alpha) {
  require(n >= 2, "dual polygonal code needs n >= 2");
  const Arc arc = make_arc(n);
  require(std::isfinite(alpha) && alpha >= -kDomainSlack && alpha <= arc.upper() + kDomainSlack,
          "alpha lies outside [0, pi/2n]");
  std::vector<double> mags(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) mags[static_cast<std::size_t>(j)] = std::abs(std::cos(std::numbers::pi * j / n - alpha));

  RankReport report;
  report.point = {alpha};
  report.perm = detail::descending_order(mags, 0);
  for (int k = 0; k < n; ++k) {
    const std::size_t got = report.perm[static_cast<std::size_t>(k)];
    const std::size_t want = polygonal_rank_index(n, k);
    if (got != want && !tied(mags[got], mags[want])) {
      report.violations.push_back({"rank " + std::to_string(k) + " attained at j=" + std::to_string(got) +
                                       " instead of j=" + std::to_string(want),
                                   std::abs(mags[got] - mags[want])});
    }
  }
  return report;
}

namespace detail {

/// Appends a violation when beta[greater] < beta[lesser] beyond the tie
/// tolerance. Indices are 1-based axes.
inline void expect_at_least(const std::vector<double>& beta, std::size_t greater, std::size_t lesser,
                            std::vector<Violation>& out) {
  const double a = beta[greater - 1];
  const double b = beta[lesser - 1];
  if (a < b && !tied(a, b)) {
    out.push_back({"|x.g" + std::to_string(greater) + "| < |x.g" + std::to_string(lesser) + "|", b - a});
  }
}

}  // namespace detail

/// |x.g1| >= |x.g3| >= |x.g5| >= |x.g4| >= |x.g2| >= |x.g6| on the
/// icosahedral triangle.
inline RankReport icosahedral_chain_check(double u, double v) {
  detail::require_in_triangle(u, v);
  static const GeneratorMatrix g = dual_icosahedral();
  static const Triangle t = icosahedral_domain();
  RankReport report;
  report.index_base = 1;
  report.point = {u, v};
  const auto beta = detail::projections(g, t.point(u, v));
  report.perm = detail::descending_order(beta, 1);
  constexpr std::size_t chain[] = {1, 3, 5, 4, 2, 6};
  for (std::size_t i = 0; i + 1 < std::size(chain); ++i)
    detail::expect_at_least(beta, chain[i], chain[i + 1], report.violations);
  return report;
}

/// Axes allowed at each rank k = 1..10 on the dodecahedral triangle.
inline const std::vector<std::vector<std::size_t>>& dodecahedral_rank_supports() {
  static const std::vector<std::vector<std::size_t>> sets = {
      {1}, {5}, {9}, {6, 7}, {2, 6, 7}, {2, 4, 7}, {2, 4}, {8, 10}, {3, 8, 10}, {3, 8},
  };
  return sets;
}

inline RankReport dodecahedral_rank_check(double u, double v) {
  detail::require_in_triangle(u, v);
  static const GeneratorMatrix g = dual_dodecahedral();
  static const Triangle t = dodecahedral_domain();
  RankReport report;
  report.index_base = 1;
  report.point = {u, v};
  const auto beta = detail::projections(g, t.point(u, v));
  report.perm = detail::descending_order(beta, 1);

  const auto& supports = dodecahedral_rank_supports();
  for (std::size_t k = 0; k < supports.size(); ++k) {
    const double value = beta[report.perm[k] - 1];
    const bool attained = std::any_of(supports[k].begin(), supports[k].end(),
                                      [&](std::size_t j) { return tied(beta[j - 1], value); });
    if (!attained) {
      double gap = std::numeric_limits<double>::infinity();
      for (std::size_t j : supports[k]) gap = std::min(gap, std::abs(beta[j - 1] - value));
      report.violations.push_back(
          {"rank " + std::to_string(k + 1) + " attained at g" + std::to_string(report.perm[k]) +
               " outside its support set",
           gap});
    }
  }

  constexpr std::pair<std::size_t, std::size_t> inequalities[] = {
      {1, 5}, {5, 9}, {9, 6}, {9, 7}, {6, 2},  {6, 4},  {7, 4},
      {4, 3}, {4, 8}, {4, 10}, {2, 3}, {2, 8}, {2, 10}, {10, 3},
  };
  for (const auto& [greater, lesser] : inequalities)
    detail::expect_at_least(beta, greater, lesser, report.violations);
  return report;
}

struct MonotonicityReport {
  FamilyTag family;
  int index = 0;
  std::size_t points = 0;
  std::size_t assertions = 0;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

namespace detail {

/// Expected partial-derivative signs of one ratio; 0 means "not asserted".
struct SignPattern {
  int du = 0;
  int dv = 0;
};

inline void check_sign(double derivative, int expected, const std::string& label,
                       MonotonicityReport& report) {
  if (expected == 0 || std::abs(derivative) <= kDerivativeThreshold) return;
  ++report.assertions;
  if ((derivative > 0.0 ? 1 : -1) != expected)
    report.violations.push_back({label + " has the wrong sign", std::abs(derivative)});
}

template <typename Ratio, typename Include>
void check_triangle_ratio(Ratio&& ratio, Include&& include, SignPattern pattern, int resolution,
                          MonotonicityReport& report) {
  const double h = kFiniteDifferenceStep;
  const double scale = 1.0 / (resolution + 1);
  for (int i = 1; i <= resolution; ++i) {
    for (int j = 1; i + j <= resolution; ++j) {
      const double u = i * scale;
      const double v = j * scale;
      if (!include(u, v)) continue;
      ++report.points;
      const double du = (ratio(u + h, v) - ratio(u - h, v)) / (2.0 * h);
      const double dv = (ratio(u, v + h) - ratio(u, v - h)) / (2.0 * h);
      const std::string where = "(" + std::to_string(u) + ", " + std::to_string(v) + ")";
      check_sign(du, pattern.du, "d/du at " + where, report);
      check_sign(dv, pattern.dv, "d/dv at " + where, report);
    }
  }
}

}  // namespace detail

/// Finite-difference sign check of a height ratio on an interior grid.
///
/// - dual polygonal (n): `index` is m in [1, n-2]; dh_m/dalpha has sign (-1)^m.
/// - dual icosahedral: `index` is m in {1, 2, 3}; the ratio is
///   x.g1 / d_m(x) with d_1 = x.g3, d_2 = x.g5, d_3 = -x.g4.
/// - dual dodecahedral: `index` is the denominator axis j in
///   {2, 4, 5, 6, 7, 8, 9, 10}; the ratio is x.g1 / |x.g_j|, except j = 8
///   which uses -x.g8 on the part of the triangle above the switching line
///   v = (2 sqrt5 - 4)(1 - u).
inline MonotonicityReport monotonicity_check(FamilyTag family, int index, int grid_resolution = 50) {
  require(grid_resolution >= 1, "grid resolution must be >= 1");
  MonotonicityReport report;
  report.family = family;
  report.index = index;
  const double h = kFiniteDifferenceStep;

  switch (family.kind) {
    case FamilyKind::DualPolygonal: {
      const int n = family.n;
      require(n >= 3, "monotonicity needs n >= 3");
      require(index >= 1 && index <= n - 2, "polygonal monotonicity index must lie in [1, n-2]");
      const auto g = dual_polygonal(n);
      const Arc arc = make_arc(n);
      const auto m = static_cast<std::size_t>(index);
      auto ratio = [&](double a) { return direction_height(g, arc.direction(a), m); };
      const int expected = index % 2 == 0 ? 1 : -1;
      for (int i = 1; i <= grid_resolution; ++i) {
        const double a = arc.upper() * i / (grid_resolution + 1);
        ++report.points;
        detail::check_sign((ratio(a + h) - ratio(a - h)) / (2.0 * h), expected,
                           "dh/dalpha at " + std::to_string(a), report);
      }
      return report;
    }
    case FamilyKind::DualIcosahedral: {
      require(index >= 1 && index <= 3, "icosahedral monotonicity index must lie in [1, 3]");
      const auto g = dual_icosahedral();
      const Triangle t = icosahedral_domain();
      // denominator axis and its sign on T
      const std::size_t axis = index == 1 ? 3 : index == 2 ? 5 : 4;
      const double sign = index == 3 ? -1.0 : 1.0;
      auto ratio = [&](double u, double v) {
        const Vector x = t.point(u, v);
        return dot(x, g.column(0)) / (sign * dot(x, g.column(axis - 1)));
      };
      const detail::SignPattern pattern = index == 1   ? detail::SignPattern{1, -1}
                                          : index == 2 ? detail::SignPattern{1, 1}
                                                       : detail::SignPattern{-1, -1};
      detail::check_triangle_ratio(ratio, [](double, double) { return true; }, pattern, grid_resolution,
                                   report);
      return report;
    }
    case FamilyKind::DualDodecahedral: {
      detail::SignPattern pattern;
      switch (index) {
        case 2: pattern = {1, 1}; break;
        case 4: pattern = {0, -1}; break;
        case 5: pattern = {1, -1}; break;
        case 6: pattern = {1, 1}; break;
        case 7: pattern = {-1, -1}; break;
        case 8: pattern = {-1, -1}; break;
        case 9: pattern = {1, 1}; break;
        case 10: pattern = {-1, 1}; break;
        default: fail(ErrorKind::InvalidParameter, "dodecahedral monotonicity index must be one of 2,4,5,6,7,8,9,10");
      }
      const auto g = dual_dodecahedral();
      const Triangle t = dodecahedral_domain();
      const auto axis = static_cast<std::size_t>(index);
      auto ratio = [&](double u, double v) {
        const Vector x = t.point(u, v);
        const double den = dot(x, g.column(axis - 1));
        return dot(x, g.column(0)) / (axis == 8 ? -den : std::abs(den));
      };
      const double slope = 2.0 * constants::sqrt5 - 4.0;
      auto include = [&](double u, double v) { return axis != 8 || v - h > slope * (1.0 - u) + h; };
      detail::check_triangle_ratio(ratio, include, pattern, grid_resolution, report);
      return report;
    }
    case FamilyKind::Custom: break;
  }
  fail(ErrorKind::UnsupportedFamily, "monotonicity checks exist only for the built-in families");
}

/// Lower bound on h_m from a uniform grid over the domain plus one local
/// derivative-free refinement from the best grid point. Reports +inf only
/// when a sample has c_(m) exactly zero with c_(0) > 0.
inline ExtendedHeight domain_search(const GeneratorMatrix& g, std::size_t m, const FundamentalDomain& domain,
                                    int resolution) {
  require(m >= 1 && m + 1 <= g.n(), "m must lie in [1, n-1]");
  require(resolution >= 2, "search resolution must be >= 2");

  if (const auto* arc = std::get_if<Arc>(&domain)) {
    require(g.k() == 2, "arc domains need a k = 2 code");
    const double hi = arc->upper();
    auto f = [&](double a) { return direction_height(g, arc->direction(a), m); };
    double best = -1.0;
    double best_a = 0.0;
    int best_i = 0;
    for (int i = 0; i < resolution; ++i) {
      const double a = hi * i / (resolution - 1);
      const double r = f(a);
      if (std::isinf(r)) return ExtendedHeight::infinite(arc->direction(a));
      if (r > best) {
        best = r;
        best_a = a;
        best_i = i;
      }
    }
    // golden-section search inside the neighbouring grid cells
    const double invphi = constants::inv_phi;
    double lo = hi * std::max(0, best_i - 1) / (resolution - 1);
    double up = hi * std::min(resolution - 1, best_i + 1) / (resolution - 1);
    double x1 = up - invphi * (up - lo);
    double x2 = lo + invphi * (up - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < kRefinementIterations; ++it) {
      if (f1 > best) {
        best = f1;
        best_a = x1;
      }
      if (f2 > best) {
        best = f2;
        best_a = x2;
      }
      if (f1 >= f2) {
        up = x2;
        x2 = x1;
        f2 = f1;
        x1 = up - invphi * (up - lo);
        f1 = f(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + invphi * (up - lo);
        f2 = f(x2);
      }
    }
    return ExtendedHeight::finite(best, arc->direction(best_a));
  }

  const auto& tri = std::get<Triangle>(domain);
  require(g.k() == 3, "triangle domains need a k = 3 code");
  auto f = [&](double u, double v) { return direction_height(g, tri.point(u, v), m); };
  const double step0 = 1.0 / (resolution - 1);
  double best = -1.0;
  double bu = 0.0;
  double bv = 0.0;
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; i + j < resolution; ++j) {
      const double u = i * step0;
      const double v = j * step0;
      const double r = f(u, v);
      if (std::isinf(r)) return ExtendedHeight::infinite(tri.point(u, v));
      if (r > best) {
        best = r;
        bu = u;
        bv = v;
      }
    }
  }
  // Compass search over 32 directions. Maxima often sit on a ridge where
  // two order statistics cross, and a ridge at an odd angle needs a poll
  // direction close to it. Each failed poll halves the step; the pass ends
  // after kRefinementIterations halvings.
  constexpr int kDirections = 32;
  double dirs[kDirections][2];
  for (int d = 0; d < kDirections; ++d) {
    const double a = 2.0 * std::numbers::pi * d / kDirections;
    dirs[d][0] = std::cos(a);
    dirs[d][1] = std::sin(a);
  }
  double step = step0;
  for (int halvings = 0, polls = 0; halvings < kRefinementIterations && polls < kMaxPolls; ++polls) {
    double cand = best;
    double cu = bu;
    double cv = bv;
    for (const auto& d : dirs) {
      const double u = bu + d[0] * step;
      const double v = bv + d[1] * step;
      if (!in_standard_triangle(u, v)) continue;
      const double r = f(std::max(u, 0.0), std::max(v, 0.0));
      if (r > cand) {
        cand = r;
        cu = std::max(u, 0.0);
        cv = std::max(v, 0.0);
      }
    }
    if (cand > best) {
      best = cand;
      bu = cu;
      bv = cv;
    } else {
      step /= 2.0;
      ++halvings;
    }
  }
  return ExtendedHeight::finite(best, tri.point(bu, bv));
}

inline ExtendedHeight domain_search(const GeneratorMatrix& g, std::size_t m) {
  const auto domain = default_domain(g.family());
  const int res = std::holds_alternative<Arc>(domain) ? kDefaultArcResolution : kDefaultTriangleResolution;
  return domain_search(g, m, domain, res);
}

/// Best c_(0)/c_(m) over uniformly random unit information vectors.
inline ExtendedHeight random_direction_search(const GeneratorMatrix& g, std::size_t m, std::size_t samples,
                                              std::uint64_t seed) {
  require(m >= 1 && m + 1 <= g.n(), "m must lie in [1, n-1]");
  require(samples >= 1, "random search needs at least one sample");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector u(g.k());
  Vector best_u;
  double best = -1.0;
  for (std::size_t s = 0; s < samples; ++s) {
    for (double& x : u) x = normal(rng);
    const double len = norm(u);
    if (len == 0.0) continue;
    for (double& x : u) x /= len;
    const double r = direction_height(g, u, m);
    if (r > best) {
      best = r;
      best_u = u;
    }
  }
  if (std::isinf(best)) return ExtendedHeight::infinite(best_u);
  return ExtendedHeight::finite(best, best_u);
}

}  // namespace geoecc
