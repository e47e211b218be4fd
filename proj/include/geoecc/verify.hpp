#pragma once

// Named verification suites behind `geoecc verify`. Each suite is a list of
// checks; a check passes when it records no violations.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "geoecc/codes.hpp"
#include "geoecc/domains.hpp"
#include "geoecc/error.hpp"
#include "geoecc/height.hpp"
#include "geoecc/height_closed.hpp"
#include "geoecc/height_lp.hpp"
#include "geoecc/height_search.hpp"
#include "geoecc/json_io.hpp"

namespace geoecc {

struct CheckResult {
  std::string name;
  std::size_t evaluated = 0;
  std::vector<Violation> violations;

  bool passed() const { return violations.empty(); }
};

struct SuiteReport {
  std::string suite;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed()) return false;
    return true;
  }
};

inline constexpr std::size_t kDefaultSuiteSamples = 1000;
inline constexpr double kCandidateTol = 1e-9;
inline constexpr double kCrossCheckTol = 1e-6;

inline const std::vector<std::string_view>& suite_names() {
  static const std::vector<std::string_view> names = {"polygonal-order", "icos-chain", "dode-ranks",
                                                      "monotonicity",    "candidates", "cross-check"};
  return names;
}

namespace detail {

// Reports keep the first few violations; the count is what matters.
inline constexpr std::size_t kMaxReportedViolations = 20;

inline void absorb(CheckResult& check, const std::vector<Violation>& found, std::string_view where) {
  for (const auto& v : found) {
    if (check.violations.size() >= kMaxReportedViolations) return;
    check.violations.push_back({where.empty() ? v.what : std::string(where) + ": " + v.what, v.magnitude});
  }
}

/// Uniform point of D = {u, v >= 0, u + v <= 1} by folding the unit square.
inline std::pair<double, double> sample_triangle(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double u = unit(rng);
  double v = unit(rng);
  if (u + v > 1.0) {
    u = 1.0 - u;
    v = 1.0 - v;
  }
  return {u, v};
}

inline std::string point_label(double u, double v) {
  return "(" + format_double(u) + ", " + format_double(v) + ")";
}

template <typename Check>
CheckResult triangle_suite(std::string name, std::size_t samples, std::uint64_t seed, Check&& check) {
  CheckResult result{std::move(name)};
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto [u, v] = sample_triangle(rng);
    absorb(result, check(u, v).violations, point_label(u, v));
    ++result.evaluated;
  }
  return result;
}

inline std::vector<FamilyTag> cross_check_families() {
  std::vector<FamilyTag> families;
  for (int n = 3; n <= 12; ++n) families.push_back(FamilyTag::dual_polygonal(n));
  families.push_back(FamilyTag::dual_icosahedral());
  families.push_back(FamilyTag::dual_dodecahedral());
  return families;
}

inline std::string family_label(FamilyTag f) {
  std::string s(family_name(f.kind));
  if (f.kind == FamilyKind::DualPolygonal) s += " n=" + std::to_string(f.n);
  return s;
}

}  // namespace detail

inline SuiteReport polygonal_order_suite(std::size_t samples, std::uint64_t seed) {
  SuiteReport report{"polygonal-order", samples, seed};
  std::mt19937_64 rng(seed);
  for (int n = 3; n <= 12; ++n) {
    CheckResult check{"dual-polygonal n=" + std::to_string(n)};
    std::uniform_real_distribution<double> alpha(0.0, make_arc(n).upper());
    for (std::size_t s = 0; s < samples; ++s) {
      const double a = alpha(rng);
      detail::absorb(check, polygonal_order_indices(n, a).violations, "alpha=" + format_double(a));
      ++check.evaluated;
    }
    report.checks.push_back(std::move(check));
  }
  return report;
}

inline SuiteReport icos_chain_suite(std::size_t samples, std::uint64_t seed) {
  SuiteReport report{"icos-chain", samples, seed};
  report.checks.push_back(detail::triangle_suite("icosahedral chain", samples, seed, icosahedral_chain_check));
  return report;
}

inline SuiteReport dode_ranks_suite(std::size_t samples, std::uint64_t seed) {
  SuiteReport report{"dode-ranks", samples, seed};
  report.checks.push_back(detail::triangle_suite("dodecahedral ranks", samples, seed, dodecahedral_rank_check));
  return report;
}

/// Deterministic grid suite; samples and seed are recorded but unused.
inline SuiteReport monotonicity_suite(std::size_t samples, std::uint64_t seed) {
  SuiteReport report{"monotonicity", samples, seed};
  auto add = [&](FamilyTag family, int index, std::string name) {
    const auto r = monotonicity_check(family, index);
    CheckResult check{std::move(name), r.assertions};
    detail::absorb(check, r.violations, "");
    report.checks.push_back(std::move(check));
  };
  for (int n = 3; n <= 12; ++n)
    for (int m = 1; m <= n - 2; ++m)
      add(FamilyTag::dual_polygonal(n), m, "dual-polygonal n=" + std::to_string(n) + " m=" + std::to_string(m));
  for (int m = 1; m <= 3; ++m) add(FamilyTag::dual_icosahedral(), m, "dual-icosahedral m=" + std::to_string(m));
  for (int j : {2, 4, 5, 6, 7, 8, 9, 10})
    add(FamilyTag::dual_dodecahedral(), j, "dual-dodecahedral axis=" + std::to_string(j));
  return report;
}

/// Best ratio over the dodecahedral candidate points against the closed form.
inline SuiteReport candidates_suite(std::size_t samples, std::uint64_t seed) {
  SuiteReport report{"candidates", samples, seed};
  const auto g = dual_dodecahedral();
  const auto t = dodecahedral_domain();
  for (std::size_t m = 3; m <= 7; ++m) {
    CheckResult check{"dual-dodecahedral m=" + std::to_string(m)};
    double best = 0.0;
    for (const auto& [u, v] : dodecahedral_candidates()) {
      best = std::max(best, direction_height(g, t.point(u, v), m));
      ++check.evaluated;
    }
    const double expected = dodecahedral_height(static_cast<int>(m)).value;
    if (!heights_agree(best, expected, kCandidateTol))
      check.violations.push_back({"candidate maximum " + format_double(best) + " differs from " +
                                      format_double(expected),
                                  std::abs(best - expected)});
    report.checks.push_back(std::move(check));
  }
  return report;
}

/// Closed form against the LP engine for every built-in family. With
/// samples > 0, random directions must also stay below the closed form.
inline SuiteReport cross_check_suite(std::size_t samples, std::uint64_t seed) {
  SuiteReport report{"cross-check", samples, seed};
  for (const FamilyTag family : detail::cross_check_families()) {
    const auto g = builtin_matrix(family);
    const auto closed = closed_profile(family);
    const auto exact = exact_profile(g);
    CheckResult check{detail::family_label(family) + " closed vs lp"};
    for (std::size_t m = 1; m <= closed.max_m(); ++m) {
      const double a = closed.at(m).value;
      const double b = exact.at(m).value;
      ++check.evaluated;
      if (!heights_agree(a, b, kCrossCheckTol))
        check.violations.push_back({"m=" + std::to_string(m) + ": closed " + format_double(a) + " vs lp " +
                                        format_double(b),
                                    std::isinf(a) || std::isinf(b) ? INFINITY : std::abs(a - b)});
    }
    report.checks.push_back(std::move(check));

    if (samples == 0) continue;
    CheckResult bound{detail::family_label(family) + " random directions"};
    for (std::size_t m = 1; m <= closed.max_m(); ++m) {
      const double h = closed.at(m).value;
      if (std::isinf(h)) continue;
      const double r = random_direction_search(g, m, samples, seed + m).value;
      ++bound.evaluated;
      if (r > h + 1e-9)
        bound.violations.push_back({"m=" + std::to_string(m) + ": sample " + format_double(r) +
                                        " exceeds " + format_double(h),
                                    r - h});
    }
    report.checks.push_back(std::move(bound));
  }
  return report;
}

inline SuiteReport run_suite(std::string_view name, std::size_t samples = kDefaultSuiteSamples,
                             std::uint64_t seed = 0) {
  if (name == "polygonal-order") return polygonal_order_suite(samples, seed);
  if (name == "icos-chain") return icos_chain_suite(samples, seed);
  if (name == "dode-ranks") return dode_ranks_suite(samples, seed);
  if (name == "monotonicity") return monotonicity_suite(samples, seed);
  if (name == "candidates") return candidates_suite(samples, seed);
  if (name == "cross-check") return cross_check_suite(samples, seed);
  fail(ErrorKind::InvalidParameter, "unknown suite: " + std::string(name));
}

inline Json to_json(const SuiteReport& r) {
  Json j;
  j["suite"] = r.suite;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["passed"] = r.passed();
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json cj;
    cj["name"] = c.name;
    cj["evaluated"] = c.evaluated;
    cj["passed"] = c.passed();
    cj["violations"] = violations_json(c.violations);
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  return j;
}

}  // namespace geoecc
