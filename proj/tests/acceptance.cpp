// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "geoecc/geoecc.hpp"

using namespace geoecc;

namespace {

const double kSqrt5 = std::sqrt(5.0);
const double kPhi = (1.0 + kSqrt5) / 2.0;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool parallel(const Vector& a, std::span<const double> b) {
  const double c = dot(a, b) / (norm(a) * norm(b));
  return std::abs(std::abs(c) - 1.0) < 1e-12;
}

void compare_profile(const MHeightProfile& got, const std::vector<double>& want, double tol, const std::string& what,
                     Outcome& o) {
  if (got.max_m() != want.size()) {
    o.fail(what + ": wrong profile length");
    return;
  }
  for (std::size_t m = 1; m <= want.size(); ++m)
    if (!heights_agree(got.at(m).value, want[m - 1], tol))
      o.fail(what + " m=" + std::to_string(m) + ": " + format_double(got.at(m).value) + " vs " +
             format_double(want[m - 1]));
}

const std::vector<double>& icos_table() {
  static const std::vector<double> t = {kSqrt5, kSqrt5, 2 + kSqrt5, INFINITY, INFINITY};
  return t;
}

const std::vector<double>& dode_table() {
  static const std::vector<double> t = {3 / kSqrt5, kPhi,       4 - kSqrt5,           3,       2 + kSqrt5,
                                        2 + kSqrt5, 5 + 2 * kSqrt5, INFINITY, INFINITY};
  return t;
}

std::vector<FamilyTag> builtin_families() {
  std::vector<FamilyTag> f;
  for (int n = 3; n <= 12; ++n) f.push_back(FamilyTag::dual_polygonal(n));
  f.push_back(FamilyTag::dual_icosahedral());
  f.push_back(FamilyTag::dual_dodecahedral());
  return f;
}

std::string label(FamilyTag f) {
  std::string s(family_name(f.kind));
  if (f.kind == FamilyKind::DualPolygonal) s += "(" + std::to_string(f.n) + ")";
  return s;
}

Outcome table_reproduction() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  compare_profile(exact_profile(dual_icosahedral()), icos_table(), 1e-6, "icosahedral", o);
  compare_profile(exact_profile(dual_dodecahedral()), dode_table(), 1e-6, "dodecahedral", o);
  const double s = seconds_since(t0);
  if (s >= 60.0) o.fail("took " + std::to_string(s) + " s");
  if (o.pass) o.detail = "both profiles match, " + std::to_string(s) + " s";
  return o;
}

Outcome polygonal_cross_check() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  for (int n = 3; n <= 12; ++n) {
    const auto exact = exact_profile(dual_polygonal(n));
    for (int m = 1; m <= n - 1; ++m) {
      const double a = polygonal_height(n, m).value;
      const double b = exact.at(static_cast<std::size_t>(m)).value;
      if (!heights_agree(a, b, 1e-6))
        o.fail("n=" + std::to_string(n) + " m=" + std::to_string(m) + ": " + format_double(a) + " vs " +
               format_double(b));
      if ((m == n - 1) != std::isinf(a) || std::isinf(a) != std::isinf(b)) o.fail("infinity mismatch");
    }
  }
  const double s = seconds_since(t0);
  if (s >= 120.0) o.fail("took " + std::to_string(s) + " s");
  if (o.pass) o.detail = "n = 3..12 agree, " + std::to_string(s) + " s";
  return o;
}

Outcome low_order_dodecahedral() {
  Outcome o;
  const auto g = dual_dodecahedral();
  const auto h1 = dodecahedral_height(1);
  const auto h2 = dodecahedral_height(2);
  if (std::abs(h1.value - 3 / kSqrt5) > 1e-12) o.fail("h1 value");
  if (std::abs(h2.value - kPhi) > 1e-12) o.fail("h2 value");
  if (!parallel(*h1.witness, g.column(0))) o.fail("h1 witness not parallel to g1");
  Vector xb(3);
  for (std::size_t i = 0; i < 3; ++i) xb[i] = (g.column(0)[i] + g.column(4)[i]) / 2;
  if (!parallel(*h2.witness, xb)) o.fail("h2 witness not parallel to x_B");
  if (std::abs(direction_height(g, *h1.witness, 1) - h1.value) > 1e-9) o.fail("h1 witness ratio");
  if (std::abs(direction_height(g, *h2.witness, 2) - h2.value) > 1e-9) o.fail("h2 witness ratio");
  if (o.pass) o.detail = "3/sqrt5 at g1, phi at x_B";
  return o;
}

Outcome candidate_evaluation() {
  Outcome o;
  const auto report = candidates_suite(0, 0);
  for (const auto& c : report.checks)
    if (!c.passed()) o.fail(c.name + ": " + c.violations.front().what);
  // independent of the suite: recompute directly
  const auto g = dual_dodecahedral();
  const auto t = dodecahedral_domain();
  for (std::size_t m = 3; m <= 7; ++m) {
    double best = 0;
    for (const auto& [u, v] : dodecahedral_candidates()) best = std::max(best, direction_height(g, t.point(u, v), m));
    if (std::abs(best - dode_table()[m - 1]) > 1e-9) o.fail("m=" + std::to_string(m));
  }
  if (o.pass) o.detail = "m = 3..7 match";
  return o;
}

Outcome rank_order_suites() {
  Outcome o;
  std::size_t evaluated = 0;
  for (const char* name : {"polygonal-order", "icos-chain", "dode-ranks"}) {
    const auto r = run_suite(name, 1000, 0);
    for (const auto& c : r.checks) {
      evaluated += c.evaluated;
      if (!c.passed()) o.fail(std::string(name) + " " + c.name + ": " + c.violations.front().what);
    }
  }
  if (o.pass) o.detail = std::to_string(evaluated) + " samples, zero violations";
  return o;
}

Outcome monotonicity() {
  Outcome o;
  const auto r = monotonicity_suite(0, 0);
  std::size_t assertions = 0;
  for (const auto& c : r.checks) {
    assertions += c.evaluated;
    if (!c.passed()) o.fail(c.name + ": " + c.violations.front().what);
    if (c.evaluated == 0) o.fail(c.name + ": nothing asserted");
  }
  if (o.pass) o.detail = std::to_string(r.checks.size()) + " patterns, " + std::to_string(assertions) + " sign assertions";
  return o;
}

Outcome search_vs_exact() {
  Outcome o;
  double worst_gap = 0;
  for (const auto f : builtin_families()) {
    const auto g = builtin_matrix(f);
    const auto exact = closed_profile(f);
    for (std::size_t m = 1; m <= exact.max_m(); ++m) {
      const double h = exact.at(m).value;
      if (std::isinf(h)) continue;
      const double s = domain_search(g, m).value;
      worst_gap = std::max(worst_gap, h - s);
      if (s > h + 1e-9) o.fail(label(f) + " m=" + std::to_string(m) + " exceeds exact");
      if (h - s > 1e-4) o.fail(label(f) + " m=" + std::to_string(m) + " gap " + format_double(h - s));
    }
  }
  if (o.pass) o.detail = "largest gap " + format_double(worst_gap);
  return o;
}

Outcome symmetry_invariance() {
  Outcome o;
  std::mt19937_64 rng(0);
  std::size_t trials = 0;
  for (const auto f : builtin_families()) {
    const auto g = builtin_matrix(f);
    const auto base = exact_profile(g);
    for (int t = 0; t < 100; ++t) {
      auto cols = g.columns();
      std::shuffle(cols.begin(), cols.end(), rng);
      for (auto& c : cols)
        if (rng() & 1U)
          for (double& x : c) x = -x;
      const auto p = exact_profile(from_columns(std::move(cols)));
      ++trials;
      for (std::size_t m = 1; m <= base.max_m(); ++m)
        if (!heights_agree(base.at(m).value, p.at(m).value, 1e-9))
          o.fail(label(f) + " trial " + std::to_string(t) + " m=" + std::to_string(m));
    }
  }
  if (o.pass) o.detail = std::to_string(trials) + " transformed matrices";
  return o;
}

Outcome capability_arithmetic() {
  Outcome o;
  const double r = required_ratio(ExtendedHeight::finite(kSqrt5));
  if (std::abs(r - 2 * (kSqrt5 + 1)) > 1e-12) o.fail("required_ratio(sqrt5) = " + format_double(r));
  const std::vector<MHeightProfile> profiles = {exact_profile(dual_icosahedral()), exact_profile(dual_dodecahedral())};
  std::mt19937_64 rng(0);
  std::uniform_real_distribution<double> ratio(2.0, 25.0);
  std::size_t feasible = 0;
  for (int probe = 0; probe < 1000; ++probe) {
    const auto& p = profiles[static_cast<std::size_t>(probe % 2)];
    const int max_m = static_cast<int>(p.max_m());
    const double x = ratio(rng);
    const int tau = static_cast<int>(rng() % static_cast<std::uint64_t>(max_m / 2 + 1));
    const int sigma_hi = max_m - 2 * tau;
    int sigma = static_cast<int>(rng() % static_cast<std::uint64_t>(sigma_hi + 1));
    if (tau == 0 && sigma == 0) sigma = 1;
    const auto pairs = feasible_pairs(p, x);
    const bool listed = std::find(pairs.begin(), pairs.end(), CapabilityPair{tau, sigma}) != pairs.end();
    const bool checked = check_spec(p, {tau, sigma, 1.0, x});
    feasible += checked;
    if (listed != checked) o.fail("probe " + std::to_string(probe) + " disagrees");
  }
  if (o.pass) o.detail = "1000 probes consistent, " + std::to_string(feasible) + " feasible";
  return o;
}

Outcome mds_checks() {
  Outcome o;
  for (int n = 2; n <= 16; ++n)
    if (!is_mds(dual_polygonal(n))) o.fail("dual_polygonal(" + std::to_string(n) + ")");
  if (!is_mds(dual_icosahedral())) o.fail("icosahedral");
  if (!is_mds(dual_dodecahedral())) o.fail("dodecahedral");
  if (is_mds(from_columns({{1, 0, 0}, {0, 1, 0}, {2, 0, 0}, {0, 0, 1}}))) o.fail("parallel columns accepted");
  if (o.pass) o.detail = "built-ins MDS, parallel columns rejected";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"table reproduction (LP engine)", table_reproduction},
      {"polygonal closed form vs LP", polygonal_cross_check},
      {"dodecahedral m=1,2 values and witnesses", low_order_dodecahedral},
      {"dodecahedral candidate points", candidate_evaluation},
      {"rank-order suites", rank_order_suites},
      {"monotonicity suites", monotonicity},
      {"domain search vs exact", search_vs_exact},
      {"symmetry invariance", symmetry_invariance},
      {"capability arithmetic", capability_arithmetic},
      {"MDS checks", mds_checks},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::printf("[%s] %zu. %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
