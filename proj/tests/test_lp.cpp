#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "geoecc/codes.hpp"
#include "geoecc/height_closed.hpp"
#include "geoecc/height_lp.hpp"
#include "oracles.hpp"

using namespace geoecc;

namespace {

LPProblem box2() {
  LPProblem p;
  p.dim = 2;
  p.objective = {1, 1};
  p.inequalities = {{{-1, 0}, -1}, {{0, -1}, -1}, {{1, 0}, 0}, {{0, 1}, 0}};
  return p;
}

}  // namespace

TEST(SolveLp, OneDimensional) {
  LPProblem upper{1, {1}, {}, {{{-1}, -1}}};
  auto r = solve_lp(upper);
  ASSERT_EQ(r.status, LPStatus::Optimal);
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  EXPECT_NEAR(r.point[0], 1.0, 1e-12);

  LPProblem lower{1, {1}, {}, {{{1}, 0}}};
  r = solve_lp(lower);
  ASSERT_EQ(r.status, LPStatus::Unbounded);
  EXPECT_GT(r.point[0], 0.0);
}

TEST(SolveLp, BoxCorner) {
  const auto r = solve_lp(box2());
  ASSERT_EQ(r.status, LPStatus::Optimal);
  EXPECT_NEAR(r.value, 2.0, 1e-12);
  EXPECT_NEAR(r.point[0], 1.0, 1e-12);
  EXPECT_NEAR(r.point[1], 1.0, 1e-12);
}

TEST(SolveLp, Infeasible) {
  LPProblem p{1, {1}, {}, {{{1}, 2}, {{-1}, -1}}};  // u >= 2 and u <= 1
  EXPECT_EQ(solve_lp(p).status, LPStatus::Infeasible);

  LPProblem eq{2, {1, 0}, {{{1, 0}, 1}, {{1, 0}, 2}}, {}};
  EXPECT_EQ(solve_lp(eq).status, LPStatus::Infeasible);
}

TEST(SolveLp, EqualityConstrained) {
  // maximize u1 on the segment u1 + u2 = 1, u >= 0
  LPProblem p{2, {1, 0}, {{{1, 1}, 1}}, {{{1, 0}, 0}, {{0, 1}, 0}}};
  const auto r = solve_lp(p);
  ASSERT_EQ(r.status, LPStatus::Optimal);
  EXPECT_NEAR(r.value, 1.0, 1e-12);
  EXPECT_NEAR(r.point[1], 0.0, 1e-12);
}

TEST(SolveLp, LinealityDirections) {
  // u2 is free and unused: the optimum is still finite
  LPProblem flat{2, {1, 0}, {}, {{{-1, 0}, -3}}};
  auto r = solve_lp(flat);
  ASSERT_EQ(r.status, LPStatus::Optimal);
  EXPECT_NEAR(r.value, 3.0, 1e-12);

  // objective moves along the free direction
  LPProblem open{2, {0, 1}, {}, {{{-1, 0}, -3}}};
  EXPECT_EQ(solve_lp(open).status, LPStatus::Unbounded);

  // no constraints at all
  LPProblem none{3, {0, 0, 0}, {}, {}};
  r = solve_lp(none);
  EXPECT_EQ(r.status, LPStatus::Optimal);
  EXPECT_NEAR(r.value, 0.0, 1e-12);
}

TEST(SolveLp, UnboundedRayIsValid) {
  // cone u1 >= 0, u2 >= 0, maximize u1 - u2 / 2
  LPProblem p{2, {1, -0.5}, {}, {{{1, 0}, 0}, {{0, 1}, 0}}};
  const auto r = solve_lp(p);
  ASSERT_EQ(r.status, LPStatus::Unbounded);
  EXPECT_GT(r.point[0] - 0.5 * r.point[1], 0.0);
  EXPECT_GE(r.point[0], -1e-12);
  EXPECT_GE(r.point[1], -1e-12);
}

TEST(SolveLp, MatchesBruteForceOnRandomPolygons) {
  // Random bounded 2D problems: check the optimum against a vertex scan
  // done here by pairwise intersection.
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
  std::uniform_real_distribution<double> off(0.5, 2.0);
  for (int t = 0; t < 200; ++t) {
    LPProblem p;
    p.dim = 2;
    const double oa = ang(rng);
    p.objective = {std::cos(oa), std::sin(oa)};
    for (int i = 0; i < 7; ++i) {
      const double a = ang(rng);
      p.inequalities.push_back({{-std::cos(a), -std::sin(a)}, -off(rng)});  // a.u <= off
    }
    // enclose in a box so the problem is bounded
    for (auto [x, y] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}})
      p.inequalities.push_back({{-x, -y}, -5.0});
    double best = -INFINITY;
    const auto& rows = p.inequalities;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = i + 1; j < rows.size(); ++j) {
        const double a = rows[i].coeffs[0], b = rows[i].coeffs[1], c = rows[j].coeffs[0], d = rows[j].coeffs[1];
        const double det = a * d - b * c;
        if (std::abs(det) < 1e-12) continue;
        const double x = (rows[i].rhs * d - b * rows[j].rhs) / det;
        const double y = (a * rows[j].rhs - rows[i].rhs * c) / det;
        bool ok = true;
        for (const auto& r : rows) ok = ok && r.coeffs[0] * x + r.coeffs[1] * y >= r.rhs - 1e-9;
        if (ok) best = std::max(best, p.objective[0] * x + p.objective[1] * y);
      }
    }
    const auto r = solve_lp(p);
    ASSERT_EQ(r.status, LPStatus::Optimal);
    EXPECT_NEAR(r.value, best, 1e-9);
  }
}

TEST(SolveLp, CapacityAndValidation) {
  LPProblem big;
  big.dim = 9;
  big.objective.assign(9, 1.0);
  try {
    solve_lp(big);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Capacity);
  }

  LPProblem many{1, {1}, {}, std::vector<LinearConstraint>(10001, LinearConstraint{{1}, 0})};
  try {
    solve_lp(many);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Capacity);
  }

  LPProblem bad{2, {1}, {}, {}};
  EXPECT_THROW(solve_lp(bad), Error);
  LPProblem nan{1, {NAN}, {}, {}};
  EXPECT_THROW(solve_lp(nan), Error);
}

TEST(ConfigurationCounts, Formula) {
  EXPECT_EQ(configuration_family_size(6, 1), 6u * 1 * 2);
  EXPECT_EQ(configuration_family_size(10, 3), 120u * 3 * 8);
  EXPECT_EQ(configuration_lp_count(10, 3), 120u * 3 * 8 * 7);
}

TEST(ConfigurationLp, MatchesFastPath) {
  const auto g = dual_icosahedral();
  LPHeightStats stats;
  exact_mheight(g, 2, &stats, {1, false});
  EXPECT_EQ(stats.lps_solved, configuration_lp_count(6, 2));
  EXPECT_EQ(stats.optimal + stats.unbounded + stats.infeasible, stats.lps_solved);

  // Every configuration LP built the slow way stays below the height.
  const double h = exact_mheight(g, 2).value;
  Configuration cfg{{0, 2}, 0, 4, {1, -1}};
  const auto r = solve_lp(configuration_lp(g, cfg));
  if (r.status == LPStatus::Optimal) EXPECT_LE(r.value, h + 1e-9);
  EXPECT_NE(r.status, LPStatus::Unbounded);
}

TEST(ExactHeight, TableValues) {
  const auto ico = exact_profile(dual_icosahedral());
  for (std::size_t m = 1; m <= 3; ++m) EXPECT_NEAR(ico.at(m).value, oracle::kIcos[m - 1], 1e-9);
  EXPECT_TRUE(ico.at(4).is_infinite());
  EXPECT_TRUE(ico.at(5).is_infinite());
  EXPECT_NEAR(exact_mheight(dual_dodecahedral(), 7).value, 5 + 2 * oracle::kSqrt5, 1e-9);
}

TEST(ExactHeight, PolygonalSmall) {
  const auto p3 = exact_profile(dual_polygonal(3));
  EXPECT_NEAR(p3.at(1).value, 2.0, 1e-12);
  EXPECT_TRUE(p3.at(2).is_infinite());
  EXPECT_TRUE(exact_mheight(dual_polygonal(4), 3).is_infinite());
  EXPECT_NEAR(exact_mheight(dual_polygonal(4), 2).value, 1 + std::sqrt(2.0), 1e-12);
}

TEST(ExactHeight, IdentityAndDegenerate) {
  EXPECT_TRUE(exact_profile(from_columns({{1, 0}, {0, 1}})).at(1).is_infinite());
  // two parallel columns: (0,1) zeroes both of them
  EXPECT_TRUE(exact_mheight(from_columns({{1, 0}, {2, 0}, {0, 1}}), 1).is_infinite());
  EXPECT_THROW(exact_mheight(dual_polygonal(4), 0), Error);
  EXPECT_THROW(exact_mheight(dual_polygonal(4), 4), Error);
}

TEST(ExactHeight, WitnessReproducesValue) {
  for (const auto& g : {dual_polygonal(7), dual_icosahedral(), dual_dodecahedral()}) {
    const auto p = exact_profile(g);
    for (std::size_t m = 1; m <= p.max_m(); ++m) {
      const auto& h = p.at(m);
      ASSERT_TRUE(h.witness);
      const double r = direction_height(g, *h.witness, m);
      if (h.is_infinite()) {
        // a ray: c_(m) vanishes up to rounding
        const auto c = encode(g, *h.witness);
        EXPECT_LT(c.order_stats[m], 1e-9 * c.order_stats[0]) << m;
      } else {
        EXPECT_NEAR(r, h.value, 1e-9 * h.value) << m;
      }
    }
  }
}

TEST(ExactHeight, DominatesRandomDirections) {
  for (const auto& g : {dual_polygonal(5), dual_icosahedral(), dual_dodecahedral()}) {
    const auto p = exact_profile(g);
    for (std::size_t m = 1; m <= p.max_m(); ++m) {
      if (p.at(m).is_infinite()) continue;
      EXPECT_LE(oracle::random_sweep(g.columns(), m, 20000, 11), p.at(m).value + 1e-9);
    }
  }
}

TEST(ExactHeight, RandomMatricesAgainstSampling) {
  // The sampled maximum never exceeds the LP value and gets close to it.
  std::mt19937 rng(5);
  std::normal_distribution<double> normal;
  for (int t = 0; t < 4; ++t) {
    std::vector<Vector> cols;
    for (int j = 0; j < 6; ++j) cols.push_back({normal(rng), normal(rng), normal(rng)});
    const auto g = from_columns(cols);
    for (std::size_t m = 1; m <= 2; ++m) {
      const double h = exact_mheight(g, m).value;
      const double s = oracle::random_sweep(cols, m, 100000, 13);
      EXPECT_LE(s, h * (1 + 1e-9));
      EXPECT_GE(s, h * 0.95);
    }
  }
}

TEST(ExactHeight, ScaleAndSymmetryInvariance) {
  const auto g = dual_dodecahedral();
  auto cols = g.columns();
  for (auto& c : cols)
    for (double& x : c) x *= 3.5;
  std::swap(cols[0], cols[7]);
  for (double& x : cols[3]) x = -x;
  const auto a = exact_profile(g);
  const auto b = exact_profile(from_columns(cols));
  for (std::size_t m = 1; m <= a.max_m(); ++m) EXPECT_TRUE(heights_agree(a.at(m).value, b.at(m).value, 1e-9));
}

TEST(ExactHeight, DeterministicAcrossThreadCounts) {
  const auto g = dual_icosahedral();
  for (std::size_t m = 1; m <= 5; ++m) {
    const auto one = exact_mheight(g, m, nullptr, {1, true});
    const auto many = exact_mheight(g, m, nullptr, {4, true});
    EXPECT_EQ(one.value, many.value);
    EXPECT_EQ(one.witness, many.witness);
  }
}

TEST(ExactHeight, CapacityBeyondEightDimensions) {
  std::vector<Vector> cols;
  for (int j = 0; j < 10; ++j) {
    Vector c(9, 0.0);
    c[static_cast<std::size_t>(j % 9)] = 1.0;
    c[static_cast<std::size_t>((j + 1) % 9)] += 0.5;
    cols.push_back(c);
  }
  try {
    exact_mheight(from_columns(cols), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Capacity);
  }
}
