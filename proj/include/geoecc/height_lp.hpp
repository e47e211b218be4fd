#pragma once

// Exact m-height of an arbitrary real generator matrix.
//
// For a nonzero codeword with c_(m) > 0 rescale so that c_(m) = 1. Let X be
// the m coordinates ranked above position m, a the largest one, b the
// coordinate at rank m. Then |c_j| >= 1 on X, c_b = +-1, |c_j| <= 1
// elsewhere, and h_m = |c_a|. Fixing the signs on X turns each choice
// (X, a, b, signs) into a linear program; the code's m-height is the largest
// optimum over the whole family, and +inf as soon as one of them is
// unbounded. The sign of c_b is fixed to +1 because negating u negates the
// codeword.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "geoecc/codes.hpp"
#include "geoecc/height.hpp"
#include "geoecc/lp.hpp"

namespace geoecc {

struct Configuration {
  std::vector<std::size_t> top;  // X, |X| = m
  std::size_t max_index = 0;      // a, in X
  std::size_t pivot = 0;          // b, not in X
  std::vector<int> signs;         // signs[i] applies to top[i]
};

/// The LP for one configuration. Variables are the information vector u.
inline LPProblem configuration_lp(const GeneratorMatrix& g, const Configuration& cfg) {
  const std::size_t k = g.k();
  LPProblem p;
  p.dim = k;
  p.objective.assign(k, 0.0);
  std::vector<char> in_top(g.n(), 0);
  for (std::size_t i = 0; i < cfg.top.size(); ++i) {
    const std::size_t j = cfg.top[i];
    in_top[j] = 1;
    const auto col = g.column(j);
    const double s = cfg.signs[i];
    Vector a(col.begin(), col.end());
    for (double& x : a) x *= s;
    if (j == cfg.max_index) p.objective = a;
    p.inequalities.push_back({std::move(a), 1.0});
  }
  const auto pivot = g.column(cfg.pivot);
  p.equalities.push_back({Vector(pivot.begin(), pivot.end()), 1.0});
  for (std::size_t j = 0; j < g.n(); ++j) {
    if (in_top[j] || j == cfg.pivot) continue;
    const auto col = g.column(j);
    Vector lo(col.begin(), col.end());
    Vector hi(col.begin(), col.end());
    for (double& x : hi) x = -x;
    p.inequalities.push_back({std::move(lo), -1.0});
    p.inequalities.push_back({std::move(hi), -1.0});
  }
  return p;
}

/// Number of (X, a, signs) triples: C(n,m) * m * 2^m.
inline std::uint64_t configuration_family_size(std::size_t n, std::size_t m) {
  std::uint64_t binom = 1;
  for (std::size_t i = 0; i < m; ++i) binom = binom * (n - i) / (i + 1);
  return binom * m * (std::uint64_t{1} << m);
}

/// Number of LPs in the full family, one per pivot b outside X.
inline std::uint64_t configuration_lp_count(std::size_t n, std::size_t m) {
  return configuration_family_size(n, m) * (n - m);
}

struct LPHeightStats {
  std::uint64_t lps_solved = 0;
  std::uint64_t optimal = 0;
  std::uint64_t unbounded = 0;
  std::uint64_t infeasible = 0;
  bool short_circuited = false;
};

struct LPHeightOptions {
  unsigned threads = 0;  // 0 = hardware concurrency
  bool short_circuit = true;
};

namespace detail {

struct ChunkResult {
  double best = -std::numeric_limits<double>::infinity();
  Vector witness;
  bool unbounded = false;
  Vector ray;
  LPHeightStats stats;
};

/// Unit columns and their inverse norms, shared by every configuration LP.
struct NormalizedColumns {
  std::vector<SmallVec> raw;
  std::vector<SmallVec> unit;
  std::vector<double> inv_norm;  // 0 for a zero column
};

inline NormalizedColumns normalized_columns(const GeneratorMatrix& g) {
  NormalizedColumns out;
  const auto k = static_cast<Eigen::Index>(g.k());
  for (std::size_t j = 0; j < g.n(); ++j) {
    const auto col = g.column(j);
    SmallVec v = Eigen::Map<const Eigen::VectorXd>(col.data(), k);
    const double len = v.norm();
    out.raw.push_back(v);
    out.unit.push_back(len > 0.0 ? SmallVec(v / len) : SmallVec(SmallVec::Zero(k)));
    out.inv_norm.push_back(len > 0.0 ? 1.0 / len : 0.0);
  }
  return out;
}

/// Fills `np` with the row-normalized form of configuration_lp(g, cfg)
/// without the intermediate LPProblem. Must stay equivalent to
/// normalize(configuration_lp(g, cfg)).
inline void fill_configuration(const NormalizedColumns& cols, const Configuration& cfg,
                               std::span<const char> in_top, NormalizedProblem& np) {
  const auto k = cols.unit.front().size();
  np.dim = k;
  np.eq.clear();
  np.ineq.clear();
  np.trivially_infeasible = false;
  np.objective = SmallVec::Zero(k);
  for (std::size_t i = 0; i < cfg.top.size(); ++i) {
    const std::size_t j = cfg.top[i];
    const double s = cfg.signs[i];
    if (j == cfg.max_index) np.objective = s * cols.raw[j];
    if (cols.inv_norm[j] == 0.0) {
      np.trivially_infeasible = true;  // 0 >= 1
      continue;
    }
    np.ineq.push_back({s * cols.unit[j], cols.inv_norm[j]});
  }
  if (cols.inv_norm[cfg.pivot] == 0.0) {
    np.trivially_infeasible = true;  // 0 = 1
  } else {
    np.eq.push_back({cols.unit[cfg.pivot], cols.inv_norm[cfg.pivot]});
  }
  for (std::size_t j = 0; j < in_top.size(); ++j) {
    if (in_top[j] || j == cfg.pivot || cols.inv_norm[j] == 0.0) continue;
    np.ineq.push_back({cols.unit[j], -cols.inv_norm[j]});
    np.ineq.push_back({-cols.unit[j], -cols.inv_norm[j]});
  }
}

/// Whether s_j (u . g_j) >= 1 can hold for the first `count` members of X.
inline bool sign_prefix_feasible(const NormalizedColumns& cols, const Configuration& cfg, std::size_t count,
                                 NormalizedProblem& cone) {
  const auto k = cols.unit.front().size();
  cone.dim = k;
  cone.eq.clear();
  cone.ineq.clear();
  cone.trivially_infeasible = false;
  cone.objective = SmallVec::Zero(k);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = cfg.top[i];
    if (cols.inv_norm[j] == 0.0) return false;
    cone.ineq.push_back({cfg.signs[i] * cols.unit[j], cols.inv_norm[j]});
  }
  return solve_normalized(cone).status != LPStatus::Infeasible;
}

/// All configurations sharing one top set X, in a fixed order.
///
/// Signs are assigned depth first. Every LP of a sign pattern contains the
/// rows s_j (u . g_j) >= 1 on X, so a prefix whose rows are already
/// infeasible rules out its whole subtree; only sign patterns realized by
/// some u reach the LPs. The feasible set further depends on (signs, b) but
/// not on a, so each polyhedron is scanned once for the m objectives.
inline ChunkResult solve_chunk(const GeneratorMatrix& g, const NormalizedColumns& cols,
                               std::span<const std::size_t> top) {
  ChunkResult out;
  const std::size_t m = top.size();
  const std::size_t n = g.n();
  const std::size_t k = g.k();
  std::vector<char> in_top(n, 0);
  for (std::size_t j : top) in_top[j] = 1;

  Configuration cfg;
  cfg.top.assign(top.begin(), top.end());
  cfg.signs.assign(m, 1);
  NormalizedProblem np;
  np.eq.reserve(k + 1);
  np.ineq.reserve(2 * n);
  NormalizedProblem cone;
  cone.eq.reserve(k);
  cone.ineq.reserve(m);

  // returns false once an unbounded LP is found
  auto solve_pattern = [&]() {
    for (std::size_t b = 0; b < n; ++b) {
      if (in_top[b]) continue;
      cfg.pivot = b;
      cfg.max_index = top[0];
      fill_configuration(cols, cfg, in_top, np);
      std::optional<PolytopeScan> scan;
      if (!np.trivially_infeasible) {
        scan = scan_polytope(np, independent_equalities(np));
        if (!scan->any_basis) scan.reset();  // lines in the feasible set: per-LP path
      }
      for (std::size_t ai = 0; ai < m; ++ai) {
        cfg.max_index = top[ai];
        LPResult r;
        if (scan) {
          r = optimize_over(*scan, cfg.signs[ai] * cols.raw[top[ai]]);
        } else {
          fill_configuration(cols, cfg, in_top, np);
          r = solve_normalized(np);
        }
        ++out.stats.lps_solved;
        switch (r.status) {
          case LPStatus::Infeasible: ++out.stats.infeasible; break;
          case LPStatus::Optimal:
            ++out.stats.optimal;
            if (r.value > out.best) {
              out.best = r.value;
              out.witness = r.point;
            }
            break;
          case LPStatus::Unbounded:
            ++out.stats.unbounded;
            out.unbounded = true;
            out.ray = r.point;
            return false;
        }
      }
    }
    return true;
  };

  auto visit = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == m) return solve_pattern();
    for (int s : {1, -1}) {
      cfg.signs[depth] = s;
      // fewer than k rows rarely conflict; leave those to the full LPs
      if (depth + 1 >= k && !sign_prefix_feasible(cols, cfg, depth + 1, cone)) {
        const std::uint64_t skipped = (std::uint64_t{1} << (m - depth - 1)) * m * (n - m);
        out.stats.lps_solved += skipped;
        out.stats.infeasible += skipped;
        continue;
      }
      if (!self(self, depth + 1)) return false;
    }
    return true;
  };
  visit(visit, 0);
  return out;
}

}  // namespace detail

/// h_m of the code generated by `g`, with a maximizing information vector
/// (finite case) or an unbounded LP ray (infinite case) as witness. The
/// result is independent of the thread count.
inline ExtendedHeight exact_mheight(const GeneratorMatrix& g, std::size_t m,
                                    LPHeightStats* stats = nullptr,
                                    const LPHeightOptions& options = {}) {
  require(m >= 1 && m + 1 <= g.n(), "m must lie in [1, n-1]");
  if (g.k() > kMaxLPDim)
    fail(ErrorKind::Capacity, "dimension k exceeds the LP engine limit of " + std::to_string(kMaxLPDim));

  std::vector<std::vector<std::size_t>> tops;
  detail::for_each_combination(g.n(), m, [&](std::span<const std::size_t> x) {
    tops.emplace_back(x.begin(), x.end());
  });

  const detail::NormalizedColumns cols = detail::normalized_columns(g);
  std::vector<std::optional<detail::ChunkResult>> results(tops.size());
  // lowest chunk index that came back unbounded; later chunks may be skipped
  std::atomic<std::size_t> first_unbounded{tops.size()};
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tops.size()) return;
      if (options.short_circuit && i > first_unbounded.load()) continue;
      results[i] = detail::solve_chunk(g, cols, tops[i]);
      if (results[i]->unbounded) {
        std::size_t cur = first_unbounded.load();
        while (i < cur && !first_unbounded.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };

  unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(tops.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  LPHeightStats total;
  double best = -std::numeric_limits<double>::infinity();
  Vector witness;
  std::optional<Vector> ray;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i]) {
      total.short_circuited = true;
      continue;
    }
    const auto& r = *results[i];
    total.lps_solved += r.stats.lps_solved;
    total.optimal += r.stats.optimal;
    total.unbounded += r.stats.unbounded;
    total.infeasible += r.stats.infeasible;
    if (r.unbounded && !ray) ray = r.ray;
    if (r.best > best) {
      best = r.best;
      witness = r.witness;
    }
  }
  if (ray && total.lps_solved < configuration_lp_count(g.n(), m)) total.short_circuited = true;
  if (stats != nullptr) *stats = total;

  if (ray) return ExtendedHeight::infinite(std::move(*ray));
  if (!std::isfinite(best)) {
    // No codeword has c_(m) > 0, so every nonzero codeword has height +inf.
    std::size_t widest = 0;
    for (std::size_t j = 1; j < g.n(); ++j)
      if (norm(g.column(j)) > norm(g.column(widest))) widest = j;
    require(norm(g.column(widest)) > 0.0, "zero generator matrix has no nonzero codeword");
    const auto col = g.column(widest);
    return ExtendedHeight::infinite(Vector(col.begin(), col.end()));
  }
  return ExtendedHeight::finite(best, std::move(witness));
}

inline MHeightProfile exact_profile(const GeneratorMatrix& g, const LPHeightOptions& options = {}) {
  MHeightProfile profile;
  profile.family = g.family();
  profile.n = g.n();
  for (std::size_t m = 1; m < g.n(); ++m) profile.heights.push_back(exact_mheight(g, m, nullptr, options));
  return profile;
}

}  // namespace geoecc
