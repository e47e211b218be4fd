#pragma once

// Exact solver for small dense linear programs by enumeration of basic
// solutions. Intended for dimension <= 8; every vertex of the feasible
// polyhedron is visited, so degeneracy needs no special handling.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "geoecc/codes.hpp"
#include "geoecc/error.hpp"

namespace geoecc {

inline constexpr std::size_t kMaxLPDim = 8;
inline constexpr std::size_t kMaxLPConstraints = 10000;
inline constexpr double kFeasibilityTol = 1e-9;

/// a . u = rhs (equality) or a . u >= rhs (inequality).
struct LinearConstraint {
  Vector coeffs;
  double rhs = 0.0;
};

/// maximize objective . u subject to the listed constraints.
struct LPProblem {
  std::size_t dim = 0;
  Vector objective;
  std::vector<LinearConstraint> equalities;
  std::vector<LinearConstraint> inequalities;
};

enum class LPStatus { Optimal, Unbounded, Infeasible };

/// For Optimal, `point` is a maximizer and `value` the optimum. For
/// Unbounded, `point` is a unit recession ray improving the objective.
struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  double value = 0.0;
  Vector point;
};

namespace detail {

using SmallVec = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, static_cast<int>(kMaxLPDim), 1>;
using SmallMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, static_cast<int>(kMaxLPDim),
                               static_cast<int>(kMaxLPDim)>;

struct Row {
  SmallVec a;
  double r = 0.0;
};

inline constexpr double kSingularTol = 1e-12;

struct NormalizedProblem {
  Eigen::Index dim = 0;
  SmallVec objective;
  std::vector<Row> eq;
  std::vector<Row> ineq;
  bool trivially_infeasible = false;
};

inline NormalizedProblem normalize(const LPProblem& p) {
  NormalizedProblem np;
  np.dim = static_cast<Eigen::Index>(p.dim);
  np.objective = Eigen::Map<const Eigen::VectorXd>(p.objective.data(), np.dim);
  auto add = [&](const LinearConstraint& c, bool equality) {
    SmallVec a = Eigen::Map<const Eigen::VectorXd>(c.coeffs.data(), np.dim);
    const double len = a.norm();
    if (len == 0.0) {
      // 0 = r or 0 >= r: no row, only a consistency condition
      const bool ok = equality ? std::abs(c.rhs) <= kFeasibilityTol : c.rhs <= kFeasibilityTol;
      if (!ok) np.trivially_infeasible = true;
      return;
    }
    Row row{a / len, c.rhs / len};
    (equality ? np.eq : np.ineq).push_back(std::move(row));
  };
  for (const auto& c : p.equalities) add(c, true);
  for (const auto& c : p.inequalities) add(c, false);
  return np;
}

inline bool feasible(const NormalizedProblem& np, const SmallVec& x) {
  for (const auto& row : np.eq)
    if (std::abs(row.a.dot(x) - row.r) > kFeasibilityTol) return false;
  for (const auto& row : np.ineq)
    if (row.a.dot(x) - row.r < -kFeasibilityTol) return false;
  return true;
}

inline bool recession_ok(const NormalizedProblem& np, const SmallVec& d) {
  for (const auto& row : np.eq)
    if (std::abs(row.a.dot(d)) > kFeasibilityTol) return false;
  for (const auto& row : np.ineq)
    if (row.a.dot(d) < -kFeasibilityTol) return false;
  return true;
}

/// Indices of a maximal linearly independent subset of the equality rows.
inline std::vector<std::size_t> independent_equalities(const NormalizedProblem& np) {
  if (np.eq.size() == 1) return {0};  // rows are unit length
  std::vector<std::size_t> chosen;
  std::vector<SmallVec> basis;
  for (std::size_t i = 0; i < np.eq.size(); ++i) {
    SmallVec v = np.eq[i].a;
    for (const auto& b : basis) v -= b.dot(v) * b;
    const double len = v.norm();
    if (len > 1e-10) {
      basis.push_back(v / len);
      chosen.push_back(i);
    }
  }
  return chosen;
}

inline double small_determinant(const SmallMat& m) {
  switch (m.rows()) {
    case 1: return m(0, 0);
    case 2: return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    case 3:
      return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
             m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
             m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    default: return m.determinant();
  }
}

/// Null vector of a (dim-1) x dim matrix by signed cofactors; zero if the
/// rows are dependent.
inline SmallVec cofactor_null_vector(const SmallMat& m) {
  const Eigen::Index dim = m.cols();
  SmallVec out(dim);
  if (dim == 1) {
    out(0) = 1.0;
    return out;
  }
  SmallMat minor(dim - 1, dim - 1);
  for (Eigen::Index skip = 0; skip < dim; ++skip) {
    for (Eigen::Index c = 0, mc = 0; c < dim; ++c) {
      if (c == skip) continue;
      minor.col(mc++) = m.col(c);
    }
    const double det = small_determinant(minor);
    out(skip) = (skip % 2 == 0) ? det : -det;
  }
  return out;
}

/// Solves basis * x = rhs and returns det(basis); x is unspecified when the
/// determinant is below kSingularTol. Dimensions 1-3 use Cramer's rule.
inline double solve_square(const SmallMat& a, const SmallVec& rhs, SmallVec& x) {
  const Eigen::Index dim = a.rows();
  x.resize(dim);
  switch (dim) {
    case 1: {
      const double det = a(0, 0);
      if (std::abs(det) > kSingularTol) x(0) = rhs(0) / det;
      return det;
    }
    case 2: {
      const double det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
      if (std::abs(det) > kSingularTol) {
        x(0) = (rhs(0) * a(1, 1) - a(0, 1) * rhs(1)) / det;
        x(1) = (a(0, 0) * rhs(1) - rhs(0) * a(1, 0)) / det;
      }
      return det;
    }
    case 3: {
      const double c00 = a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
      const double c01 = a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2);
      const double c02 = a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0);
      const double det = a(0, 0) * c00 + a(0, 1) * c01 + a(0, 2) * c02;
      if (std::abs(det) > kSingularTol) {
        const double c10 = a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2);
        const double c11 = a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0);
        const double c12 = a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1);
        const double c20 = a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1);
        const double c21 = a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2);
        const double c22 = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
        x(0) = (c00 * rhs(0) + c10 * rhs(1) + c20 * rhs(2)) / det;
        x(1) = (c01 * rhs(0) + c11 * rhs(1) + c21 * rhs(2)) / det;
        x(2) = (c02 * rhs(0) + c12 * rhs(1) + c22 * rhs(2)) / det;
      }
      return det;
    }
    default: {
      Eigen::PartialPivLU<SmallMat> lu(a);
      const double det = lu.determinant();
      if (std::abs(det) > kSingularTol) x = lu.solve(rhs);
      return det;
    }
  }
}

struct VertexScan {
  bool any_basis = false;  // some nonsingular basis exists (matrix has full column rank)
  bool any_feasible = false;
  double best = -std::numeric_limits<double>::infinity();
  SmallVec best_point;
};

inline VertexScan scan_vertices(const NormalizedProblem& np, std::span<const std::size_t> eq_rows) {
  VertexScan scan;
  const Eigen::Index dim = np.dim;
  const std::size_t e = eq_rows.size();
  const std::size_t need = static_cast<std::size_t>(dim) - e;
  SmallMat basis(dim, dim);
  SmallVec rhs(dim);
  for (std::size_t i = 0; i < e; ++i) {
    basis.row(static_cast<Eigen::Index>(i)) = np.eq[eq_rows[i]].a.transpose();
    rhs(static_cast<Eigen::Index>(i)) = np.eq[eq_rows[i]].r;
  }
  for_each_combination(np.ineq.size(), need, [&](std::span<const std::size_t> sel) {
    for (std::size_t i = 0; i < need; ++i) {
      const auto row = static_cast<Eigen::Index>(e + i);
      basis.row(row) = np.ineq[sel[i]].a.transpose();
      rhs(row) = np.ineq[sel[i]].r;
    }
    SmallVec x;
    if (!(std::abs(solve_square(basis, rhs, x)) > kSingularTol)) return;
    scan.any_basis = true;
    if (!feasible(np, x)) return;
    scan.any_feasible = true;
    const double value = np.objective.dot(x);
    if (value > scan.best) {
      scan.best = value;
      scan.best_point = x;
    }
  });
  return scan;
}

/// Searches extreme rays of the recession cone for one that improves the
/// objective. Valid when the polyhedron is pointed and nonempty.
inline bool find_improving_ray(const NormalizedProblem& np, std::span<const std::size_t> eq_rows,
                               SmallVec& ray) {
  const Eigen::Index dim = np.dim;
  const std::size_t e = eq_rows.size();
  if (static_cast<std::size_t>(dim) < e + 1) return false;
  const std::size_t need = static_cast<std::size_t>(dim) - e - 1;
  const double obj_tol = kFeasibilityTol * std::max(1.0, np.objective.norm());
  SmallMat active(dim - 1, dim);
  for (std::size_t i = 0; i < e; ++i) active.row(static_cast<Eigen::Index>(i)) = np.eq[eq_rows[i]].a.transpose();
  bool found = false;
  for_each_combination(np.ineq.size(), need, [&](std::span<const std::size_t> sel) {
    if (found) return;
    for (std::size_t i = 0; i < need; ++i)
      active.row(static_cast<Eigen::Index>(e + i)) = np.ineq[sel[i]].a.transpose();
    SmallVec d = cofactor_null_vector(active);
    const double len = d.norm();
    if (!(len > kSingularTol)) return;
    d /= len;
    for (double sign : {1.0, -1.0}) {
      const SmallVec cand = sign * d;
      if (np.objective.dot(cand) > obj_tol && recession_ok(np, cand)) {
        ray = cand;
        found = true;
        return;
      }
    }
  });
  return found;
}

inline Vector to_vector(const SmallVec& v) { return Vector(v.data(), v.data() + v.size()); }

/// Feasible vertices and recession-cone extreme rays of a pointed
/// polyhedron, for solving several objectives over one feasible set.
struct PolytopeScan {
  bool any_basis = false;
  std::vector<SmallVec> vertices;  // enumeration order, duplicates kept
  std::vector<SmallVec> rays;      // unit, each satisfies recession_ok
};

/// The rows in `fixed` leave one free direction: the feasible part of that
/// line is a segment, and of its basic solutions only the two ends can
/// carry an optimum.
inline void scan_line(const NormalizedProblem& np, std::span<const Row* const> fixed, PolytopeScan& out) {
  const Eigen::Index dim = np.dim;
  SmallMat active(dim - 1, dim);
  SmallVec rhs(dim);
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    active.row(static_cast<Eigen::Index>(i)) = fixed[i]->a.transpose();
    rhs(static_cast<Eigen::Index>(i)) = fixed[i]->r;
  }
  // Expanding det([fixed rows; a]) along its last row gives a . c for the
  // cofactor vector c, so the basis test needs no solve per row.
  const SmallVec c = cofactor_null_vector(active);
  const double c_len = c.norm();
  if (!(c_len > kSingularTol)) return;
  const SmallVec d = c / c_len;
  SmallMat pin(dim, dim);
  pin.topRows(dim - 1) = active;
  pin.row(dim - 1) = d.transpose();
  rhs(dim - 1) = 0.0;
  SmallVec x0;
  if (!(std::abs(solve_square(pin, rhs, x0)) > kSingularTol)) return;

  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool any = false;
  for (const auto& row : np.ineq) {
    if (!(std::abs(row.a.dot(c)) > kSingularTol)) continue;
    any = true;
    const double ad = row.a.dot(d);
    const double t = (row.r - row.a.dot(x0)) / ad;
    if (ad > 0.0)
      lo = std::max(lo, t);
    else
      hi = std::min(hi, t);
  }
  if (!any) return;
  out.any_basis = true;
  if (std::isfinite(lo)) {
    SmallVec x = x0 + lo * d;
    if (feasible(np, x)) out.vertices.push_back(std::move(x));
  }
  if (std::isfinite(hi) && hi != lo) {
    SmallVec x = x0 + hi * d;
    if (feasible(np, x)) out.vertices.push_back(std::move(x));
  }
  for (double sign : {1.0, -1.0}) {
    const SmallVec cand = sign * d;
    if (recession_ok(np, cand)) out.rays.push_back(cand);
  }
}

inline PolytopeScan scan_segment(const NormalizedProblem& np, std::span<const std::size_t> eq_rows) {
  PolytopeScan out;
  std::vector<const Row*> fixed;
  fixed.reserve(eq_rows.size());
  for (std::size_t i : eq_rows) fixed.push_back(&np.eq[i]);
  scan_line(np, fixed, out);
  if (out.vertices.empty()) out.rays.clear();
  return out;
}

inline PolytopeScan scan_polytope(const NormalizedProblem& np, std::span<const std::size_t> eq_rows) {
  if (eq_rows.size() + 1 == static_cast<std::size_t>(np.dim)) return scan_segment(np, eq_rows);
  PolytopeScan out;
  const Eigen::Index dim = np.dim;
  const std::size_t e = eq_rows.size();
  const std::size_t need = static_cast<std::size_t>(dim) - e;
  SmallMat basis(dim, dim);
  SmallVec rhs(dim);
  for (std::size_t i = 0; i < e; ++i) {
    basis.row(static_cast<Eigen::Index>(i)) = np.eq[eq_rows[i]].a.transpose();
    rhs(static_cast<Eigen::Index>(i)) = np.eq[eq_rows[i]].r;
  }
  for_each_combination(np.ineq.size(), need, [&](std::span<const std::size_t> sel) {
    for (std::size_t i = 0; i < need; ++i) {
      const auto row = static_cast<Eigen::Index>(e + i);
      basis.row(row) = np.ineq[sel[i]].a.transpose();
      rhs(row) = np.ineq[sel[i]].r;
    }
    SmallVec x;
    if (!(std::abs(solve_square(basis, rhs, x)) > kSingularTol)) return;
    out.any_basis = true;
    if (feasible(np, x)) out.vertices.push_back(x);
  });
  if (out.vertices.empty() || static_cast<std::size_t>(dim) < e + 1) return out;

  // same candidate order as find_improving_ray
  const std::size_t ray_need = static_cast<std::size_t>(dim) - e - 1;
  SmallMat active(dim - 1, dim);
  for (std::size_t i = 0; i < e; ++i) active.row(static_cast<Eigen::Index>(i)) = np.eq[eq_rows[i]].a.transpose();
  for_each_combination(np.ineq.size(), ray_need, [&](std::span<const std::size_t> sel) {
    for (std::size_t i = 0; i < ray_need; ++i)
      active.row(static_cast<Eigen::Index>(e + i)) = np.ineq[sel[i]].a.transpose();
    SmallVec d = cofactor_null_vector(active);
    const double len = d.norm();
    if (!(len > kSingularTol)) return;
    d /= len;
    for (double sign : {1.0, -1.0}) {
      const SmallVec cand = sign * d;
      if (recession_ok(np, cand)) out.rays.push_back(cand);
    }
  });
  return out;
}

/// The LP result of maximizing `objective` over a scanned pointed
/// polyhedron; matches solve_pointed on the same rows.
inline LPResult optimize_over(const PolytopeScan& scan, const SmallVec& objective) {
  if (scan.vertices.empty()) return {LPStatus::Infeasible, 0.0, {}};
  const double obj_tol = kFeasibilityTol * std::max(1.0, objective.norm());
  for (const auto& d : scan.rays)
    if (objective.dot(d) > obj_tol) return {LPStatus::Unbounded, 0.0, to_vector(d)};
  std::size_t best = 0;
  double value = objective.dot(scan.vertices[0]);
  for (std::size_t i = 1; i < scan.vertices.size(); ++i) {
    const double v = objective.dot(scan.vertices[i]);
    if (v > value) {
      value = v;
      best = i;
    }
  }
  return {LPStatus::Optimal, value, to_vector(scan.vertices[best])};
}


/// Orthonormal basis (as columns) of the null space of all constraint rows.
inline Eigen::MatrixXd lineality_basis(const NormalizedProblem& np) {
  const Eigen::Index rows = static_cast<Eigen::Index>(np.eq.size() + np.ineq.size());
  if (rows == 0) return Eigen::MatrixXd::Identity(np.dim, np.dim);
  Eigen::MatrixXd m(rows, np.dim);
  Eigen::Index r = 0;
  for (const auto& row : np.eq) m.row(r++) = row.a.transpose();
  for (const auto& row : np.ineq) m.row(r++) = row.a.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double cutoff = 1e-10 * std::max(1.0, s.size() > 0 ? s(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff) ++rank;
  return svd.matrixV().rightCols(np.dim - rank);
}

inline LPResult solve_pointed(const NormalizedProblem& np, bool* rank_deficient) {
  const auto eq_rows = independent_equalities(np);
  const VertexScan scan = scan_vertices(np, eq_rows);
  if (!scan.any_basis) {
    *rank_deficient = true;
    return {};
  }
  *rank_deficient = false;
  if (!scan.any_feasible) return {LPStatus::Infeasible, 0.0, {}};
  SmallVec ray;
  if (find_improving_ray(np, eq_rows, ray)) return {LPStatus::Unbounded, 0.0, to_vector(ray)};
  return {LPStatus::Optimal, scan.best, to_vector(scan.best_point)};
}

}  // namespace detail

inline void validate(const LPProblem& p) {
  if (p.dim > kMaxLPDim)
    fail(ErrorKind::Capacity, "LP dimension " + std::to_string(p.dim) + " exceeds " +
                                  std::to_string(kMaxLPDim));
  if (p.equalities.size() + p.inequalities.size() > kMaxLPConstraints)
    fail(ErrorKind::Capacity, "LP has more than " + std::to_string(kMaxLPConstraints) + " constraints");
  require(p.dim >= 1, "LP dimension must be >= 1");
  require(p.objective.size() == p.dim, "LP objective dimension mismatch");
  for (double x : p.objective) require(std::isfinite(x), "non-finite LP objective");
  auto check = [&](const LinearConstraint& c) {
    require(c.coeffs.size() == p.dim, "LP constraint dimension mismatch");
    for (double x : c.coeffs) require(std::isfinite(x), "non-finite LP coefficient");
    require(std::isfinite(c.rhs), "non-finite LP right-hand side");
  };
  for (const auto& c : p.equalities) check(c);
  for (const auto& c : p.inequalities) check(c);
}

namespace detail {

/// Solves an already row-normalized problem. `np` may gain equality rows.
inline LPResult solve_normalized(NormalizedProblem& np) {
  if (np.trivially_infeasible) return {LPStatus::Infeasible, 0.0, {}};

  bool rank_deficient = false;
  LPResult result = solve_pointed(np, &rank_deficient);
  if (!rank_deficient) return result;

  // The feasible set contains lines. Pin the lineality directions to zero;
  // if the objective moves along them the LP is unbounded once feasible.
  const Eigen::MatrixXd lin = lineality_basis(np);
  const Eigen::VectorXd c = np.objective;
  const Eigen::VectorXd along = lin * (lin.transpose() * c);
  for (Eigen::Index i = 0; i < lin.cols(); ++i) np.eq.push_back({SmallVec(lin.col(i)), 0.0});
  const bool moves = along.norm() > kFeasibilityTol * std::max(1.0, c.norm());
  result = solve_pointed(np, &rank_deficient);
  if (rank_deficient) fail(ErrorKind::Capacity, "LP lineality reduction failed");
  if (result.status == LPStatus::Infeasible || !moves) return result;
  const Eigen::VectorXd ray = along.normalized();
  return {LPStatus::Unbounded, 0.0, Vector(ray.data(), ray.data() + ray.size())};
}

}  // namespace detail

/// Exact optimum of a small LP. Rows are normalized to unit length and
/// compared with absolute tolerance kFeasibilityTol. Among optimal vertices
/// the first one in enumeration order is reported. Reentrant.
inline LPResult solve_lp(const LPProblem& p) {
  validate(p);
  detail::NormalizedProblem np = detail::normalize(p);
  return detail::solve_normalized(np);
}

}  // namespace geoecc
