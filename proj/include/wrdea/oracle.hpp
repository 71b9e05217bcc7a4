#pragma once

// Brute-force reference implementations used by the test and check suites:
// vertex enumeration by exhaustive basis selection, support unions over the
// optimal-intensity polyhedron, and envelopment scores recomputed from
// enumerated vertices. Everything here favours transparency over speed and
// refuses inputs large enough to be slow.

#include <algorithm>
#include <set>
#include <vector>

#include "wrdea/data.hpp"
#include "wrdea/detail/blocks.hpp"
#include "wrdea/envelopment.hpp"
#include "wrdea/lp.hpp"
#include "wrdea/types.hpp"

namespace wrdea::oracle {

/// {z : E z = f, lower <= z <= upper}. Sign-restricted variables carry a
/// zero lower bound; free variables carry infinite bounds on both sides.
struct Polyhedron {
  Matrix equality_matrix;  // r x N
  Vector rhs;              // r
  Vector lower, upper;     // N

  static Polyhedron nonnegative(Matrix equalities, Vector rhs_values) {
    Polyhedron poly;
    poly.lower = Vector::Zero(equalities.cols());
    poly.upper = Vector::Constant(equalities.cols(), kInfinity);
    poly.equality_matrix = std::move(equalities);
    poly.rhs = std::move(rhs_values);
    return poly;
  }

  static Polyhedron from_nonneg_mask(Matrix equalities, Vector rhs_values,
                                     const std::vector<bool>& nonneg_mask) {
    Polyhedron poly = nonnegative(std::move(equalities), std::move(rhs_values));
    for (size_t j = 0; j < nonneg_mask.size(); ++j)
      if (!nonneg_mask[j]) poly.lower[static_cast<Eigen::Index>(j)] = -kInfinity;
    return poly;
  }
};

namespace detail_oracle {

constexpr double kVertexTol = 1e-9;

inline bool next_combination(std::vector<Eigen::Index>& comb, Eigen::Index n) {
  const auto k = static_cast<Eigen::Index>(comb.size());
  for (Eigen::Index i = k - 1; i >= 0; --i) {
    if (comb[static_cast<size_t>(i)] < n - (k - i)) {
      ++comb[static_cast<size_t>(i)];
      for (Eigen::Index j = i + 1; j < k; ++j)
        comb[static_cast<size_t>(j)] = comb[static_cast<size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace detail_oracle

/// All basic feasible solutions (vertices), deduplicated at 1e-9, in a
/// deterministic order. Guards: at most 20 variables, at most `cap` vertices.
inline std::vector<Vector> enumerate_vertices(const Polyhedron& poly, size_t cap = 100000) {
  using detail_oracle::kVertexTol;
  const Eigen::Index num_vars = poly.equality_matrix.cols();
  const Eigen::Index num_rows = poly.equality_matrix.rows();
  if (num_vars > 20)
    throw ValidationError("oracle: refusing vertex enumeration with " +
                          std::to_string(num_vars) + " variables (limit 20)");
  if (poly.rhs.size() != num_rows || poly.lower.size() != num_vars ||
      poly.upper.size() != num_vars)
    throw ValidationError("oracle: inconsistent polyhedron dimensions");

  Eigen::Index rank = 0;
  if (num_rows > 0) {
    Eigen::FullPivLU<Matrix> full_lu(poly.equality_matrix);
    full_lu.setThreshold(1e-10);
    rank = full_lu.rank();
  }

  std::vector<Vector> vertices;
  const double rhs_scale = 1.0 + poly.rhs.lpNorm<Eigen::Infinity>();
  long trials = 0;

  if (rank == 0) {
    // Degenerate system: every row is zero, so either the rhs is
    // inconsistent (no points at all) or the polyhedron is a pure box and
    // its vertices are the finite-bound assignments.
    if (poly.rhs.size() > 0 &&
        poly.rhs.lpNorm<Eigen::Infinity>() > kVertexTol * rhs_scale)
      return vertices;
    std::vector<Eigen::Index> two_sided;
    for (Eigen::Index j = 0; j < num_vars; ++j) {
      if (!std::isfinite(poly.lower[j]) && !std::isfinite(poly.upper[j]))
        return vertices;  // a free line: no vertex exists
      if (std::isfinite(poly.lower[j]) && std::isfinite(poly.upper[j]) &&
          poly.lower[j] != poly.upper[j])
        two_sided.push_back(j);
    }
    if (two_sided.size() > 16)
      throw ValidationError("oracle: too many boxed variables for enumeration");
    for (size_t choice = 0; choice < (size_t{1} << two_sided.size()); ++choice) {
      Vector z(num_vars);
      for (Eigen::Index j = 0; j < num_vars; ++j)
        z[j] = std::isfinite(poly.lower[j]) ? poly.lower[j] : poly.upper[j];
      for (size_t t = 0; t < two_sided.size(); ++t)
        if (choice & (size_t{1} << t)) z[two_sided[t]] = poly.upper[two_sided[t]];
      if (vertices.size() >= cap)
        throw ValidationError("oracle: vertex cap of " + std::to_string(cap) +
                              " exceeded");
      vertices.push_back(std::move(z));
    }
    return vertices;
  }

  std::vector<Eigen::Index> basis(static_cast<size_t>(rank));
  for (Eigen::Index i = 0; i < rank; ++i) basis[static_cast<size_t>(i)] = i;
  if (rank > num_vars) return vertices;
  bool more = true;
  do {
    std::vector<Eigen::Index> nonbasic;
    bool usable = true;
    for (Eigen::Index j = 0; j < num_vars && usable; ++j) {
      if (std::find(basis.begin(), basis.end(), j) != basis.end()) continue;
      if (!std::isfinite(poly.lower[j]) && !std::isfinite(poly.upper[j]))
        usable = false;  // a free variable must be basic in every vertex
      else
        nonbasic.push_back(j);
    }
    if (!usable) continue;

    Matrix basis_cols(num_rows, rank);
    for (Eigen::Index i = 0; i < rank; ++i)
      basis_cols.col(i) = poly.equality_matrix.col(basis[static_cast<size_t>(i)]);
    Eigen::FullPivLU<Matrix> lu(basis_cols);
    lu.setThreshold(1e-10);
    if (lu.rank() < rank) continue;

    // Each nonbasic variable with two finite bounds can sit at either one.
    std::vector<Eigen::Index> two_sided;
    for (Eigen::Index j : nonbasic)
      if (std::isfinite(poly.lower[j]) && std::isfinite(poly.upper[j]) &&
          poly.lower[j] != poly.upper[j])
        two_sided.push_back(j);
    if (two_sided.size() > 16)
      throw ValidationError("oracle: too many boxed variables for enumeration");

    for (size_t choice = 0; choice < (size_t{1} << two_sided.size()); ++choice) {
      if (++trials > 5'000'000)
        throw ValidationError("oracle: basis enumeration too large");
      Vector z = Vector::Zero(num_vars);
      for (Eigen::Index j : nonbasic)
        z[j] = std::isfinite(poly.lower[j]) ? poly.lower[j] : poly.upper[j];
      for (size_t t = 0; t < two_sided.size(); ++t)
        if (choice & (size_t{1} << t)) z[two_sided[t]] = poly.upper[two_sided[t]];

      Vector reduced_rhs = poly.rhs;
      for (Eigen::Index j : nonbasic)
        if (z[j] != 0.0) reduced_rhs -= poly.equality_matrix.col(j) * z[j];
      const Vector zb = lu.solve(reduced_rhs);
      if ((basis_cols * zb - reduced_rhs).lpNorm<Eigen::Infinity>() >
          kVertexTol * rhs_scale)
        continue;  // inconsistent with the dependent rows

      bool in_bounds = true;
      for (Eigen::Index i = 0; i < rank && in_bounds; ++i) {
        const Eigen::Index j = basis[static_cast<size_t>(i)];
        if (zb[i] < poly.lower[j] - kVertexTol || zb[i] > poly.upper[j] + kVertexTol)
          in_bounds = false;
      }
      if (!in_bounds) continue;
      for (Eigen::Index i = 0; i < rank; ++i) z[basis[static_cast<size_t>(i)]] = zb[i];

      bool duplicate = false;
      for (const Vector& seen : vertices)
        if ((seen - z).lpNorm<Eigen::Infinity>() <= kVertexTol) {
          duplicate = true;
          break;
        }
      if (duplicate) continue;
      if (vertices.size() >= cap)
        throw ValidationError("oracle: vertex cap of " + std::to_string(cap) +
                              " exceeded");
      vertices.push_back(std::move(z));
    }
  } while (more && detail_oracle::next_combination(basis, num_vars));
  return vertices;
}

/// The polyhedron of intensity vectors optimal for DMU o in the envelopment
/// model: block equalities at theta*, convexity, and the slack sum pinned to
/// its phase-B maximum. Variables are [lambda | pi | tau | s_in | s_out].
inline Polyhedron omega_polyhedron(const DeaInstance& instance, const WeightRestrictions& wr,
                                   const WrEvaluation& eval) {
  const detail::EnvelopmentLayout layout(instance, wr);
  const Eigen::Index rows = layout.m + layout.s + 2;
  Matrix equalities(rows, layout.total);
  equalities.topRows(layout.m + layout.s + 1) =
      detail::envelopment_block_matrix(instance, wr, layout);
  equalities.row(rows - 1) = detail::slack_sum_row(layout).transpose();
  Vector rhs(rows);
  rhs.head(layout.m) = eval.theta_star * instance.inputs.col(eval.dmu_index);
  rhs.segment(layout.m, layout.s) = instance.outputs.col(eval.dmu_index);
  rhs[layout.m + layout.s] = 1.0;
  rhs[rows - 1] = eval.slack_sum;
  return Polyhedron::nonnegative(std::move(equalities), std::move(rhs));
}

/// Union of intensity supports over all vertices of the optimal polyhedron;
/// by convexity this equals the union over the whole polyhedron.
inline std::set<Eigen::Index> omega_support_union(const DeaInstance& instance,
                                                  const WeightRestrictions& wr,
                                                  const WrEvaluation& eval,
                                                  const Tolerances& tol = {}) {
  const Polyhedron poly = omega_polyhedron(instance, wr, eval);
  std::set<Eigen::Index> support;
  for (const Vector& vertex : enumerate_vertices(poly))
    for (Eigen::Index j = 0; j < instance.dmu_count(); ++j)
      if (vertex[j] > tol.support) support.insert(j);
  return support;
}

/// Radial score recomputed independently of the simplex path: enumerate the
/// vertices of the phase-A feasible region and take the smallest theta.
/// With empty restrictions this is the plain BCC score.
inline double min_theta_by_enumeration(const DeaInstance& instance,
                                       const WeightRestrictions& wr, Eigen::Index o) {
  const detail::EnvelopmentLayout layout(instance, wr);
  const Eigen::Index rows = layout.m + layout.s + 1;
  const Eigen::Index theta = layout.total;
  Matrix equalities(rows, layout.total + 1);
  equalities.leftCols(layout.total) = detail::envelopment_block_matrix(instance, wr, layout);
  equalities.col(theta).setZero();
  equalities.col(theta).head(layout.m) = -instance.inputs.col(o);
  Vector rhs = Vector::Zero(rows);
  rhs.segment(layout.m, layout.s) = instance.outputs.col(o);
  rhs[layout.m + layout.s] = 1.0;
  std::vector<bool> nonneg(static_cast<size_t>(layout.total + 1), true);
  nonneg[static_cast<size_t>(theta)] = false;
  const Polyhedron poly =
      Polyhedron::from_nonneg_mask(std::move(equalities), std::move(rhs), nonneg);
  double best = kInfinity;
  for (const Vector& vertex : enumerate_vertices(poly)) best = std::min(best, vertex[theta]);
  if (!std::isfinite(best))
    throw InternalError("oracle: no vertex found for the radial score");
  return best;
}

/// One alternate optimum of the envelopment model: optimises an arbitrary
/// linear objective over the intensities while theta* and the maximal slack
/// sum stay pinned. Returns the full lambda vector.
inline Vector alternate_optimum(const DeaInstance& instance, const WeightRestrictions& wr,
                                const WrEvaluation& eval, const Vector& lambda_objective,
                                const Tolerances& tol = {}) {
  if (lambda_objective.size() != instance.dmu_count())
    throw ValidationError("oracle: objective length does not match DMU count");
  const Polyhedron poly = omega_polyhedron(instance, wr, eval);
  LpProblem p;
  p.constraints = poly.equality_matrix;
  p.rhs = poly.rhs;
  p.lower = poly.lower;
  p.upper = poly.upper;
  p.objective = Vector::Zero(poly.equality_matrix.cols());
  p.objective.head(instance.dmu_count()) = lambda_objective;
  const LpSolution sol = solve_lp(p, tol.solver);
  if (sol.status != LpStatus::Optimal)
    throw InternalError("oracle: alternate-optimum model did not solve");
  return sol.primal.head(instance.dmu_count());
}

}  // namespace wrdea::oracle
