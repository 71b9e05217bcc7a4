#pragma once

// Identification of the global reference set. The evaluation of a DMU with a
// positive slack sum admits many optimal intensity vectors, and different
// optima name different reference units. The maximal-intensity model below
// finds one optimal intensity vector whose support contains the support of
// every other optimum, by maximising 1'mu1 over the scaled system
//
//   [ block rows | slack-sum row ] (mu1 + mu2, pi, tau, s-, s+) = rhs_o * eta,
//   0 <= mu1 <= 1,  mu2 >= 0,  eta >= 1,
//
// where rhs_o carries theta* x_o, y_o, the convexity constant and the optimal
// slack sum. The maximal intensity vector is lambda = (mu1 + mu2) / eta; the
// reference set is its support and the maximal projection is its image.
//
// eta is left without an upper bound: a bounded-variable simplex terminates
// at a finite vertex regardless, and any finite cap can cut off the maximal
// support when optimal intensities carry components smaller than 1/cap
// (duplicate or collinear frontier units produce exactly that).

#include <set>
#include <utility>
#include <vector>

#include "wrdea/data.hpp"
#include "wrdea/detail/blocks.hpp"
#include "wrdea/envelopment.hpp"
#include "wrdea/lp.hpp"
#include "wrdea/types.hpp"

namespace wrdea {

struct MaximalSolution {
  Vector mu1;         // length n, in [0, 1]
  Vector mu2;         // length n, >= 0
  Vector pi;          // length k
  Vector tau;         // length l
  Vector slack_in;    // length m
  Vector slack_out;   // length s
  double eta = 1.0;   // >= 1
  Vector lambda_max;  // (mu1 + mu2) / eta, sums to 1
};

struct GlobalReferenceSet {
  Eigen::Index dmu_index = 0;
  std::set<Eigen::Index> members;  // {j : lambda_max_j > tol.support}
  Vector lambda_max;
  Vector p_max_inputs;   // X lambda_max
  Vector p_max_outputs;  // Y lambda_max
};

/// Solves the maximal-intensity model for the DMU described by `eval`.
inline MaximalSolution solve_maximal(const DeaInstance& instance,
                                     const WeightRestrictions& wr,
                                     const WrEvaluation& eval, const Tolerances& tol = {}) {
  const detail::EnvelopmentLayout layout(instance, wr);
  const Eigen::Index rows = layout.m + layout.s + 2;
  const Eigen::Index n = layout.n;
  // Columns: [mu1 (n) | mu2 (n) | pi tau s- s+ | eta].
  const Eigen::Index width = n + layout.total + 1;
  const Eigen::Index eta_col = width - 1;

  const Matrix block = detail::envelopment_block_matrix(instance, wr, layout);
  LpProblem p;
  p.sense = LpSense::Maximize;
  p.constraints.setZero(rows, width);
  p.constraints.block(0, 0, layout.m + layout.s + 1, n) = block.leftCols(n);
  p.constraints.block(0, n, layout.m + layout.s + 1, layout.total) = block;
  p.constraints.row(rows - 1).segment(n, layout.total) =
      detail::slack_sum_row(layout).transpose();
  p.constraints.col(eta_col).head(layout.m) =
      -eval.theta_star * instance.inputs.col(eval.dmu_index);
  p.constraints.col(eta_col).segment(layout.m, layout.s) =
      -instance.outputs.col(eval.dmu_index);
  p.constraints(layout.m + layout.s, eta_col) = -1.0;
  p.constraints(rows - 1, eta_col) = -eval.slack_sum;
  p.rhs = Vector::Zero(rows);
  p.objective = Vector::Zero(width);
  p.objective.head(n).setOnes();
  p.lower = Vector::Zero(width);
  p.lower[eta_col] = 1.0;
  p.upper = Vector::Constant(width, kInfinity);
  p.upper.head(n).setOnes();

  const LpSolution sol = solve_lp(p, tol.solver);
  if (sol.status != LpStatus::Optimal)
    throw InternalError(
        "maximal-intensity model did not solve for DMU '" +
        instance.labels[static_cast<size_t>(eval.dmu_index)] +
        "'; the evaluation constants are not an optimum of the envelopment model");

  MaximalSolution maximal;
  maximal.mu1 = sol.primal.head(n);
  maximal.mu2 = sol.primal.segment(n, n);
  maximal.pi = sol.primal.segment(n + layout.pi_begin, layout.k);
  maximal.tau = sol.primal.segment(n + layout.tau_begin, layout.l);
  maximal.slack_in = sol.primal.segment(n + layout.slack_in_begin, layout.m);
  maximal.slack_out = sol.primal.segment(n + layout.slack_out_begin, layout.s);
  maximal.eta = sol.primal[eta_col];
  maximal.lambda_max = (maximal.mu1 + maximal.mu2) / maximal.eta;
  return maximal;
}

/// Unary reference set: the support of one evaluation's own intensity
/// vector. Reported as a view only; it depends on which optimum the solver
/// returned, which is exactly what the global reference set neutralises.
inline std::set<Eigen::Index> unary_reference_set(const WrEvaluation& eval,
                                                  const Tolerances& tol = {}) {
  std::set<Eigen::Index> support;
  for (Eigen::Index j = 0; j < eval.lambda.size(); ++j)
    if (eval.lambda[j] > tol.support) support.insert(j);
  return support;
}

/// Support of the maximal intensity vector plus the maximal projection.
inline GlobalReferenceSet global_reference_set(const DeaInstance& instance,
                                               const WeightRestrictions& wr,
                                               const WrEvaluation& eval,
                                               const Tolerances& tol = {}) {
  const MaximalSolution maximal = solve_maximal(instance, wr, eval, tol);
  GlobalReferenceSet grs;
  grs.dmu_index = eval.dmu_index;
  grs.lambda_max = maximal.lambda_max;
  for (Eigen::Index j = 0; j < instance.dmu_count(); ++j)
    if (maximal.lambda_max[j] > tol.support) grs.members.insert(j);
  grs.p_max_inputs = instance.inputs * maximal.lambda_max;
  grs.p_max_outputs = instance.outputs * maximal.lambda_max;
  return grs;
}

}  // namespace wrdea
