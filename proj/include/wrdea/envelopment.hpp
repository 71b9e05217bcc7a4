#pragma once

// Input-oriented weight-restricted envelopment model under variable returns
// to scale, solved lexicographically: phase A minimises the radial factor
// theta, phase B pins theta and maximises the total slack. The preemptive
// two-phase solve realises the non-Archimedean objective exactly; no finite
// epsilon enters the computation.

#include <string>
#include <utility>

#include "wrdea/data.hpp"
#include "wrdea/detail/blocks.hpp"
#include "wrdea/lp.hpp"
#include "wrdea/types.hpp"

namespace wrdea {

struct WrEvaluation {
  Eigen::Index dmu_index = 0;
  double theta_star = 1.0;
  Vector lambda;     // length n, >= 0, sums to 1
  Vector pi;         // length k
  Vector tau;        // length l
  Vector slack_in;   // length m
  Vector slack_out;  // length s
  double slack_sum = 0.0;
  Vector projection_inputs;   // X lambda
  Vector projection_outputs;  // Y lambda
};

enum class EfficiencyStatus { WrEfficient, WrInefficient };

namespace detail {

inline LpProblem radial_phase(const DeaInstance& instance, const WeightRestrictions& wr,
                              Eigen::Index o, const EnvelopmentLayout& layout) {
  LpProblem p;
  const Eigen::Index rows = layout.m + layout.s + 1;
  const Eigen::Index theta = layout.total;
  p.constraints.resize(rows, layout.total + 1);
  p.constraints.leftCols(layout.total) = envelopment_block_matrix(instance, wr, layout);
  p.constraints.col(theta).setZero();
  p.constraints.col(theta).head(layout.m) = -instance.inputs.col(o);
  p.rhs.setZero(rows);
  p.rhs.segment(layout.m, layout.s) = instance.outputs.col(o);
  p.rhs[layout.m + layout.s] = 1.0;
  p.objective = Vector::Zero(layout.total + 1);
  p.objective[theta] = 1.0;
  p.lower = Vector::Zero(layout.total + 1);
  p.lower[theta] = -kInfinity;
  p.upper = Vector::Constant(layout.total + 1, kInfinity);
  return p;
}

inline LpProblem slack_phase(const DeaInstance& instance, const WeightRestrictions& wr,
                             Eigen::Index o, double theta_star,
                             const EnvelopmentLayout& layout) {
  LpProblem p;
  p.sense = LpSense::Maximize;
  p.constraints = envelopment_block_matrix(instance, wr, layout);
  p.rhs.setZero(layout.m + layout.s + 1);
  p.rhs.head(layout.m) = theta_star * instance.inputs.col(o);
  p.rhs.segment(layout.m, layout.s) = instance.outputs.col(o);
  p.rhs[layout.m + layout.s] = 1.0;
  p.objective = slack_sum_row(layout);
  p.lower = Vector::Zero(layout.total);
  p.upper = Vector::Constant(layout.total, kInfinity);
  return p;
}

inline std::string lp_failure(const std::string& model, const std::string& label,
                              LpStatus status) {
  const char* what = status == LpStatus::Infeasible ? "infeasible" : "unbounded";
  return model + " for DMU '" + label + "' reported " + what +
         "; the instance or restrictions are inconsistent";
}

}  // namespace detail

/// Solves the envelopment model for DMU o and returns one optimal
/// representative of the lexicographic optimum.
inline WrEvaluation evaluate(const DeaInstance& instance, const WeightRestrictions& wr,
                             Eigen::Index o, const Tolerances& tol = {}) {
  validate_instance(instance);
  validate_pairing(instance, wr);
  if (o < 0 || o >= instance.dmu_count())
    throw ValidationError("evaluate: DMU index " + std::to_string(o) + " out of range");
  const std::string& label = instance.labels[static_cast<size_t>(o)];
  const detail::EnvelopmentLayout layout(instance, wr);

  const LpProblem phase_a = detail::radial_phase(instance, wr, o, layout);
  const LpSolution radial = solve_lp(phase_a, tol.solver);
  if (radial.status != LpStatus::Optimal)
    throw InternalError(detail::lp_failure("envelopment phase A", label, radial.status));
  double theta_star = radial.objective_value;
  if (theta_star > 1.0 + tol.solver.feasibility || theta_star <= 0.0)
    throw InternalError("envelopment phase A for DMU '" + label +
                        "' returned theta outside (0, 1]: " + std::to_string(theta_star));
  theta_star = std::min(theta_star, 1.0);

  const LpProblem phase_b = detail::slack_phase(instance, wr, o, theta_star, layout);
  const LpSolution slacks = solve_lp(phase_b, tol.solver);
  if (slacks.status != LpStatus::Optimal)
    throw InternalError(detail::lp_failure("envelopment phase B", label, slacks.status));

  WrEvaluation eval;
  eval.dmu_index = o;
  eval.theta_star = theta_star;
  eval.lambda = slacks.primal.segment(0, layout.n);
  eval.pi = slacks.primal.segment(layout.pi_begin, layout.k);
  eval.tau = slacks.primal.segment(layout.tau_begin, layout.l);
  eval.slack_in = slacks.primal.segment(layout.slack_in_begin, layout.m);
  eval.slack_out = slacks.primal.segment(layout.slack_out_begin, layout.s);
  const double slack_scale = 1.0 + instance.inputs.col(o).lpNorm<Eigen::Infinity>() +
                             instance.outputs.col(o).lpNorm<Eigen::Infinity>();
  eval.slack_sum = slacks.objective_value <= tol.solver.feasibility * slack_scale
                       ? 0.0
                       : slacks.objective_value;
  eval.projection_inputs = instance.inputs * eval.lambda;
  eval.projection_outputs = instance.outputs * eval.lambda;
  return eval;
}

/// theta* = 1 with zero total slack, at the classification tolerance.
inline EfficiencyStatus status_of(const WrEvaluation& eval, const Tolerances& tol = {}) {
  const bool radial_efficient = std::abs(eval.theta_star - 1.0) <= tol.classification;
  const bool zero_slack = eval.slack_sum <= tol.classification;
  return radial_efficient && zero_slack ? EfficiencyStatus::WrEfficient
                                        : EfficiencyStatus::WrInefficient;
}

/// The projection (X lambda, Y lambda); identical to
/// (theta* x_o + P pi - s_in, y_o - Q tau + s_out) up to the solver tolerance.
inline std::pair<Vector, Vector> radial_projection(const WrEvaluation& eval) {
  return {eval.projection_inputs, eval.projection_outputs};
}

}  // namespace wrdea
