#pragma once

// Returns-to-scale classification from the multiplier side. For a point on
// the weight-restricted efficient frontier, the free intercept u_o of the
// supporting hyperplanes ranges over an interval; its sign pattern decides
// the RTS class:
//
//   increasing  iff  upper < 0,
//   constant    iff  lower <= 0 <= upper,
//   decreasing  iff  lower > 0.
//
// The bounds come from minimising / maximising u_o subject to
//
//   u'y_eval - u_o = 1,  v'x_eval = 1,
//   u'Y - v'X - u_o 1' <= 0  (over the observed DMUs),
//   v'P <= 0,  u'Q <= 0,  u, v >= 0,  u_o free.
//
// The envelopment constraints always range over the observed columns; only
// the normalisation point changes when a projection is evaluated.

#include <optional>
#include <sstream>
#include <string>

#include "wrdea/data.hpp"
#include "wrdea/lp.hpp"
#include "wrdea/types.hpp"

namespace wrdea {

struct MultiplierSolution {
  Vector u;          // output weights, length s
  Vector v;          // input weights, length m
  double u_o = 0.0;  // free intercept
};

struct RtsBounds {
  double lower = 0.0;
  std::optional<double> upper;  // nullopt: the maximisation is unbounded
};

enum class RtsClass { Increasing, Constant, Decreasing };

namespace detail {

inline LpProblem multiplier_model(const DeaInstance& instance, const WeightRestrictions& wr,
                                  const Vector& x_eval, const Vector& y_eval,
                                  LpSense sense) {
  const Eigen::Index n = instance.dmu_count();
  const Eigen::Index m = instance.input_count();
  const Eigen::Index s = instance.output_count();
  const Eigen::Index k = wr.input_restriction_count();
  const Eigen::Index l = wr.output_restriction_count();
  // Columns: [u (s) | v (m) | u_o | surplus for the n + k + l inequalities].
  const Eigen::Index uo = s + m;
  const Eigen::Index surplus = s + m + 1;
  const Eigen::Index width = surplus + n + k + l;
  const Eigen::Index rows = 2 + n + k + l;

  LpProblem p;
  p.sense = sense;
  p.constraints.setZero(rows, width);
  p.rhs.setZero(rows);
  p.constraints.row(0).head(s) = y_eval.transpose();
  p.constraints(0, uo) = -1.0;
  p.rhs[0] = 1.0;
  p.constraints.row(1).segment(s, m) = x_eval.transpose();
  p.rhs[1] = 1.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    p.constraints.row(2 + j).head(s) = instance.outputs.col(j).transpose();
    p.constraints.row(2 + j).segment(s, m) = -instance.inputs.col(j).transpose();
    p.constraints(2 + j, uo) = -1.0;
    p.constraints(2 + j, surplus + j) = 1.0;
  }
  for (Eigen::Index c = 0; c < k; ++c) {
    p.constraints.row(2 + n + c).segment(s, m) = wr.input_matrix.col(c).transpose();
    p.constraints(2 + n + c, surplus + n + c) = 1.0;
  }
  for (Eigen::Index c = 0; c < l; ++c) {
    p.constraints.row(2 + n + k + c).head(s) = wr.output_matrix.col(c).transpose();
    p.constraints(2 + n + k + c, surplus + n + k + c) = 1.0;
  }
  p.objective = Vector::Zero(width);
  p.objective[uo] = 1.0;
  p.lower = Vector::Zero(width);
  p.lower[uo] = -kInfinity;
  p.upper = Vector::Constant(width, kInfinity);
  return p;
}

inline std::string point_description(const Vector& x_eval, const Vector& y_eval) {
  std::ostringstream out;
  out << "(";
  for (Eigen::Index i = 0; i < x_eval.size(); ++i) out << (i ? ", " : "") << x_eval[i];
  out << " | ";
  for (Eigen::Index i = 0; i < y_eval.size(); ++i) out << (i ? ", " : "") << y_eval[i];
  out << ")";
  return out.str();
}

}  // namespace detail

/// One optimal multiplier vector for the given sense; exposed for callers
/// that need the supporting hyperplane itself rather than just the bounds.
inline MultiplierSolution solve_multiplier(const DeaInstance& instance,
                                           const WeightRestrictions& wr,
                                           const Vector& x_eval, const Vector& y_eval,
                                           LpSense sense, const Tolerances& tol = {}) {
  const LpProblem p = detail::multiplier_model(instance, wr, x_eval, y_eval, sense);
  const LpSolution sol = solve_lp(p, tol.solver);
  if (sol.status != LpStatus::Optimal)
    throw ValidationError("multiplier model has no optimum at point " +
                          detail::point_description(x_eval, y_eval));
  MultiplierSolution mult;
  mult.u = sol.primal.head(instance.output_count());
  mult.v = sol.primal.segment(instance.output_count(), instance.input_count());
  mult.u_o = sol.primal[instance.output_count() + instance.input_count()];
  return mult;
}

/// Lower and upper bound of the free intercept at a WR-efficient point.
/// Throws ValidationError when the model is infeasible, i.e. the point does
/// not lie on the weight-restricted efficient frontier.
inline RtsBounds u_bounds(const DeaInstance& instance, const WeightRestrictions& wr,
                          const Vector& x_eval, const Vector& y_eval,
                          const Tolerances& tol = {}) {
  validate_pairing(instance, wr);
  if (x_eval.size() != instance.input_count() || y_eval.size() != instance.output_count())
    throw ValidationError("u_bounds: point dimensions do not match the instance");

  const LpProblem minimise =
      detail::multiplier_model(instance, wr, x_eval, y_eval, LpSense::Minimize);
  const LpSolution lo = solve_lp(minimise, tol.solver);
  if (lo.status == LpStatus::Infeasible)
    throw ValidationError("u_bounds: point " + detail::point_description(x_eval, y_eval) +
                          " is not WR-efficient (multiplier model infeasible)");
  if (lo.status != LpStatus::Optimal)
    throw InternalError("u_bounds: minimisation of u_o reported unbounded");

  LpProblem maximise = minimise;
  maximise.sense = LpSense::Maximize;
  const LpSolution hi = solve_lp(maximise, tol.solver);

  RtsBounds bounds;
  bounds.lower = lo.objective_value;
  if (hi.status == LpStatus::Optimal)
    bounds.upper = hi.objective_value;
  else if (hi.status == LpStatus::Unbounded)
    bounds.upper = std::nullopt;
  else
    throw InternalError("u_bounds: maximisation infeasible after feasible minimisation");
  return bounds;
}

/// Sign test of the bounds; an unbounded upper bound counts as >= 0 and
/// ties at zero resolve to Constant.
inline RtsClass classify(const RtsBounds& bounds, const Tolerances& tol = {}) {
  if (bounds.upper && *bounds.upper < -tol.sign) return RtsClass::Increasing;
  if (bounds.lower > tol.sign) return RtsClass::Decreasing;
  return RtsClass::Constant;
}

}  // namespace wrdea
