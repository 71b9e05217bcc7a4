#pragma once

// Dense two-phase primal simplex for LPs in computational standard form:
//
//   min / max  c' x    subject to  A x = b,   lo <= x <= up,
//
// where individual bounds may be -inf / +inf. Pivoting uses Bland's rule
// throughout (entering: lowest eligible index; leaving: lowest variable
// index among minimum-ratio rows), so the solver terminates on degenerate
// and cycling-prone instances and is fully deterministic: repeated calls
// on the same problem return bit-identical solutions.
//
// The tableau B^{-1}A is kept dense and updated by row elimination; it is
// recomputed from a fresh LU factorisation of the basis every few dozen
// pivots and once more before the solution is extracted.

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

#include "wrdea/types.hpp"

namespace wrdea {

enum class LpSense { Minimize, Maximize };
enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpProblem {
  LpSense sense = LpSense::Minimize;
  Vector objective;    // length v
  Matrix constraints;  // r x v, equality rows
  Vector rhs;          // length r
  Vector lower;        // length v, -inf allowed
  Vector upper;        // length v, +inf allowed
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Vector primal;                // length v, meaningful iff Optimal
  double objective_value = 0.0; // in the problem's own sense, iff Optimal
};

namespace detail {

inline void validate_lp(const LpProblem& p) {
  const auto v = p.objective.size();
  const auto r = p.rhs.size();
  if (v == 0) throw ValidationError("lp: problem has no variables");
  if (p.constraints.rows() != r || p.constraints.cols() != v ||
      p.lower.size() != v || p.upper.size() != v) {
    std::ostringstream msg;
    msg << "lp: inconsistent dimensions (objective " << v << ", constraints "
        << p.constraints.rows() << "x" << p.constraints.cols() << ", rhs " << r
        << ", bounds " << p.lower.size() << "/" << p.upper.size() << ")";
    throw ValidationError(msg.str());
  }
  if (!p.objective.allFinite() || !p.constraints.allFinite() || !p.rhs.allFinite())
    throw ValidationError("lp: non-finite entry in objective, constraints or rhs");
  for (Eigen::Index j = 0; j < v; ++j) {
    if (std::isnan(p.lower[j]) || std::isnan(p.upper[j]))
      throw ValidationError("lp: NaN bound");
    if (p.lower[j] > p.upper[j]) {
      std::ostringstream msg;
      msg << "lp: lower bound exceeds upper bound for variable " << j;
      throw ValidationError(msg.str());
    }
  }
}

class BoundedSimplex {
 public:
  BoundedSimplex(const LpProblem& p, const SolverTolerances& tol)
      : tol_(tol), v_(p.objective.size()), r_(p.rhs.size()), n_(v_ + r_) {
    A_.setZero(r_, n_);
    A_.leftCols(v_) = p.constraints;
    b_ = p.rhs;
    lo_.resize(n_);
    up_.resize(n_);
    lo_.head(v_) = p.lower;
    up_.head(v_) = p.upper;
    x_.setZero(n_);
    state_.assign(static_cast<size_t>(n_), State::AtLower);
    basis_.assign(static_cast<size_t>(r_), -1);
  }

  LpSolution solve(const LpProblem& p) {
    // Nonbasic start for the structural variables: a finite bound
    // if one exists, value 0 for free variables.
    for (Eigen::Index j = 0; j < v_; ++j) {
      if (std::isfinite(lo_[j])) {
        state_[j] = State::AtLower;
        x_[j] = lo_[j];
      } else if (std::isfinite(up_[j])) {
        state_[j] = State::AtUpper;
        x_[j] = up_[j];
      } else {
        state_[j] = State::Free;
        x_[j] = 0.0;
      }
    }
    // One artificial per row, signed so it starts basic and nonnegative.
    const Vector residual = b_ - A_.leftCols(v_) * x_.head(v_);
    for (Eigen::Index i = 0; i < r_; ++i) {
      const Eigen::Index a = v_ + i;
      A_(i, a) = residual[i] >= 0.0 ? 1.0 : -1.0;
      lo_[a] = 0.0;
      up_[a] = kInfinity;
      x_[a] = std::abs(residual[i]);
      basis_[static_cast<size_t>(i)] = static_cast<int>(a);
      state_[static_cast<size_t>(a)] = State::Basic;
    }
    refactorize();

    // Phase 1: drive the artificials to zero.
    cost_.setZero(n_);
    cost_.tail(r_).setOnes();
    if (run() == RunResult::Unbounded)
      throw InternalError("lp: phase-1 objective reported unbounded");
    const double infeasibility = cost_.dot(x_);
    if (infeasibility > feasibility_scale()) {
      LpSolution sol;
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    pivot_out_artificials();

    // Phase 2: optimize the real objective with artificials pinned at zero.
    for (Eigen::Index i = 0; i < r_; ++i) {
      lo_[v_ + i] = 0.0;
      up_[v_ + i] = 0.0;
      if (state_[static_cast<size_t>(v_ + i)] != State::Basic) x_[v_ + i] = 0.0;
    }
    cost_.setZero(n_);
    cost_.head(v_) = p.sense == LpSense::Maximize ? Vector(-p.objective) : p.objective;
    refactorize();
    const RunResult phase2 = run();

    LpSolution sol;
    if (phase2 == RunResult::Unbounded) {
      sol.status = LpStatus::Unbounded;
      return sol;
    }
    refactorize();
    snap_to_bounds();
    const double residual_norm =
        r_ > 0 ? (A_ * x_ - b_).lpNorm<Eigen::Infinity>() : 0.0;
    if (residual_norm > feasibility_scale())
      throw InternalError("lp: solution failed the feasibility check, residual " +
                          std::to_string(residual_norm));
    sol.status = LpStatus::Optimal;
    sol.primal = x_.head(v_);
    sol.objective_value = p.objective.dot(sol.primal);
    return sol;
  }

 private:
  enum class State { Basic, AtLower, AtUpper, Free };
  enum class RunResult { Optimal, Unbounded };

  double feasibility_scale() const {
    const double rhs_norm = b_.size() > 0 ? b_.lpNorm<Eigen::Infinity>() : 0.0;
    return tol_.feasibility * (1.0 + rhs_norm);
  }

  void refactorize() {
    if (r_ == 0) {
      tableau_.resize(0, n_);
      return;
    }
    Matrix basis_matrix(r_, r_);
    for (Eigen::Index i = 0; i < r_; ++i)
      basis_matrix.col(i) = A_.col(basis_[static_cast<size_t>(i)]);
    Eigen::PartialPivLU<Matrix> lu(basis_matrix);
    tableau_ = lu.solve(A_);
    Vector rhs = b_;
    for (Eigen::Index j = 0; j < n_; ++j)
      if (state_[static_cast<size_t>(j)] != State::Basic && x_[j] != 0.0)
        rhs -= A_.col(j) * x_[j];
    const Vector xb = lu.solve(rhs);
    for (Eigen::Index i = 0; i < r_; ++i) x_[basis_[static_cast<size_t>(i)]] = xb[i];
  }

  void snap_to_bounds() {
    const double slack = feasibility_scale();
    for (Eigen::Index j = 0; j < n_; ++j) {
      if (x_[j] < lo_[j] && x_[j] > lo_[j] - slack) x_[j] = lo_[j];
      if (x_[j] > up_[j] && x_[j] < up_[j] + slack) x_[j] = up_[j];
    }
  }

  // Reduced costs of the current basis: d = c - c_B' B^{-1} A.
  Vector reduced_costs() const {
    Vector d = cost_;
    for (Eigen::Index i = 0; i < r_; ++i) {
      const double cb = cost_[basis_[static_cast<size_t>(i)]];
      if (cb != 0.0) d -= cb * tableau_.row(i).transpose();
    }
    return d;
  }

  struct Entering {
    Eigen::Index column;
    int direction;  // +1 rising from lower / free, -1 falling from upper / free
  };

  std::optional<Entering> choose_entering(const Vector& d) const {
    for (Eigen::Index j = 0; j < n_; ++j) {
      const State s = state_[static_cast<size_t>(j)];
      if (s == State::Basic) continue;
      if (lo_[j] == up_[j]) continue;  // fixed
      if ((s == State::AtLower || s == State::Free) && d[j] < -tol_.optimality)
        return Entering{j, +1};
      if ((s == State::AtUpper || s == State::Free) && d[j] > tol_.optimality)
        return Entering{j, -1};
    }
    return std::nullopt;
  }

  struct Ratio {
    double step = kInfinity;
    Eigen::Index row = -1;        // -1: the entering variable hits its other bound
    State blocking = State::AtLower;
  };

  std::optional<Ratio> ratio_test(const Entering& e) const {
    constexpr double kTieTol = 1e-12;
    const double column_scale = std::max(
        1.0, r_ > 0 ? tableau_.col(e.column).cwiseAbs().maxCoeff() : 0.0);
    const double pivot_tol = 1e-9 * column_scale;

    Ratio best;
    int best_var = -1;
    const double span = up_[e.column] - lo_[e.column];
    if (std::isfinite(span)) {
      best.step = span;
      best_var = static_cast<int>(e.column);
    }
    for (Eigen::Index i = 0; i < r_; ++i) {
      const double w = tableau_(i, e.column);
      if (std::abs(w) <= pivot_tol) continue;
      const int bi = basis_[static_cast<size_t>(i)];
      const double rate = -e.direction * w;  // d x_basic / d step
      double room;
      State hit;
      if (rate > 0.0) {
        room = up_[bi] - x_[bi];
        hit = State::AtUpper;
      } else {
        room = x_[bi] - lo_[bi];
        hit = State::AtLower;
      }
      if (!std::isfinite(room)) continue;
      room = std::max(room, 0.0);
      const double ratio = room / std::abs(rate);
      const bool better = ratio < best.step - kTieTol;
      const bool tie = !better && ratio <= best.step + kTieTol &&
                       (best_var < 0 || bi < best_var);
      if (better || tie) {
        best.step = ratio;
        best.row = i;
        best.blocking = hit;
        best_var = bi;
      }
    }
    if (!std::isfinite(best.step)) return std::nullopt;
    return best;
  }

  void apply_step(const Entering& e, const Ratio& ratio) {
    const double step = ratio.step;
    if (step != 0.0) {
      x_[e.column] += e.direction * step;
      for (Eigen::Index i = 0; i < r_; ++i)
        x_[basis_[static_cast<size_t>(i)]] -= e.direction * step * tableau_(i, e.column);
    }
    if (ratio.row < 0) {
      // Bound flip, basis unchanged.
      state_[static_cast<size_t>(e.column)] =
          e.direction > 0 ? State::AtUpper : State::AtLower;
      x_[e.column] = e.direction > 0 ? up_[e.column] : lo_[e.column];
      return;
    }
    const Eigen::Index row = ratio.row;
    const int leaving = basis_[static_cast<size_t>(row)];
    x_[leaving] = ratio.blocking == State::AtUpper ? up_[leaving] : lo_[leaving];
    state_[static_cast<size_t>(leaving)] = ratio.blocking;

    const double pivot = tableau_(row, e.column);
    tableau_.row(row) /= pivot;
    for (Eigen::Index i = 0; i < r_; ++i) {
      if (i == row) continue;
      const double f = tableau_(i, e.column);
      if (f != 0.0) tableau_.row(i) -= f * tableau_.row(row);
    }
    basis_[static_cast<size_t>(row)] = static_cast<int>(e.column);
    state_[static_cast<size_t>(e.column)] = State::Basic;
  }

  RunResult run() {
    constexpr int kRefactorEvery = 64;
    const long max_pivots = 10000 + 200ll * n_;
    for (long pivots = 1; pivots <= max_pivots; ++pivots) {
      const Vector d = reduced_costs();
      const auto entering = choose_entering(d);
      if (!entering) return RunResult::Optimal;
      const auto ratio = ratio_test(*entering);
      if (!ratio) return RunResult::Unbounded;
      apply_step(*entering, *ratio);
      if (pivots % kRefactorEvery == 0) refactorize();
    }
    throw InternalError("lp: pivot limit exceeded");
  }

  // After phase 1, swap zero-valued basic artificials for structural columns
  // so phase 2 starts from a structural basis wherever the row permits it.
  void pivot_out_artificials() {
    for (Eigen::Index i = 0; i < r_; ++i) {
      if (basis_[static_cast<size_t>(i)] < v_) continue;
      const double row_scale =
          std::max(1.0, tableau_.row(i).head(v_).cwiseAbs().maxCoeff());
      Eigen::Index replacement = -1;
      for (Eigen::Index j = 0; j < v_; ++j) {
        if (state_[static_cast<size_t>(j)] == State::Basic) continue;
        if (lo_[j] == up_[j]) continue;
        if (std::abs(tableau_(i, j)) > 1e-9 * row_scale) {
          replacement = j;
          break;
        }
      }
      if (replacement < 0) {
        // Dependent row: the artificial stays basic, pinned at zero.
        up_[basis_[static_cast<size_t>(i)]] = 0.0;
        continue;
      }
      apply_step(Entering{replacement, +1}, Ratio{0.0, i, State::AtLower});
    }
  }

  SolverTolerances tol_;
  Eigen::Index v_, r_, n_;
  Matrix A_;
  Vector b_, lo_, up_, x_, cost_;
  Matrix tableau_;
  std::vector<int> basis_;
  std::vector<State> state_;
};

}  // namespace detail

/// Solves the LP deterministically; repeated calls on the same problem
/// return bit-identical solutions.
inline LpSolution solve_lp(const LpProblem& problem, const SolverTolerances& tol = {}) {
  detail::validate_lp(problem);
  detail::BoundedSimplex simplex(problem, tol);
  return simplex.solve(problem);
}

}  // namespace wrdea
