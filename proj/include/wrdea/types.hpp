#pragma once

#include <Eigen/Dense>
#include <limits>
#include <stdexcept>
#include <string>

namespace wrdea {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Malformed input: dimension mismatch, NaN in data, bad file contents,
/// violated precondition. The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// An internally-built model misbehaved (a model that cannot be infeasible
/// reports infeasible, a numerical consistency check fails). Exit code 2.
class InternalError : public std::runtime_error {
 public:
  explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

struct SolverTolerances {
  double feasibility = 1e-8;  // constraint/bound satisfaction, relative to 1 + |rhs|
  double optimality = 1e-9;   // reduced-cost threshold for simplex termination
};

/// Tolerance bundle used across the evaluation pipeline.
struct Tolerances {
  SolverTolerances solver{};
  double classification = 1e-6;  // |theta - 1| and slack-sum cutoff for efficiency
  double support = 1e-7;         // lambda_j > support  <=>  j counts as a reference unit
  double sign = 1e-6;            // strict-sign threshold for the RTS bound tests
};

}  // namespace wrdea
