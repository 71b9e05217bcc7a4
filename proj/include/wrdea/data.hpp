#pragma once

// Observed production data and weight restrictions.
//
// A DeaInstance holds the input matrix X (m x n) and output matrix Y (s x n),
// one column per DMU. WeightRestrictions hold the matrices P (m x k) and
// Q (s x l); each column encodes one homogeneous restriction p'v <= 0 on the
// input weights (resp. q'u <= 0 on the output weights). In the envelopment
// technology the same columns act as trade directions: X lambda - P pi <= x,
// Y lambda + Q tau >= y.

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "wrdea/types.hpp"

namespace wrdea {

struct DeaInstance {
  std::vector<std::string> labels;  // length n, unique
  Matrix inputs;                    // m x n
  Matrix outputs;                   // s x n

  Eigen::Index dmu_count() const { return inputs.cols(); }
  Eigen::Index input_count() const { return inputs.rows(); }
  Eigen::Index output_count() const { return outputs.rows(); }
};

struct WeightRestrictions {
  Matrix input_matrix;   // m x k (k may be 0)
  Matrix output_matrix;  // s x l (l may be 0)

  Eigen::Index input_restriction_count() const { return input_matrix.cols(); }
  Eigen::Index output_restriction_count() const { return output_matrix.cols(); }

  static WeightRestrictions none(Eigen::Index m, Eigen::Index s) {
    WeightRestrictions wr;
    wr.input_matrix.resize(m, 0);
    wr.output_matrix.resize(s, 0);
    return wr;
  }
};

enum class RestrictionSide { Input, Output };

/// One homogeneous restriction on multiplier weights, sum_i coeff_i * w_i <= 0,
/// where w is v for Input restrictions and u for Output restrictions.
/// Factor indices are 1-based, matching the file format.
struct RestrictionSpec {
  RestrictionSide side = RestrictionSide::Input;
  std::map<int, double> coefficients;
};

/// Validates instance invariants; throws ValidationError with the offending
/// DMU or row named.
inline void validate_instance(const DeaInstance& instance) {
  const auto n = instance.dmu_count();
  const auto m = instance.input_count();
  const auto s = instance.output_count();
  if (n < 1 || m < 1 || s < 1)
    throw ValidationError("instance: need at least one DMU, one input and one output");
  if (instance.outputs.cols() != n)
    throw ValidationError("instance: input and output matrices disagree on DMU count");
  if (static_cast<Eigen::Index>(instance.labels.size()) != n)
    throw ValidationError("instance: label count does not match DMU count");
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < m; ++i)
      if (!std::isfinite(instance.inputs(i, j)) || instance.inputs(i, j) < 0.0)
        throw ValidationError("instance: input " + std::to_string(i + 1) + " of DMU '" +
                              instance.labels[static_cast<size_t>(j)] +
                              "' is negative or non-finite");
    for (Eigen::Index i = 0; i < s; ++i)
      if (!std::isfinite(instance.outputs(i, j)) || instance.outputs(i, j) < 0.0)
        throw ValidationError("instance: output " + std::to_string(i + 1) + " of DMU '" +
                              instance.labels[static_cast<size_t>(j)] +
                              "' is negative or non-finite");
    if (instance.inputs.col(j).maxCoeff() <= 0.0)
      throw ValidationError("instance: DMU '" + instance.labels[static_cast<size_t>(j)] +
                            "' has no strictly positive input");
    if (instance.outputs.col(j).maxCoeff() <= 0.0)
      throw ValidationError("instance: DMU '" + instance.labels[static_cast<size_t>(j)] +
                            "' has no strictly positive output");
  }
  for (size_t a = 0; a < instance.labels.size(); ++a)
    for (size_t b = a + 1; b < instance.labels.size(); ++b)
      if (instance.labels[a] == instance.labels[b])
        throw ValidationError("instance: duplicate DMU label '" + instance.labels[a] + "'");
  // An all-zero input or output row makes the multiplier normalisations vacuous.
  for (Eigen::Index i = 0; i < m; ++i)
    if (instance.inputs.row(i).maxCoeff() <= 0.0)
      throw ValidationError("instance: input row " + std::to_string(i + 1) +
                            " is zero for every DMU");
  for (Eigen::Index i = 0; i < s; ++i)
    if (instance.outputs.row(i).maxCoeff() <= 0.0)
      throw ValidationError("instance: output row " + std::to_string(i + 1) +
                            " is zero for every DMU");
}

/// Checks that restriction matrices are compatible with an instance.
inline void validate_pairing(const DeaInstance& instance, const WeightRestrictions& wr) {
  if (wr.input_matrix.rows() != instance.input_count())
    throw ValidationError("restrictions: P has " + std::to_string(wr.input_matrix.rows()) +
                          " rows, instance has " + std::to_string(instance.input_count()) +
                          " inputs");
  if (wr.output_matrix.rows() != instance.output_count())
    throw ValidationError("restrictions: Q has " + std::to_string(wr.output_matrix.rows()) +
                          " rows, instance has " + std::to_string(instance.output_count()) +
                          " outputs");
  for (Eigen::Index c = 0; c < wr.input_matrix.cols(); ++c)
    if (wr.input_matrix.col(c).cwiseAbs().maxCoeff() == 0.0)
      throw ValidationError("restrictions: column " + std::to_string(c + 1) + " of P is zero");
  for (Eigen::Index c = 0; c < wr.output_matrix.cols(); ++c)
    if (wr.output_matrix.col(c).cwiseAbs().maxCoeff() == 0.0)
      throw ValidationError("restrictions: column " + std::to_string(c + 1) + " of Q is zero");
  if (!wr.input_matrix.allFinite() || !wr.output_matrix.allFinite())
    throw ValidationError("restrictions: non-finite coefficient");
}

/// Turns restriction specs into the matrices P and Q: spec #i on the input
/// side becomes one column of P whose r-th entry is the coefficient of v_r
/// (zero when absent), and likewise for Q; column order follows spec order.
inline WeightRestrictions compile_restrictions(const std::vector<RestrictionSpec>& specs,
                                               Eigen::Index m, Eigen::Index s) {
  std::vector<Vector> p_cols, q_cols;
  for (size_t idx = 0; idx < specs.size(); ++idx) {
    const RestrictionSpec& spec = specs[idx];
    const bool is_input = spec.side == RestrictionSide::Input;
    const Eigen::Index dim = is_input ? m : s;
    if (spec.coefficients.empty())
      throw ValidationError("restriction " + std::to_string(idx + 1) +
                            ": empty coefficient map");
    Vector column = Vector::Zero(dim);
    for (const auto& [factor, coeff] : spec.coefficients) {
      if (factor < 1 || factor > dim) {
        std::ostringstream msg;
        msg << "restriction " << idx + 1 << ": factor index " << factor
            << " out of range 1.." << dim << (is_input ? " (inputs)" : " (outputs)");
        throw ValidationError(msg.str());
      }
      if (!std::isfinite(coeff))
        throw ValidationError("restriction " + std::to_string(idx + 1) +
                              ": non-finite coefficient");
      column[factor - 1] = coeff;
    }
    if (column.cwiseAbs().maxCoeff() == 0.0)
      throw ValidationError("restriction " + std::to_string(idx + 1) +
                            ": all coefficients are zero");
    (is_input ? p_cols : q_cols).push_back(std::move(column));
  }
  WeightRestrictions wr;
  wr.input_matrix.resize(m, static_cast<Eigen::Index>(p_cols.size()));
  for (size_t c = 0; c < p_cols.size(); ++c)
    wr.input_matrix.col(static_cast<Eigen::Index>(c)) = p_cols[c];
  wr.output_matrix.resize(s, static_cast<Eigen::Index>(q_cols.size()));
  for (size_t c = 0; c < q_cols.size(); ++c)
    wr.output_matrix.col(static_cast<Eigen::Index>(c)) = q_cols[c];
  return wr;
}

/// Inverse of compile_restrictions (input columns first, then output columns);
/// recompiling the result reproduces P and Q exactly.
inline std::vector<RestrictionSpec> decompile_restrictions(const WeightRestrictions& wr) {
  std::vector<RestrictionSpec> specs;
  for (Eigen::Index c = 0; c < wr.input_matrix.cols(); ++c) {
    RestrictionSpec spec;
    spec.side = RestrictionSide::Input;
    for (Eigen::Index i = 0; i < wr.input_matrix.rows(); ++i)
      if (wr.input_matrix(i, c) != 0.0)
        spec.coefficients[static_cast<int>(i) + 1] = wr.input_matrix(i, c);
    specs.push_back(std::move(spec));
  }
  for (Eigen::Index c = 0; c < wr.output_matrix.cols(); ++c) {
    RestrictionSpec spec;
    spec.side = RestrictionSide::Output;
    for (Eigen::Index i = 0; i < wr.output_matrix.rows(); ++i)
      if (wr.output_matrix(i, c) != 0.0)
        spec.coefficients[static_cast<int>(i) + 1] = wr.output_matrix(i, c);
    specs.push_back(std::move(spec));
  }
  return specs;
}

}  // namespace wrdea
