#pragma once

// Whole-sample driver. Every DMU is evaluated with the envelopment model and
// partitioned:
//
//   group 1 (efficient):  theta* = 1 and zero slack; RTS is measured at the
//                         observed point itself.
//   group 1 (zero slack): inefficient with zero slack sum; the projection is
//                         the unique radial point (theta* x_o, y_o) and RTS
//                         is measured there.
//   group 2:              positive slack sum, so projections are not unique;
//                         the maximal-intensity model picks the maximal
//                         projection and RTS is measured at that point.
//
// Failures are isolated per DMU: a report entry either carries results or an
// error message, and one bad unit does not abort the batch.

#include <optional>
#include <string>
#include <vector>

#include "wrdea/data.hpp"
#include "wrdea/envelopment.hpp"
#include "wrdea/reference.hpp"
#include "wrdea/rts.hpp"
#include "wrdea/types.hpp"

namespace wrdea {

enum class DmuGroup { Group1Efficient, Group1ZeroSlack, Group2 };

struct DmuReport {
  Eigen::Index dmu_index = 0;
  std::string label;
  EfficiencyStatus status = EfficiencyStatus::WrInefficient;
  DmuGroup group = DmuGroup::Group2;
  double theta_star = 1.0;
  double slack_sum = 0.0;
  Vector rts_point_inputs;   // the point RTS was measured at
  Vector rts_point_outputs;
  std::optional<GlobalReferenceSet> grs;
  RtsBounds bounds;
  RtsClass rts = RtsClass::Constant;
  std::optional<std::string> error;  // set iff this DMU failed; other fields stale
};

struct RunOptions {
  bool force_grs = false;  // also identify the reference set for group-1 DMUs
};

/// Evaluates, partitions and classifies every DMU; report order follows the
/// instance's label order deterministically.
inline std::vector<DmuReport> run_all(const DeaInstance& instance,
                                      const WeightRestrictions& wr,
                                      const Tolerances& tol = {},
                                      const RunOptions& options = {}) {
  validate_instance(instance);
  validate_pairing(instance, wr);
  std::vector<DmuReport> reports;
  reports.reserve(static_cast<size_t>(instance.dmu_count()));
  for (Eigen::Index o = 0; o < instance.dmu_count(); ++o) {
    DmuReport report;
    report.dmu_index = o;
    report.label = instance.labels[static_cast<size_t>(o)];
    try {
      const WrEvaluation eval = evaluate(instance, wr, o, tol);
      report.status = status_of(eval, tol);
      report.theta_star = eval.theta_star;
      report.slack_sum = eval.slack_sum;
      if (report.status == EfficiencyStatus::WrEfficient) {
        report.group = DmuGroup::Group1Efficient;
        report.rts_point_inputs = instance.inputs.col(o);
        report.rts_point_outputs = instance.outputs.col(o);
      } else if (eval.slack_sum <= tol.classification) {
        report.group = DmuGroup::Group1ZeroSlack;
        report.rts_point_inputs = eval.theta_star * instance.inputs.col(o);
        report.rts_point_outputs = instance.outputs.col(o);
      } else {
        report.group = DmuGroup::Group2;
      }
      if (report.group == DmuGroup::Group2 || options.force_grs) {
        report.grs = global_reference_set(instance, wr, eval, tol);
        if (report.group == DmuGroup::Group2) {
          report.rts_point_inputs = report.grs->p_max_inputs;
          report.rts_point_outputs = report.grs->p_max_outputs;
        }
      }
      report.bounds =
          u_bounds(instance, wr, report.rts_point_inputs, report.rts_point_outputs, tol);
      report.rts = classify(report.bounds, tol);
    } catch (const std::exception& failure) {
      report.error = std::string("DMU '") + report.label + "': " + failure.what();
    }
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace wrdea
