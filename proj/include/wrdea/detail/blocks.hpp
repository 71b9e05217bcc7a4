#pragma once

// Shared column layout for the envelopment-side models. All of them act on
// the variable block [lambda | pi | tau | s_in | s_out] with the row blocks
//
//   [ X  -P   0   I   0  ]           (m rows, input balance)
//   [ Y   0   Q   0  -I  ]           (s rows, output balance)
//   [ 1'  0   0   0   0  ]           (1 row,  convexity)
//
// and optionally the slack-sum row [ 0 0 0 1' 1' ].

#include "wrdea/data.hpp"
#include "wrdea/types.hpp"

namespace wrdea::detail {

struct EnvelopmentLayout {
  Eigen::Index n, m, s, k, l;
  Eigen::Index lambda_begin = 0;
  Eigen::Index pi_begin = 0, tau_begin = 0, slack_in_begin = 0, slack_out_begin = 0;
  Eigen::Index total = 0;

  EnvelopmentLayout(const DeaInstance& instance, const WeightRestrictions& wr)
      : n(instance.dmu_count()),
        m(instance.input_count()),
        s(instance.output_count()),
        k(wr.input_restriction_count()),
        l(wr.output_restriction_count()) {
    pi_begin = n;
    tau_begin = n + k;
    slack_in_begin = n + k + l;
    slack_out_begin = n + k + l + m;
    total = n + k + l + m + s;
  }
};

/// The (m + s + 1) x total coefficient matrix described above.
inline Matrix envelopment_block_matrix(const DeaInstance& instance,
                                       const WeightRestrictions& wr,
                                       const EnvelopmentLayout& layout) {
  Matrix block = Matrix::Zero(layout.m + layout.s + 1, layout.total);
  block.block(0, 0, layout.m, layout.n) = instance.inputs;
  block.block(0, layout.pi_begin, layout.m, layout.k) = -wr.input_matrix;
  block.block(0, layout.slack_in_begin, layout.m, layout.m) =
      Matrix::Identity(layout.m, layout.m);
  block.block(layout.m, 0, layout.s, layout.n) = instance.outputs;
  block.block(layout.m, layout.tau_begin, layout.s, layout.l) = wr.output_matrix;
  block.block(layout.m, layout.slack_out_begin, layout.s, layout.s) =
      -Matrix::Identity(layout.s, layout.s);
  block.row(layout.m + layout.s).segment(0, layout.n).setOnes();
  return block;
}

/// The slack-sum row [0 .. 0 | 1'_m 1'_s] over the same columns.
inline Vector slack_sum_row(const EnvelopmentLayout& layout) {
  Vector row = Vector::Zero(layout.total);
  row.segment(layout.slack_in_begin, layout.m + layout.s).setOnes();
  return row;
}

}  // namespace wrdea::detail
