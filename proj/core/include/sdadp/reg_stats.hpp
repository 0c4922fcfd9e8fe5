#pragma once

namespace sdadp {

/// Per-component regularization statistics.
/// s = sum_j log(1 - pi_jk) <= 0 (log-probability the component is empty,
/// -inf permitted), t = sum_j pi_jk >= 0 (expected assigned mass).
struct RegStats {
  double s = 0.0;
  double t = 0.0;
};

}  // namespace sdadp
