#ifndef SENDOV9_CONSTANTS_HPP
#define SENDOV9_CONSTANTS_HPP

#include <array>

#include "sendov9/interval.hpp"

namespace sendov {

/// Shared enclosures of the fixed trigonometric quantities of the degree-9
/// problem. All entries are computed once from the series kernels; the
/// membership set for crit_product (which factors 2 sin(pi k/9) are >= 1)
/// is decided by exact rational comparison, not numerically:
/// 2 sin(pi k/9) >= 1  <=>  k/9 in [1/6, 5/6]  <=>  2 <= k <= 7.
struct ConstantTable {
  Interval pi;
  std::array<Interval, 9> sin_pi_k_9;  // index k = 1..8 used
  Interval two_sin_pi_9;               // 2 sin(pi/9)
  Interval two_sin_pi_9_sq;            // (2 sin(pi/9))^2
  Interval crit_product;               // prod over 2 sin(pi k/9) >= 1

  static const ConstantTable& get();

  /// True iff 2 sin(pi k/9) >= 1, decided exactly.
  static bool factor_at_least_one(int k) { return 6 * k >= 9 && 6 * k <= 45; }
};

}  // namespace sendov

#endif
