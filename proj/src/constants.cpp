#include "sendov9/constants.hpp"

namespace sendov {

const ConstantTable& ConstantTable::get() {
  static const ConstantTable table = [] {
    ConstantTable t;
    t.pi = pi_enclosure();
    t.sin_pi_k_9[0] = Interval(0.0);  // slot 0 unused
    for (int k = 1; k <= 8; ++k) {
      // sin(pi k/9) = sin(pi (9-k)/9); evaluating the smaller argument keeps
      // the series enclosure at ulp level.
      int kk = (k <= 4) ? k : 9 - k;
      Interval arg = (t.pi * Interval(static_cast<double>(kk))) / Interval(9.0);
      t.sin_pi_k_9[static_cast<std::size_t>(k)] = sin(arg);
    }
    t.two_sin_pi_9 = Interval(2.0) * t.sin_pi_k_9[1];
    t.two_sin_pi_9_sq = pow_int(t.two_sin_pi_9, 2);
    Interval prod(1.0);
    for (int k = 1; k <= 8; ++k)
      if (factor_at_least_one(k)) prod = prod * (Interval(2.0) * t.sin_pi_k_9[static_cast<std::size_t>(k)]);
    t.crit_product = prod;
    return t;
  }();
  return table;
}

}  // namespace sendov
