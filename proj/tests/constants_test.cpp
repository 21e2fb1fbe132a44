#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "sendov9/constants.hpp"
#include "sendov9/formulas.hpp"
#include "testutil.hpp"

using namespace sendov;
using testutil::contains_value;

TEST_CASE("pi enclosure is a couple of ulps wide and correct") {
  const Interval& pi = pi_enclosure();
  CHECK(pi.width() <= 0x1p-50);
  // rational bracket of pi, 21 digits each side
  Rational lo = testutil::rational_sci("3.14159265358979323845e+00");
  Rational hi = testutil::rational_sci("3.14159265358979323847e+00");
  CHECK(lo.cmp(pi.lo) >= 0);
  CHECK(hi.cmp(pi.hi) <= 0);
}

TEST_CASE("table enclosures meet the width budget") {
  const ConstantTable& t = ConstantTable::get();
  CHECK(t.pi.width() <= 0x1p-50);
  for (int k = 1; k <= 8; ++k)
    CHECK(t.sin_pi_k_9[static_cast<std::size_t>(k)].width() <= 0x1p-50);
  CHECK(t.two_sin_pi_9_sq.width() <= 0x1p-50);
  // the product sits near 19.2 where an absolute 2^-50 is below one ulp;
  // ulp-level relative tightness is the attainable reading
  CHECK(t.crit_product.width() / t.crit_product.lo <= 0x1p-47);
}

TEST_CASE("table values contain the 50-digit references") {
  const ConstantTable& t = ConstantTable::get();
  CHECK(contains_value(t.sin_pi_k_9[1],
                       "3.4202014332566873304409961468225958076308336751416e-01"));
  CHECK(contains_value(Interval(2.0) * t.sin_pi_k_9[4],
                       "1.9696155060244161187334860491790460273412865034397e+00"));
  CHECK(contains_value(t.two_sin_pi_9_sq,
                       "4.6791111376204392959521469888916665212833508583921e-01"));
  CHECK(contains_value(t.crit_product,
                       "1.9234422383429318515539011567280888863232243548069e+01"));
}

TEST_CASE("membership 2 sin(pi k/9) >= 1 is decided exactly") {
  CHECK_FALSE(ConstantTable::factor_at_least_one(1));
  for (int k = 2; k <= 7; ++k) CHECK(ConstantTable::factor_at_least_one(k));
  CHECK_FALSE(ConstantTable::factor_at_least_one(8));
}

TEST_CASE("product identity: 9/crit_product equals (2 sin(pi/9))^2") {
  const ConstantTable& t = ConstantTable::get();
  Interval lhs = Interval(9.0) / t.crit_product;
  CHECK(lhs.intersects(t.two_sin_pi_9_sq));
  Interval diff = lhs - t.two_sin_pi_9_sq;
  CHECK(diff.width() <= 0x1p-40);
  CHECK(diff.contains(0.0));

  ProductIdentity pi31 = sin_product_identity(Params{});
  CHECK(pi31.holds);

  Params mutated;
  mutated.two_sin_sq_override = 0.47;
  CHECK_FALSE(sin_product_identity(mutated).holds);
}
