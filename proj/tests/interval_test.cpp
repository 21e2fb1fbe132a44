#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "sendov9/interval.hpp"
#include "testutil.hpp"

using namespace sendov;
using testutil::contains_value;
using testutil::u01;

TEST_CASE("field operations enclose exact endpoint arithmetic") {
  Interval p = Interval(1.0, 2.0) * Interval(3.0, 4.0);
  CHECK(p.lo <= 3.0);
  CHECK(p.hi >= 8.0);
  CHECK(p.lo >= 3.0 - 8.0 * std::ldexp(1.0, -50));
  CHECK(p.hi <= 8.0 + 8.0 * std::ldexp(1.0, -50));

  Interval s = Interval(0.1) + Interval(0.2);
  // 0.3 is not a binary double; the sum must straddle the true value
  CHECK(contains_value(s, "3.0e-01"));
  CHECK(s.lo < s.hi);

  CHECK_THROWS_AS(Interval(-1.0, 1.0) / Interval(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(Interval(1.0) / Interval(0.0), DomainError);
}

TEST_CASE("exact results stay exact") {
  Interval one(1.0);
  CHECK(sqrt(one).lo == 1.0);
  CHECK(sqrt(one).hi == 1.0);
  CHECK(log(one).lo == 0.0);
  CHECK(log(one).hi == 0.0);
  CHECK(exp(Interval(0.0)).lo == 1.0);
  CHECK(exp(Interval(0.0)).hi == 1.0);
  CHECK(pow_int(Interval(3.0), 0).lo == 1.0);
  Interval p2 = Interval(2.0) + Interval(2.0);
  CHECK(p2.lo == 4.0);
  CHECK(p2.hi == 4.0);
  Interval r = nth_root(Interval(1.0), 9);
  CHECK(r.lo == 1.0);
  CHECK(r.hi == 1.0);
}

TEST_CASE("roots and powers against oracle-pinned values") {
  CHECK(contains_value(nth_root(Interval(0.6113), 9),
                       "9.4678308084919780578081427047000666511785026807222e-01"));
  CHECK(contains_value(pow_int(Interval(1.130975), 7),
                       "2.3668516348618685414730610183152323585780665882085e+00"));
  CHECK(contains_value(pow(Interval(9.0), Rational(1, 8)),
                       "1.3160740129524924608192189017969990551600685902058e+00"));
  CHECK(contains_value(pow(Interval(0.36002), Rational(7, 4)),
                       "1.6732914742509895992670045547862035485010372802733e-01"));
  CHECK(nth_root(Interval(0.6113), 9).width() <= 0x1p-50);
  CHECK(pow(Interval(9.0), Rational(1, 8)).width() <= 4 * 0x1p-50);
}

TEST_CASE("pow routes agree where both apply") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    double x = 0.05 + 5.0 * u01(rng);
    long p = 1 + static_cast<long>(rng() % 9);
    long q = 1 + static_cast<long>(rng() % 9);
    if (rng() % 2) p = -p;
    Interval base(x);
    Interval via_root = pow_int(nth_root(base, static_cast<int>(q)), static_cast<int>(p));
    Interval via_exp = exp(Interval::enclose(Rational(p, q)) * log(base));
    // both enclose the same real number, so they must intersect
    CHECK(via_root.intersects(via_exp));
  }
}

TEST_CASE("sin: range handling and cross-check identity") {
  const Interval& pi = pi_enclosure();
  CHECK_THROWS_AS(sin(Interval(-0.1, 0.2)), DomainError);
  CHECK_THROWS_AS(sin(Interval(3.2, 3.3)), DomainError);

  // sin(pi/3) = sqrt(3)/2
  Interval s = sin(pi / 3.0);
  Interval ref = sqrt(Interval(3.0)) / 2.0;
  CHECK(s.intersects(ref));
  CHECK(s.width() <= 0x1p-50);
  CHECK(contains_value(Interval(2.0) * sin(pi * 4.0 / 9.0),
                       "1.9696155060244161187334860491790460273412865034397e+00"));

  // hump crossing: enclosure must reach the maximum
  Interval hump = sin(Interval(1.0, 2.2));
  CHECK(hump.hi == 1.0);
  CHECK(hump.lo <= std::sin(1.0) + 1e-15);

  Interval dec = sin(Interval(2.0, 2.5));
  CHECK(dec.lo <= std::sin(2.5));
  CHECK(dec.hi >= std::sin(2.0));
}

TEST_CASE("containment: random operands, high-precision points inside") {
  std::mt19937_64 rng(2026);
  auto sample = [&](const Interval& v) { return v.lo + (v.hi - v.lo) * u01(rng); };
  int checked = 0;
  for (int i = 0; i < 100000; ++i) {
    double a = -10.0 + 20.0 * u01(rng);
    double b = a + 2.0 * u01(rng);
    double c = -10.0 + 20.0 * u01(rng);
    double d = c + 2.0 * u01(rng);
    Interval x(a, b), y(c, d);
    long double px = sample(x), py = sample(y);
    int op = static_cast<int>(rng() % 4);
    if (op == 3 && y.contains_zero()) continue;
    Interval r;
    long double pr;
    switch (op) {
      case 0: r = x + y; pr = px + py; break;
      case 1: r = x - y; pr = px - py; break;
      case 2: r = x * y; pr = px * py; break;
      default: r = x / y; pr = px / py; break;
    }
    ++checked;
    REQUIRE(static_cast<long double>(r.lo) <= pr);
    REQUIRE(pr <= static_cast<long double>(r.hi));
  }
  CHECK(checked > 70000);
}

TEST_CASE("containment: elementary functions at random points") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20000; ++i) {
    double x = 0.01 + 10.0 * u01(rng);
    Interval xi(x);
    Interval e = exp(Interval(std::min(x, 5.0)));
    long double le = expl(static_cast<long double>(std::min(x, 5.0)));
    REQUIRE(static_cast<long double>(e.lo) <= le);
    REQUIRE(le <= static_cast<long double>(e.hi));
    Interval l = log(xi);
    long double ll = logl(static_cast<long double>(x));
    REQUIRE(static_cast<long double>(l.lo) <= ll);
    REQUIRE(ll <= static_cast<long double>(l.hi));
    Interval s = sqrt(xi);
    long double ls = sqrtl(static_cast<long double>(x));
    REQUIRE(static_cast<long double>(s.lo) <= ls);
    REQUIRE(ls <= static_cast<long double>(s.hi));
  }
  for (int i = 0; i < 20000; ++i) {
    double x = 3.141 * u01(rng);
    Interval s = sin(Interval(x));
    long double ls = sinl(static_cast<long double>(x));
    REQUIRE(static_cast<long double>(s.lo) <= ls);
    REQUIRE(ls <= static_cast<long double>(s.hi));
  }
}

TEST_CASE("inclusion isotonicity: wider operands give wider results") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 10000; ++i) {
    double a = -5.0 + 10.0 * u01(rng);
    double w = u01(rng);
    Interval inner(a, a + w);
    Interval outer(a - u01(rng), a + w + u01(rng));
    double c = -5.0 + 10.0 * u01(rng);
    Interval rhs(c, c + u01(rng));
    CHECK(outer.contains(inner));
    CHECK((outer + rhs).contains(inner + rhs));
    CHECK((outer - rhs).contains(inner - rhs));
    CHECK((outer * rhs).contains(inner * rhs));
    CHECK((outer + rhs).width() >= (inner + rhs).width());
    CHECK((outer * rhs).width() >= (inner * rhs).width());
    if (!rhs.contains_zero()) CHECK((outer / rhs).contains(inner / rhs));
  }
}

TEST_CASE("negative powers and straddling bases") {
  Interval x(-2.0, 3.0);
  Interval sq = pow_int(x, 2);
  CHECK(sq.lo == 0.0);
  CHECK(sq.hi >= 9.0);
  Interval cu = pow_int(x, 3);
  CHECK(cu.lo <= -8.0);
  CHECK(cu.hi >= 27.0);
  CHECK_THROWS_AS(pow_int(Interval(-1.0, 1.0), -1), DomainError);
  Interval inv = pow_int(Interval(2.0, 4.0), -2);
  CHECK(inv.lo <= 1.0 / 16.0);
  CHECK(inv.hi >= 1.0 / 4.0);
  CHECK_THROWS_AS(sqrt(Interval(-1.0, 1.0)), DomainError);
  CHECK_THROWS_AS(log(Interval(0.0, 1.0)), DomainError);
  CHECK_THROWS_AS(pow(Interval(-2.0, -1.0), Rational(1, 2)), DomainError);
}

TEST_CASE("rational endpoints convert outward") {
  Rational tenth(1, 10);
  Interval t = Interval::enclose(tenth);
  CHECK(tenth.cmp(t.lo) >= 0);
  CHECK(tenth.cmp(t.hi) <= 0);
  CHECK(t.width() <= 0x1p-55);
  Interval half = Interval::enclose(Rational(1, 2));
  CHECK(half.lo == 0.5);
  CHECK(half.hi == 0.5);
}
