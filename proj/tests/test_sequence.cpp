#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "npal/constants.hpp"
#include "npal/sequence.hpp"

using npal::AlgebraicConstants;
using npal::make_constants;
using npal::Order;
using npal::RealBall;

TEST_CASE("recurrence spot values") {
  CHECK(npal::term(0) == 0);
  CHECK(npal::term(1) == 1);
  CHECK(npal::term(2) == 1);
  CHECK(npal::term(3) == 1);
  CHECK(npal::term(4) == 2);
  CHECK(npal::term(10) == 19);
  CHECK(npal::term(15) == 129);
  CHECK(npal::term(19) == 595);
  CHECK(npal::term(25) == 5896);
}

TEST_CASE("bulk terms agree with single terms and obey the recurrence") {
  auto all = npal::terms_up_to(200);
  REQUIRE(all.size() == 201);
  for (unsigned long n = 0; n <= 200; n += 17) CHECK(all[n] == npal::term(n));
  for (unsigned long n = 3; n <= 200; ++n) CHECK(all[n] == all[n - 1] + all[n - 3]);
}

TEST_CASE("digit growth matches the expected scale") {
  CHECK(npal::term(500).get_str().size() == 83);
  CHECK(npal::term(2000).get_str().size() == 332);
}

TEST_CASE("residual model certifies its moduli") {
  AlgebraicConstants c = make_constants(64);
  npal::ResidualModel m(c);
  CHECK(m.abs_alpha2.certainly_greater(RealBall::from_decimal("0.82", 64)));
  CHECK(m.abs_alpha2.certainly_less(RealBall::from_decimal("0.83", 64)));
  CHECK((RealBall::from_long(2, 64) * m.abs_a2)
            .certainly_less(RealBall::from_decimal("0.57", 64)));
}

TEST_CASE("closed form rounds to the exact term across a range") {
  AlgebraicConstants c = make_constants(256);
  for (unsigned long n = 1; n <= 300; ++n) CHECK(npal::binet_term(n, c) == npal::term(n));
  // beyond the base precision the evaluation must refine itself
  for (unsigned long n : {1500ul, 2000ul}) CHECK(npal::binet_term(n, c) == npal::term(n));
}

TEST_CASE("closed-form dominant part at n = 19 matches the reference") {
  AlgebraicConstants c = make_constants(64);
  RealBall dom = c.a1 * c.alpha1.pow_int(19);
  // 20-digit truncated reference, padded so it contains the exact value.
  RealBall ref = RealBall::from_decimal_pair("594.99804833627536197", "1e-16", 64);
  CHECK(RealBall::compare(dom, ref) == Order::undecided);
}

TEST_CASE("residuals stay inside the certified envelope") {
  AlgebraicConstants c = make_constants(128);
  for (unsigned long n = 1; n <= 120; ++n) CHECK(npal::residual_within_bound(n, c));
  RealBall r19 = npal::residual(19, c);
  RealBall ref = RealBall::from_decimal_pair("0.00195166372464", "1e-13", 128);
  CHECK(RealBall::compare(r19, ref) == Order::undecided);
}

TEST_CASE("growth sandwich holds on an initial range") {
  AlgebraicConstants c = make_constants(96);
  for (unsigned long n = 1; n <= 200; ++n) CHECK(npal::growth_bounds_hold(n, c));
}
