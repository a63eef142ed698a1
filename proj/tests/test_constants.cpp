#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "npal/constants.hpp"
#include "npal/errors.hpp"

using npal::AlgebraicConstants;
using npal::make_constants;
using npal::Order;
using npal::RealBall;

namespace {

// 40-digit reference enclosures computed independently.
const char* kAlpha1 = "1.4655712318767680266567312252199391080256";
const char* kA1 = "0.4172379879262187776214755164102925471024";

bool encloses_reference(const RealBall& b, const char* ref) {
  // The reference is a truncated 40-digit decimal, so pad it to a ball that
  // provably contains the exact constant; overlap is then forced.
  RealBall r = RealBall::from_decimal_pair(ref, "1e-39", b.precision());
  return RealBall::compare(b, r) == Order::undecided;
}

}  // namespace

TEST_CASE("dominant root and coefficient match 40-digit references") {
  AlgebraicConstants c = make_constants(64);
  CHECK(encloses_reference(c.alpha1, kAlpha1));
  CHECK(encloses_reference(c.a1, kA1));
}

TEST_CASE("roots satisfy their cubics within the enclosure") {
  AlgebraicConstants c = make_constants(128);
  RealBall va = c.alpha1.pow_int(3) - c.alpha1.pow_int(2) - RealBall::from_long(1, c.alpha1.precision());
  CHECK(va.contains_zero());
  mpfr_prec_t q = c.a1.precision();
  RealBall vb = RealBall::from_long(31, q) * c.a1.pow_int(3) -
                RealBall::from_long(3, q) * c.a1 - RealBall::from_long(1, q);
  CHECK(vb.contains_zero());
}

TEST_CASE("enclosures respect the documented brackets") {
  AlgebraicConstants c = make_constants(64);
  CHECK(c.alpha1.certainly_greater(RealBall::from_decimal("1.46", 64)));
  CHECK(c.alpha1.certainly_less(RealBall::from_decimal("1.47", 64)));
  CHECK(c.a1.certainly_greater(RealBall::from_decimal("0.41", 64)));
  CHECK(c.a1.certainly_less(RealBall::from_decimal("0.42", 64)));
}

TEST_CASE("logarithms are consistent with their arguments") {
  AlgebraicConstants c = make_constants(96);
  CHECK(RealBall::compare(c.log_alpha1.exp(), c.alpha1) == Order::undecided);
  CHECK(c.log10.exp().contains(mpq_class(10)));
}

TEST_CASE("higher precision tightens every enclosure") {
  AlgebraicConstants lo = make_constants(48);
  AlgebraicConstants hi = make_constants(300);
  CHECK(hi.alpha1.contained_in(lo.alpha1));
  CHECK(hi.a1.contained_in(lo.a1));
  CHECK(hi.log_alpha1.contained_in(lo.log_alpha1));
  CHECK(hi.log10.contained_in(lo.log10));
  // and the 300-digit enclosure really carries more digits: radius below 1e-250
  RealBall tiny = RealBall::from_decimal("1e-250", 64);
  RealBall rad = RealBall::from_decimal(hi.alpha1.rad_decimal(), 64);
  CHECK(rad.certainly_less(tiny));
}

TEST_CASE("precision floor is enforced") {
  CHECK_THROWS_AS(make_constants(16), npal::DomainError);
}
