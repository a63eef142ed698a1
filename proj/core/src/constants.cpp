#include "npal/constants.hpp"

#include <array>

namespace npal {

namespace {

// Cubic c3 x^3 + c2 x^2 + c1 x + c0 evaluated on a ball.
RealBall eval_cubic(const std::array<long, 4>& c, const RealBall& x) {
  mpfr_prec_t p = x.precision();
  RealBall acc = RealBall::from_long(c[0], p);
  for (int i = 1; i < 4; ++i) acc = acc * x + RealBall::from_long(c[i], p);
  return acc;
}

// Point evaluation of the cubic and its derivative in plain MPFR.
void eval_cubic_point(const std::array<long, 4>& c, mpfr_srcptr x, mpfr_ptr f,
                      mpfr_ptr df) {
  mpfr_prec_t p = mpfr_get_prec(x);
  mpfr_t acc, dacc;
  mpfr_init2(acc, p);
  mpfr_init2(dacc, p);
  mpfr_set_si(acc, c[0], MPFR_RNDN);
  mpfr_set_zero(dacc, 1);
  for (int i = 1; i < 4; ++i) {
    // d/dx (acc * x + c_i) = dacc * x + acc
    mpfr_mul(dacc, dacc, x, MPFR_RNDN);
    mpfr_add(dacc, dacc, acc, MPFR_RNDN);
    mpfr_mul(acc, acc, x, MPFR_RNDN);
    mpfr_add_si(acc, acc, c[i], MPFR_RNDN);
  }
  mpfr_set(f, acc, MPFR_RNDN);
  mpfr_set(df, dacc, MPFR_RNDN);
  mpfr_clear(acc);
  mpfr_clear(dacc);
}

// Newton-refines the root near `seed` and certifies it by a sign change of
// the cubic across [x - delta, x + delta].
RealBall certified_root(const std::array<long, 4>& coeffs, double seed,
                        mpfr_prec_t prec, long iteration_budget) {
  mpfr_t x, f, df, dx;
  mpfr_init2(x, prec);
  mpfr_init2(f, prec);
  mpfr_init2(df, prec);
  mpfr_init2(dx, prec);
  mpfr_set_d(x, seed, MPFR_RNDN);

  bool converged = false;
  for (long it = 0; it < iteration_budget; ++it) {
    eval_cubic_point(coeffs, x, f, df);
    if (mpfr_zero_p(df)) break;
    mpfr_div(dx, f, df, MPFR_RNDN);
    mpfr_sub(x, x, dx, MPFR_RNDN);
    if (mpfr_zero_p(dx) ||
        mpfr_get_exp(dx) < mpfr_get_exp(x) - static_cast<mpfr_exp_t>(prec) + 4) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    mpfr_clears(x, f, df, dx, static_cast<mpfr_ptr>(nullptr));
    throw PrecisionError("root refinement did not converge within budget");
  }

  // Widen delta = 2^(-prec + k) until the cubic certifiably changes sign.
  for (long k = 4; k <= 96; k += 4) {
    mpfr_t lo, hi;
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    mpfr_t delta;
    mpfr_init2(delta, prec);
    mpfr_set_ui_2exp(delta, 1, -static_cast<mpfr_exp_t>(prec) + k, MPFR_RNDN);
    mpfr_sub(lo, x, delta, MPFR_RNDD);
    mpfr_add(hi, x, delta, MPFR_RNDU);
    RealBall blo = RealBall::from_endpoints(lo, lo, prec);
    RealBall bhi = RealBall::from_endpoints(hi, hi, prec);
    RealBall flo = eval_cubic(coeffs, blo);
    RealBall fhi = eval_cubic(coeffs, bhi);
    bool change = (flo.certainly_negative() && fhi.certainly_positive()) ||
                  (flo.certainly_positive() && fhi.certainly_negative());
    if (change) {
      RealBall root = RealBall::from_endpoints(lo, hi, prec);
      mpfr_clears(lo, hi, delta, x, f, df, dx, static_cast<mpfr_ptr>(nullptr));
      return root;
    }
    mpfr_clears(lo, hi, delta, static_cast<mpfr_ptr>(nullptr));
  }
  mpfr_clears(x, f, df, dx, static_cast<mpfr_ptr>(nullptr));
  throw PrecisionError("root enclosure could not be certified");
}

void require_bracket(const RealBall& x, const char* lo, const char* hi,
                     const char* what) {
  mpfr_prec_t p = x.precision();
  if (!x.certainly_greater(RealBall::from_decimal(lo, p)) ||
      !x.certainly_less(RealBall::from_decimal(hi, p)))
    throw PrecisionError(std::string("root enclosure escaped its bracket: ") + what);
}

}  // namespace

AlgebraicConstants make_constants(long precision_digits) {
  if (precision_digits < 32) throw DomainError("precision below 32 digits");
  mpfr_prec_t prec = digits_to_bits(precision_digits);
  long budget = 10 * precision_digits;

  RealBall alpha1 = certified_root({1, -1, 0, -1}, 1.4656, prec, budget);
  require_bracket(alpha1, "1.46", "1.47", "alpha1");
  RealBall a1 = certified_root({31, 0, -3, -1}, 0.4172, prec, budget);
  require_bracket(a1, "0.41", "0.42", "a1");

  // Cross-check the two roots against the defining identity
  // a1 = alpha1 / (3 alpha1^2 - 2 alpha1).
  RealBall three = RealBall::from_long(3, prec);
  RealBall two = RealBall::from_long(2, prec);
  RealBall denom = three * alpha1 * alpha1 - two * alpha1;
  RealBall diff = a1 - alpha1 / denom;
  if (!diff.contains_zero())
    throw PrecisionError("alpha1 and a1 enclosures are inconsistent");

  RealBall log_alpha1 = alpha1.log();
  RealBall log10 = RealBall::from_long(10, prec).log();
  return AlgebraicConstants{precision_digits, std::move(alpha1), std::move(a1),
                            std::move(log_alpha1), std::move(log10)};
}

}  // namespace npal
