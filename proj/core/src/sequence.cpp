#include "npal/sequence.hpp"

namespace npal {

namespace {

// Decimal digits needed so the ball of a1 alpha1^n can still certify a
// distance-to-integer: n log10(alpha1) < 0.16602 n plus margin.
long binet_digits(unsigned long n) {
  return static_cast<long>((n * 16602UL + 99999UL) / 100000UL) + 48;
}

// The residual enclosure additionally cancels ~n log10(alpha1) digits
// against the envelope alpha1^{-n/2}.
long residual_digits(unsigned long n) {
  return static_cast<long>((n * 25UL + 99UL) / 100UL) + 48;
}

const AlgebraicConstants& refine(const AlgebraicConstants& c, long needed,
                                 AlgebraicConstants& storage) {
  if (c.precision_digits >= needed) return c;
  storage = make_constants(needed);
  return storage;
}

}  // namespace

mpz_class term(unsigned long n) {
  if (n == 0) return 0;
  if (n <= 2) return 1;
  mpz_class a = 0, b = 1, c = 1;  // N_{k}, N_{k+1}, N_{k+2}
  for (unsigned long k = 3; k <= n; ++k) {
    mpz_class next = c + a;
    a = b;
    b = c;
    c = next;
  }
  return c;
}

std::vector<mpz_class> terms_up_to(unsigned long n_max) {
  std::vector<mpz_class> out;
  out.reserve(n_max + 1);
  out.emplace_back(0);
  if (n_max >= 1) out.emplace_back(1);
  if (n_max >= 2) out.emplace_back(1);
  for (unsigned long n = 3; n <= n_max; ++n)
    out.emplace_back(out[n - 1] + out[n - 3]);
  return out;
}

ResidualModel::ResidualModel(const AlgebraicConstants& c)
    : abs_alpha2(RealBall::from_long(1, c.alpha1.precision()) / c.alpha1.sqrt()),
      abs_a2((RealBall::from_long(1, c.a1.precision()) /
              (RealBall::from_long(31, c.a1.precision()) * c.a1))
                 .sqrt()) {
  mpfr_prec_t p = c.alpha1.precision();
  if (!abs_alpha2.certainly_greater(RealBall::from_decimal("0.82", p)) ||
      !abs_alpha2.certainly_less(RealBall::from_decimal("0.83", p)))
    throw PrecisionError("conjugate root modulus escaped (0.82, 0.83)");
  RealBall twice = RealBall::from_long(2, p) * abs_a2;
  if (!twice.certainly_less(RealBall::from_decimal("0.56", p)))
    throw PrecisionError("conjugate coefficient bound 2|a2| <= 0.56 not certified");
  // 0.56 |alpha2| < 1/2 closes |r(n)| < 1/2 for all n >= 1.
  RealBall margin = RealBall::from_decimal("0.56", p) * abs_alpha2;
  if (!margin.certainly_less(RealBall::from_mpq(mpq_class(1, 2), p)))
    throw PrecisionError("rounding-validity margin 0.56 |alpha2| < 1/2 not certified");
}

mpz_class binet_term(unsigned long n, const AlgebraicConstants& c) {
  AlgebraicConstants storage{0, RealBall(), RealBall(), RealBall(), RealBall()};
  const AlgebraicConstants& k = refine(c, binet_digits(n), storage);
  ResidualModel model(k);  // certifies that nearest-integer rounding is valid
  RealBall b = k.a1 * k.alpha1.pow_int(static_cast<long>(n));
  mpz_class m = b.round_nearest_mid();
  RealBall gap = (b - RealBall::from_mpz(m, b.precision())).abs();
  if (!gap.certainly_less(RealBall::from_mpq(mpq_class(1, 2), b.precision())))
    throw PrecisionError("binet rounding not certified at this precision");
  return m;
}

RealBall residual(unsigned long n, const AlgebraicConstants& c) {
  AlgebraicConstants storage{0, RealBall(), RealBall(), RealBall(), RealBall()};
  const AlgebraicConstants& k = refine(c, residual_digits(n), storage);
  RealBall b = k.a1 * k.alpha1.pow_int(static_cast<long>(n));
  return RealBall::from_mpz(term(n), b.precision()) - b;
}

RealBall residual_bound(unsigned long n, const AlgebraicConstants& c) {
  AlgebraicConstants storage{0, RealBall(), RealBall(), RealBall(), RealBall()};
  const AlgebraicConstants& k = refine(c, residual_digits(n), storage);
  // alpha1^{-n/2} = exp(-(n/2) log alpha1)
  RealBall expo = RealBall::from_mpq(mpq_class(-static_cast<long>(n), 2),
                                     k.log_alpha1.precision()) *
                  k.log_alpha1;
  return expo.exp();
}

bool residual_within_bound(unsigned long n, const AlgebraicConstants& c) {
  return residual(n, c).abs().certainly_less(residual_bound(n, c));
}

namespace {

// Certified x <= v / x >= v against an exact integer, via outward endpoints.
bool certainly_leq_int(const RealBall& x, const mpz_class& v) {
  mpfr_t hi;
  mpfr_init2(hi, x.precision());
  x.upper(hi);
  bool ok = mpfr_cmp_z(hi, v.get_mpz_t()) <= 0;
  mpfr_clear(hi);
  return ok;
}

bool certainly_geq_int(const RealBall& x, const mpz_class& v) {
  mpfr_t lo;
  mpfr_init2(lo, x.precision());
  x.lower(lo);
  bool ok = mpfr_cmp_z(lo, v.get_mpz_t()) >= 0;
  mpfr_clear(lo);
  return ok;
}

}  // namespace

bool growth_bounds_hold(unsigned long n, const AlgebraicConstants& c) {
  if (n == 0) return false;  // N_0 = 0 sits below every positive power
  mpz_class N = term(n);
  // Lower exponent n-3 is sharp: induction closes because alpha1^3 =
  // alpha1^2 + 1, with equality at n = 3.  An n-2 lower bound is false for
  // every n >= 3 (a1 alpha1^2 < 1, so N_n ~ a1 alpha1^n < alpha1^{n-2}).
  RealBall lo = c.alpha1.pow_int(static_cast<long>(n) - 3);
  RealBall hi = c.alpha1.pow_int(static_cast<long>(n) - 1);
  return certainly_leq_int(lo, N) && certainly_geq_int(hi, N);
}

}  // namespace npal
