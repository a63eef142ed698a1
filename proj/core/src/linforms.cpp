#include "npal/linforms.hpp"

namespace npal {

namespace {

RealBall ln_of_long(long v, mpfr_prec_t p) {
  return RealBall::from_long(v, p).log();
}

// ceil of the ball's lower endpoint (outward toward smaller integers).
mpz_class ceil_lower(const RealBall& x) {
  mpfr_t lo;
  mpfr_init2(lo, x.precision());
  x.lower(lo);
  mpz_class r;
  mpfr_get_z(r.get_mpz_t(), lo, MPFR_RNDU);
  mpfr_clear(lo);
  return r;
}

// floor of the ball's upper endpoint (outward toward larger integers).
mpz_class floor_upper(const RealBall& x) {
  mpfr_t hi;
  mpfr_init2(hi, x.precision());
  x.upper(hi);
  mpz_class r;
  mpfr_get_z(r.get_mpz_t(), hi, MPFR_RNDD);
  mpfr_clear(hi);
  return r;
}

mpz_class ceil_upper(const RealBall& x) {
  mpfr_t hi;
  mpfr_init2(hi, x.precision());
  x.upper(hi);
  mpz_class r;
  mpfr_get_z(r.get_mpz_t(), hi, MPFR_RNDU);
  mpfr_clear(hi);
  return r;
}

bool entirely_below(const RealBall& x, const std::string& target) {
  return x.certainly_less(RealBall::from_decimal(target, x.precision()));
}

}  // namespace

RealBall height_rational(const mpz_class& num, const mpz_class& den,
                         long precision_digits) {
  if (den == 0) throw DomainError("invalid rational: zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  mpz_class top = ::abs(q.get_num());
  if (top < q.get_den()) top = q.get_den();
  mpfr_prec_t p = digits_to_bits(precision_digits);
  if (top == 1) return RealBall(p);  // log 1 = 0 exactly
  return RealBall::from_mpz(top, p).log();
}

RealBall height_a1(const AlgebraicConstants& c) {
  mpfr_prec_t p = c.a1.precision();
  RealBall one = RealBall::from_long(1, p);
  if (!c.a1.certainly_positive() || !c.a1.certainly_less(one))
    throw PrecisionError("a1 not certified inside (0, 1)");
  // |a2|^2 = 1/(31 a1) < 1 puts the complex conjugates inside the unit disk.
  RealBall conj_sq = one / (RealBall::from_long(31, p) * c.a1);
  if (!conj_sq.certainly_less(one))
    throw PrecisionError("conjugate moduli of a1 not certified < 1");
  return ln_of_long(31, p) / RealBall::from_long(3, p);
}

RealBall matveev_coefficient(const MatveevInstance& inst) {
  if (inst.log_count < 1) throw DomainError("instance needs at least one logarithm");
  if (inst.degree < 1) throw DomainError("field degree must be >= 1");
  if (inst.a_values.size() != static_cast<size_t>(inst.log_count))
    throw DomainError("instance needs exactly one A value per logarithm");
  mpfr_prec_t p = MPFR_PREC_MIN;
  for (const RealBall& a : inst.a_values) p = std::max(p, a.precision());
  p = std::max<mpfr_prec_t>(p, 128);
  RealBall floor016 = RealBall::from_decimal("0.16", p);
  for (const RealBall& a : inst.a_values)
    if (a.certainly_less(floor016))
      throw LemmaError("A value certifiably below the 0.16 floor");

  long s = inst.log_count;
  long d = inst.degree;
  // 1.4 * 30^{s+3} * s^{4.5} * d^2 * (1 + log d), with s^{4.5} = s^4 sqrt(s).
  RealBall acc = RealBall::from_decimal("1.4", p);
  acc = acc * RealBall::from_long(30, p).pow_int(s + 3);
  RealBall sb = RealBall::from_long(s, p);
  acc = acc * sb.pow_int(4) * sb.sqrt();
  acc = acc * RealBall::from_long(d * d, p);
  acc = acc * (RealBall::from_long(1, p) + ln_of_long(d, p));
  for (const RealBall& a : inst.a_values) acc = acc * a;
  return acc;
}

RealBall matveev_lower_bound(const MatveevInstance& inst, const mpz_class& D) {
  if (D < 1) throw DomainError("coefficient bound D must be >= 1");
  RealBall coeff = matveev_coefficient(inst);
  mpfr_prec_t p = coeff.precision();
  RealBall one = RealBall::from_long(1, p);
  RealBall logD = D == 1 ? RealBall(p) : RealBall::from_mpz(D, p).log();
  return coeff * (one + logD);
}

DerivedBounds derive_bounds(const AlgebraicConstants& c) {
  mpfr_prec_t p = c.alpha1.precision();
  RealBall one = RealBall::from_long(1, p);
  RealBall two = RealBall::from_long(2, p);
  RealBall three = RealBall::from_long(3, p);
  RealBall ln2 = ln_of_long(2, p);
  RealBall ln3 = ln_of_long(3, p);
  RealBall ln9 = ln_of_long(9, p);
  RealBall ln27 = ln_of_long(27, p);
  RealBall ln90 = ln_of_long(90, p);
  RealBall h_a1 = ln_of_long(31, p) / three;

  // Shared magnitude: C(3,3) * A2 * A3 with A2 = 3 h(alpha1) = log alpha1
  // and A3 = 3 h(10) = 3 log 10.
  RealBall base = RealBall::from_decimal("1.4", p) *
                  RealBall::from_long(30, p).pow_int(6) *
                  three.pow_int(4) * three.sqrt() * RealBall::from_long(9, p) *
                  (one + ln3) * c.log_alpha1 * (three * c.log10);

  // Step 1: the rational factor is 9 a1 / f1; h <= log 9 + h(a1) + log 9.
  RealBall h1 = ln9 + h_a1 + ln9;
  RealBall a1v = three * h1;
  RealBall c1 = base * a1v;
  RealBall coeff1 = c1 + ln27;
  StepBound step1{1, coeff1, 1};

  // Step 2: h(lambda) <= 3 log 9 + h(a1) + u1 log 10 + log 2 and
  // u1 log 10 < coeff1 (1 + log n) folds into a single coefficient.
  RealBall h2c = coeff1 + three * ln9 + h_a1 + ln2;
  RealBall a2v = three * h2c;
  RealBall c2 = base * a2v;
  RealBall coeff2 = c2 + ln27;
  StepBound step2{2, coeff2, 2};

  // (u1 + u2) log 10 < (coeff1 + coeff2)(1 + log n)^2.
  RealBall coeff12 = coeff1 + coeff2;
  StepBound combined{2, coeff12, 2};

  // Step 3: the rational factor is an integer V <= 10^{u1+u2+1} over 9 a1,
  // so h <= (u1 + u2) log 10 + log 90 + h(a1).
  RealBall h3c = coeff12 + ln90 + h_a1;
  RealBall a3v = three * h3c;
  RealBall c3 = base * a3v;

  // n log alpha1 - log 2 < c3 (1 + log n)^3; for n > 500 absorb log 2 into
  // the cube and divide: n / (1 + log n)^3 < T0.
  RealBall ln500_cube = (one + ln_of_long(500, p)).pow_int(3);
  RealBall T0 = (c3 + ln2 / ln500_cube) / c.log_alpha1;

  // x := e n turns (1 + log n)^3 into (log x)^3 exactly; apply the
  // conversion lemma with m = 3 to T' = e T0 and divide the result by e.
  RealBall e = one.exp();
  RealBall Tp = e * T0;
  RealBall x_bound = conversion_bound(3, Tp);
  RealBall n_bound_ball = x_bound / e;
  mpz_class n_bound = ceil_upper(n_bound_ball) - 1;

  // Length bound: 10^{2u1+u2-1} <= N_n <= alpha1^{n-1} gives
  // 2u1+u2 <= (n log alpha1 + 2) / log 10 at the index bound.
  RealBall len_ball = (RealBall::from_mpz(n_bound, p) * c.log_alpha1 + two) / c.log10;
  mpz_class len_bound = floor_upper(len_ball);

  return DerivedBounds{std::move(base), std::move(h1),   std::move(a1v),
                       std::move(c1),   std::move(step1), std::move(h2c),
                       std::move(a2v),  std::move(c2),    std::move(step2),
                       std::move(combined), std::move(h3c), std::move(a3v),
                       std::move(c3),   std::move(T0),    std::move(n_bound),
                       std::move(len_bound)};
}

std::vector<TargetCheck> check_against_targets(const DerivedBounds& b) {
  std::vector<TargetCheck> out;
  auto push = [&out](const std::string& name, const RealBall& derived,
                     const std::string& target) {
    out.push_back(TargetCheck{name, derived.brief(12), target,
                              entirely_below(derived, target)});
  };
  push("step1_height", b.step1_height, "5.54");
  push("step1_a_value", b.step1_a_value, "16.62");
  push("step1_magnitude", b.step1_magnitude, "1.20e14");
  push("step1_coefficient", b.step1.coefficient, "1.21e14");
  push("step2_height_coefficient", b.step2_height_coeff, "1.22e14");
  push("step2_a_coefficient", b.step2_a_coeff, "3.66e14");
  push("step2_magnitude", b.step2_magnitude, "2.64e27");
  push("step2_coefficient", b.step2.coefficient, "2.65e27");
  push("combined_coefficient", b.combined.coefficient, "2.66e27");
  push("step3_a_coefficient", b.step3_a_coeff, "8.01e27");
  push("step3_magnitude", b.step3_magnitude, "5.77e40");
  push("index_threshold", b.index_threshold, "1.53e41");

  auto push_int = [&out](const std::string& name, const mpz_class& derived,
                         const mpz_class& target, const std::string& shown) {
    out.push_back(
        TargetCheck{name, derived.get_str(), shown, derived <= target});
  };
  mpz_class p46, p45;
  mpz_ui_pow_ui(p46.get_mpz_t(), 10, 46);
  mpz_ui_pow_ui(p45.get_mpz_t(), 10, 45);
  push_int("index_bound", b.index_bound, 105 * p46, "1.05e48");
  push_int("length_bound", b.length_bound, 176 * p45, "1.76e47");
  return out;
}

RealBall conversion_bound(long m, const RealBall& T) {
  if (m < 1) throw DomainError("conversion lemma needs m >= 1");
  if (!T.certainly_positive()) throw LemmaError("lemma inapplicable: T not positive");
  mpfr_prec_t p = T.precision();
  mpz_class cond;
  mpz_ui_pow_ui(cond.get_mpz_t(), static_cast<unsigned long>(4 * m * m),
                static_cast<unsigned long>(m));
  if (!T.certainly_greater(RealBall::from_mpz(cond, p)))
    throw LemmaError("lemma inapplicable: T <= (4 m^2)^m not excluded");
  mpz_class two_m;
  mpz_ui_pow_ui(two_m.get_mpz_t(), 2, static_cast<unsigned long>(m));
  return RealBall::from_mpz(two_m, p) * T * T.log().pow_int(m);
}

IndexWindow length_index_window(unsigned long u1, unsigned long u2,
                                const AlgebraicConstants& c) {
  if (u1 == 0 || u2 == 0) throw DomainError("block lengths must be >= 1");
  mpfr_prec_t p = c.alpha1.precision();
  RealBall S = RealBall::from_long(static_cast<long>(2 * u1 + u2), p);
  // Lower end: 10^{S-1} <= N_n <= alpha1^{n-1} gives
  //   n >= (S-1) log10 / log alpha1 + 1 > (S log10 - 2) / log alpha1.
  // Upper end: a1 alpha1^n - 1 <= N_n < 10^S gives
  //   n log alpha1 < S log10 + log(1 + 10^{-S}) + log(1/a1),
  // and log(1/a1) ~ 0.8741 plus log(1.1) ~ 0.0953 stays below 1 for every
  // S >= 1, so (S log10 + 1) / log alpha1 is a certified bound.  (The
  // growth sandwich's n-3 lower exponent alone would only give + 3 log
  // alpha1 ~ 1.147 here, which is too weak for this window.)
  RealBall lo = (S * c.log10 - RealBall::from_long(2, p)) / c.log_alpha1;
  RealBall hi = (S * c.log10 + RealBall::from_long(1, p)) / c.log_alpha1;
  return IndexWindow{ceil_lower(lo), floor_upper(hi)};
}

}  // namespace npal
