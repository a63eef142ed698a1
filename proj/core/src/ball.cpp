#include "npal/ball.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>

namespace npal {

namespace {

constexpr mpfr_prec_t kRadPrec = 64;

// RAII scratch mpfr value.
struct Scratch {
  mpfr_t v;
  explicit Scratch(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  ~Scratch() { mpfr_clear(v); }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
  operator mpfr_ptr() { return v; }
  operator mpfr_srcptr() const { return v; }
  // mpfr's function-like macros expand to (x)->_mpfr_... member access
  mpfr_ptr operator->() { return v; }
  mpfr_srcptr operator->() const { return v; }
};

// |x| rounded toward the requested direction at radius precision.
void abs_rounded(mpfr_ptr out, mpfr_srcptr x, mpfr_rnd_t rnd) {
  mpfr_abs(out, x, rnd);
}

std::string format_scientific(mpfr_srcptr x, mpfr_rnd_t rnd, size_t ndigits = 0) {
  if (mpfr_zero_p(x)) return "0";
  mpfr_exp_t e = 0;
  // ndigits = 0: mpfr picks the minimal digit count that round-trips exactly.
  char* raw = mpfr_get_str(nullptr, &e, 10, ndigits, x, rnd);
  if (raw == nullptr) throw PrecisionError("decimal conversion failed");
  std::string digits(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!digits.empty() && digits[0] == '-') {
    sign = "-";
    digits.erase(digits.begin());
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  std::string out = sign + digits.substr(0, 1);
  if (digits.size() > 1) out += "." + digits.substr(1);
  out += "e" + std::to_string(static_cast<long>(e - 1));
  return out;
}

}  // namespace

mpfr_prec_t digits_to_bits(long digits) {
  // 10^digits < 2^(3.322*digits); add headroom for intermediate rounding.
  return static_cast<mpfr_prec_t>((digits * 3322) / 1000 + 64);
}

RealBall::RealBall(mpfr_prec_t prec) : prec_(prec) {
  if (prec < MPFR_PREC_MIN) throw DomainError("ball precision too small");
  mpfr_init2(mid_, prec_);
  mpfr_init2(rad_, kRadPrec);
  mpfr_set_zero(mid_, 1);
  mpfr_set_zero(rad_, 1);
}

RealBall::RealBall(const RealBall& o) : prec_(o.prec_) {
  mpfr_init2(mid_, prec_);
  mpfr_init2(rad_, kRadPrec);
  mpfr_set(mid_, o.mid_, MPFR_RNDN);
  mpfr_set(rad_, o.rad_, MPFR_RNDU);
}

RealBall::RealBall(RealBall&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(mid_, MPFR_PREC_MIN);
  mpfr_init2(rad_, MPFR_PREC_MIN);
  mpfr_swap(mid_, o.mid_);
  mpfr_swap(rad_, o.rad_);
}

RealBall& RealBall::operator=(const RealBall& o) {
  if (this != &o) {
    mpfr_set_prec(mid_, o.prec_);
    mpfr_set(mid_, o.mid_, MPFR_RNDN);
    mpfr_set(rad_, o.rad_, MPFR_RNDU);
    prec_ = o.prec_;
  }
  return *this;
}

RealBall& RealBall::operator=(RealBall&& o) noexcept {
  if (this != &o) {
    mpfr_swap(mid_, o.mid_);
    mpfr_swap(rad_, o.rad_);
    std::swap(prec_, o.prec_);
  }
  return *this;
}

RealBall::~RealBall() {
  mpfr_clear(mid_);
  mpfr_clear(rad_);
}

void RealBall::add_rounding_slack(int ternary) {
  if (ternary == 0) return;
  if (mpfr_zero_p(mid_)) {
    // Round-to-nearest yields zero inexactly only on underflow, which the
    // quantities handled here never approach.
    throw PrecisionError("inexact zero midpoint");
  }
  Scratch ulp(kRadPrec);
  mpfr_set_ui_2exp(ulp, 1, mpfr_get_exp(mid_) - prec_, MPFR_RNDU);
  mpfr_add(rad_, rad_, ulp, MPFR_RNDU);
}

RealBall RealBall::from_long(long v, mpfr_prec_t prec) {
  RealBall r(prec);
  int t = mpfr_set_si(r.mid_, v, MPFR_RNDN);
  r.add_rounding_slack(t);
  return r;
}

RealBall RealBall::from_mpz(const mpz_class& v, mpfr_prec_t prec) {
  RealBall r(prec);
  int t = mpfr_set_z(r.mid_, v.get_mpz_t(), MPFR_RNDN);
  r.add_rounding_slack(t);
  return r;
}

RealBall RealBall::from_mpq(const mpq_class& v, mpfr_prec_t prec) {
  RealBall r(prec);
  int t = mpfr_set_q(r.mid_, v.get_mpq_t(), MPFR_RNDN);
  r.add_rounding_slack(t);
  return r;
}

RealBall RealBall::from_decimal(const std::string& s, mpfr_prec_t prec) {
  RealBall r(prec);
  const char* begin = s.c_str();
  char* end = nullptr;
  int t = mpfr_strtofr(r.mid_, begin, &end, 10, MPFR_RNDN);
  if (end == begin || end == nullptr || *end != '\0')
    throw DomainError("malformed decimal literal: " + s);
  r.add_rounding_slack(t);
  return r;
}

RealBall RealBall::from_decimal_pair(const std::string& mid, const std::string& rad,
                                     mpfr_prec_t prec) {
  RealBall r = from_decimal(mid, prec);
  Scratch extra(kRadPrec);
  const char* begin = rad.c_str();
  char* end = nullptr;
  mpfr_strtofr(extra, begin, &end, 10, MPFR_RNDU);
  if (end == begin || end == nullptr || *end != '\0')
    throw DomainError("malformed decimal literal: " + rad);
  if (mpfr_sgn(extra) < 0) throw DomainError("negative radius");
  mpfr_add(r.rad_, r.rad_, extra, MPFR_RNDU);
  return r;
}

RealBall RealBall::from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec) {
  if (mpfr_cmp(lo, hi) > 0) throw DomainError("from_endpoints: lo > hi");
  RealBall r(prec);
  int t = mpfr_add(r.mid_, lo, hi, MPFR_RNDN);
  t |= mpfr_div_ui(r.mid_, r.mid_, 2, MPFR_RNDN);
  (void)t;  // the radius below is measured from the rounded midpoint
  Scratch d1(kRadPrec), d2(kRadPrec);
  mpfr_sub(d1, r.mid_, lo, MPFR_RNDU);
  mpfr_sub(d2, hi, r.mid_, MPFR_RNDU);
  if (mpfr_sgn(d1) < 0) mpfr_set_zero(d1, 1);
  if (mpfr_sgn(d2) < 0) mpfr_set_zero(d2, 1);
  mpfr_max(r.rad_, d1, d2, MPFR_RNDU);
  return r;
}

void RealBall::lower(mpfr_ptr out) const { mpfr_sub(out, mid_, rad_, MPFR_RNDD); }

void RealBall::upper(mpfr_ptr out) const { mpfr_add(out, mid_, rad_, MPFR_RNDU); }

bool RealBall::is_exact() const { return mpfr_zero_p(rad_); }

RealBall RealBall::operator-() const {
  RealBall r(*this);
  mpfr_neg(r.mid_, r.mid_, MPFR_RNDN);  // exact
  return r;
}

RealBall operator+(const RealBall& a, const RealBall& b) {
  RealBall r(std::max(a.prec_, b.prec_));
  int t = mpfr_add(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
  r.add_rounding_slack(t);
  return r;
}

RealBall operator-(const RealBall& a, const RealBall& b) {
  RealBall r(std::max(a.prec_, b.prec_));
  int t = mpfr_sub(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
  r.add_rounding_slack(t);
  return r;
}

RealBall operator*(const RealBall& a, const RealBall& b) {
  RealBall r(std::max(a.prec_, b.prec_));
  int t = mpfr_mul(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  // |x*y - mx*my| <= |mx|*rb + |my|*ra + ra*rb
  Scratch am(kRadPrec), bm(kRadPrec), term(kRadPrec);
  abs_rounded(am, a.mid_, MPFR_RNDU);
  abs_rounded(bm, b.mid_, MPFR_RNDU);
  mpfr_mul(term, am, b.rad_, MPFR_RNDU);
  mpfr_add(r.rad_, r.rad_, term, MPFR_RNDU);
  mpfr_mul(term, bm, a.rad_, MPFR_RNDU);
  mpfr_add(r.rad_, r.rad_, term, MPFR_RNDU);
  mpfr_mul(term, a.rad_, b.rad_, MPFR_RNDU);
  mpfr_add(r.rad_, r.rad_, term, MPFR_RNDU);
  r.add_rounding_slack(t);
  return r;
}

RealBall operator/(const RealBall& a, const RealBall& b) {
  // Certify 0 is outside b: |mb| - rb > 0 with downward rounding.
  Scratch bm_lo(kRadPrec), margin(kRadPrec);
  abs_rounded(bm_lo, b.mid_, MPFR_RNDD);
  mpfr_sub(margin, bm_lo, b.rad_, MPFR_RNDD);
  if (mpfr_sgn(margin) <= 0) throw DomainError("division by interval containing zero");

  RealBall r(std::max(a.prec_, b.prec_));
  int t = mpfr_div(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
  // |x/y - ma/mb| <= (|ma|*rb + |mb|*ra) / (|mb| * (|mb| - rb))
  Scratch am(kRadPrec), bm(kRadPrec), num(kRadPrec), term(kRadPrec), den(kRadPrec);
  abs_rounded(am, a.mid_, MPFR_RNDU);
  abs_rounded(bm, b.mid_, MPFR_RNDU);
  mpfr_mul(num, am, b.rad_, MPFR_RNDU);
  mpfr_mul(term, bm, a.rad_, MPFR_RNDU);
  mpfr_add(num, num, term, MPFR_RNDU);
  mpfr_mul(den, bm_lo, margin, MPFR_RNDD);
  mpfr_div(r.rad_, num, den, MPFR_RNDU);
  r.add_rounding_slack(t);
  return r;
}

RealBall RealBall::abs() const {
  RealBall r(*this);
  mpfr_abs(r.mid_, r.mid_, MPFR_RNDN);  // exact
  return r;
}

RealBall RealBall::log() const {
  Scratch lo(prec_), hi(prec_);
  lower(lo);
  upper(hi);
  if (mpfr_sgn(lo) <= 0) throw DomainError("log of interval touching zero");
  Scratch llo(prec_), lhi(prec_);
  mpfr_log(llo, lo, MPFR_RNDD);
  mpfr_log(lhi, hi, MPFR_RNDU);
  return from_endpoints(llo, lhi, prec_);
}

RealBall RealBall::exp() const {
  Scratch lo(prec_), hi(prec_);
  lower(lo);
  upper(hi);
  Scratch elo(prec_), ehi(prec_);
  mpfr_exp(elo, lo, MPFR_RNDD);
  mpfr_exp(ehi, hi, MPFR_RNDU);
  return from_endpoints(elo, ehi, prec_);
}

RealBall RealBall::sqrt() const {
  Scratch lo(prec_), hi(prec_);
  lower(lo);
  upper(hi);
  if (mpfr_sgn(lo) < 0) throw DomainError("sqrt of interval containing negatives");
  Scratch slo(prec_), shi(prec_);
  mpfr_sqrt(slo, lo, MPFR_RNDD);
  mpfr_sqrt(shi, hi, MPFR_RNDU);
  return from_endpoints(slo, shi, prec_);
}

RealBall RealBall::pow_int(long k) const {
  if (k == 0) return from_long(1, prec_);
  Scratch lo(prec_), hi(prec_);
  lower(lo);
  upper(hi);
  if (k < 0) {
    if (mpfr_sgn(lo) <= 0) throw DomainError("negative power of interval touching zero");
    Scratch rlo(prec_), rhi(prec_);
    mpfr_pow_si(rlo, hi, k, MPFR_RNDD);  // x^k decreasing for k < 0, x > 0
    mpfr_pow_si(rhi, lo, k, MPFR_RNDU);
    return from_endpoints(rlo, rhi, prec_);
  }
  if (k > 1 && mpfr_sgn(lo) < 0)
    throw DomainError("power of interval containing negatives");
  Scratch rlo(prec_), rhi(prec_);
  mpfr_pow_si(rlo, lo, k, MPFR_RNDD);
  mpfr_pow_si(rhi, hi, k, MPFR_RNDU);
  return from_endpoints(rlo, rhi, prec_);
}

Order RealBall::compare(const RealBall& a, const RealBall& b) {
  Scratch a_hi(a.prec_), b_lo(b.prec_);
  a.upper(a_hi);
  b.lower(b_lo);
  if (mpfr_cmp(a_hi, b_lo) < 0) return Order::less;
  Scratch a_lo(a.prec_), b_hi(b.prec_);
  a.lower(a_lo);
  b.upper(b_hi);
  if (mpfr_cmp(a_lo, b_hi) > 0) return Order::greater;
  return Order::undecided;
}

bool RealBall::certainly_less(const RealBall& o) const {
  return compare(*this, o) == Order::less;
}

bool RealBall::certainly_greater(const RealBall& o) const {
  return compare(*this, o) == Order::greater;
}

bool RealBall::certainly_positive() const {
  Scratch lo(prec_);
  lower(lo);
  return mpfr_sgn(lo) > 0;
}

bool RealBall::certainly_negative() const {
  Scratch hi(prec_);
  upper(hi);
  return mpfr_sgn(hi) < 0;
}

bool RealBall::contains_zero() const {
  return !certainly_positive() && !certainly_negative();
}

bool RealBall::contains(const mpq_class& v) const {
  Scratch lo(prec_), hi(prec_);
  lower(lo);
  upper(hi);
  return mpfr_cmp_q(lo, v.get_mpq_t()) <= 0 && mpfr_cmp_q(hi, v.get_mpq_t()) >= 0;
}

bool RealBall::contains_int(const mpz_class& v) const {
  Scratch lo(prec_), hi(prec_);
  lower(lo);
  upper(hi);
  return mpfr_cmp_z(lo, v.get_mpz_t()) <= 0 && mpfr_cmp_z(hi, v.get_mpz_t()) >= 0;
}

bool RealBall::contained_in(const RealBall& o) const {
  Scratch my_lo(prec_), my_hi(prec_), o_lo(o.prec_), o_hi(o.prec_);
  lower(my_lo);
  upper(my_hi);
  // Inner approximation of o's interval keeps the test conservative.
  mpfr_sub(o_lo, o.mid_, o.rad_, MPFR_RNDU);
  mpfr_add(o_hi, o.mid_, o.rad_, MPFR_RNDD);
  return mpfr_cmp(my_lo, o_lo) >= 0 && mpfr_cmp(my_hi, o_hi) <= 0;
}

namespace {

// Enclosure [dlo, dhi] of |t - nearest_int(t)| for a point value t.
void point_int_distance(mpfr_srcptr t, mpfr_ptr dlo, mpfr_ptr dhi, mpfr_prec_t prec) {
  mpz_class m;
  mpfr_get_z(m.get_mpz_t(), t, MPFR_RNDN);
  Scratch u_lo(prec), u_hi(prec);
  mpfr_sub_z(u_lo, t, m.get_mpz_t(), MPFR_RNDD);
  mpfr_sub_z(u_hi, t, m.get_mpz_t(), MPFR_RNDU);
  if (mpfr_sgn(u_lo) >= 0) {
    mpfr_set(dlo, u_lo, MPFR_RNDD);
    mpfr_set(dhi, u_hi, MPFR_RNDU);
  } else if (mpfr_sgn(u_hi) <= 0) {
    mpfr_neg(dlo, u_hi, MPFR_RNDD);
    mpfr_neg(dhi, u_lo, MPFR_RNDU);
  } else {
    mpfr_set_zero(dlo, 1);
    Scratch n_lo(prec);
    mpfr_neg(n_lo, u_lo, MPFR_RNDU);
    mpfr_max(dhi, n_lo, u_hi, MPFR_RNDU);
  }
  // Mathematically <= 1/2; clip any outward rounding excess.
  Scratch half(prec);
  mpfr_set_ui_2exp(half, 1, -1, MPFR_RNDN);
  if (mpfr_cmp(dhi, half) > 0) mpfr_set(dhi, half, MPFR_RNDN);
  if (mpfr_cmp(dlo, half) > 0) mpfr_set(dlo, half, MPFR_RNDN);
}

}  // namespace

RealBall RealBall::nearest_int_distance() const {
  Scratch zero(prec_), half(prec_);
  mpfr_set_zero(zero, 1);
  mpfr_set_ui_2exp(half, 1, -1, MPFR_RNDN);

  Scratch lo(prec_), hi(prec_), width(prec_);
  lower(lo);
  upper(hi);
  mpfr_sub(width, hi, lo, MPFR_RNDU);
  if (mpfr_cmp_ui(width, 1) >= 0) {
    // Interval spans a full period: distance can be anything in [0, 1/2].
    return from_endpoints(zero, half, prec_);
  }

  // Shift by the integer nearest the midpoint so endpoints are small.
  mpz_class shift;
  mpfr_get_z(shift.get_mpz_t(), mid_, MPFR_RNDN);
  Scratch zlo(prec_), zhi(prec_);
  mpfr_sub_z(zlo, lo, shift.get_mpz_t(), MPFR_RNDD);
  mpfr_sub_z(zhi, hi, shift.get_mpz_t(), MPFR_RNDU);

  // Does [zlo, zhi] contain an integer?  A half-integer?
  mpz_class ilo, ihi;
  mpfr_get_z(ilo.get_mpz_t(), zlo, MPFR_RNDU);  // ceil
  mpfr_get_z(ihi.get_mpz_t(), zhi, MPFR_RNDD);  // floor
  bool has_int = ilo <= ihi;
  Scratch z2lo(prec_), z2hi(prec_);
  mpfr_mul_2ui(z2lo, zlo, 1, MPFR_RNDD);
  mpfr_mul_2ui(z2hi, zhi, 1, MPFR_RNDU);
  mpz_class jlo, jhi;
  mpfr_get_z(jlo.get_mpz_t(), z2lo, MPFR_RNDU);
  mpfr_get_z(jhi.get_mpz_t(), z2hi, MPFR_RNDD);
  bool has_half = false;
  for (mpz_class j = jlo; j <= jhi; ++j) {
    if (mpz_odd_p(j.get_mpz_t())) {
      has_half = true;
      break;
    }
  }

  Scratch alo(prec_), ahi(prec_), blo(prec_), bhi(prec_);
  point_int_distance(zlo, alo, ahi, prec_);
  point_int_distance(zhi, blo, bhi, prec_);

  Scratch rlo(prec_), rhi(prec_);
  if (has_int)
    mpfr_set_zero(rlo, 1);
  else
    mpfr_min(rlo, alo, blo, MPFR_RNDD);
  if (has_half)
    mpfr_set(rhi, half, MPFR_RNDN);
  else
    mpfr_max(rhi, ahi, bhi, MPFR_RNDU);
  if (mpfr_cmp(rlo, rhi) > 0) mpfr_set(rlo, rhi, MPFR_RNDD);
  return from_endpoints(rlo, rhi, prec_);
}

std::optional<mpz_class> RealBall::certified_floor() const {
  Scratch lo(prec_), hi(prec_);
  lower(lo);
  upper(hi);
  mpz_class flo, fhi;
  mpfr_get_z(flo.get_mpz_t(), lo, MPFR_RNDD);
  mpfr_get_z(fhi.get_mpz_t(), hi, MPFR_RNDD);
  if (flo == fhi) return flo;
  return std::nullopt;
}

mpz_class RealBall::round_nearest_mid() const {
  mpz_class m;
  mpfr_get_z(m.get_mpz_t(), mid_, MPFR_RNDN);
  return m;
}

std::string RealBall::mid_decimal() const { return format_scientific(mid_, MPFR_RNDN); }

std::string RealBall::rad_decimal() const { return format_scientific(rad_, MPFR_RNDU); }

std::string RealBall::brief(int digits) const {
  if (digits < 2) digits = 2;
  return format_scientific(mid_, MPFR_RNDN, static_cast<size_t>(digits)) + " +/- " +
         format_scientific(rad_, MPFR_RNDU, 2);
}

}  // namespace npal
