#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>

#include "npal/errors.hpp"

namespace npal {

// Outcome of a certified three-way comparison of two enclosures.
enum class Order { less, greater, undecided };

// Ball (midpoint-radius) enclosure of a real number.
//
// The midpoint is an MPFR float at the ball's working precision; the radius
// is a nonnegative 64-bit MPFR float maintained with upward rounding.  Every
// operation returns a ball whose interval [mid - rad, mid + rad] contains the
// exact image of its inputs' intervals: midpoints are combined with round-to-
// nearest and the rounding error, bounded by 2^(exp(mid) - prec) whenever the
// ternary flag reports inexactness, is absorbed into the radius.  Comparisons
// are certified: they answer less/greater only when the enclosures are
// disjoint and report undecided otherwise, so a decided answer is a theorem
// about the enclosed reals.
class RealBall {
 public:
  explicit RealBall(mpfr_prec_t prec = 128);
  RealBall(const RealBall& o);
  RealBall(RealBall&& o) noexcept;
  RealBall& operator=(const RealBall& o);
  RealBall& operator=(RealBall&& o) noexcept;
  ~RealBall();

  static RealBall from_long(long v, mpfr_prec_t prec);
  static RealBall from_mpz(const mpz_class& v, mpfr_prec_t prec);
  static RealBall from_mpq(const mpq_class& v, mpfr_prec_t prec);
  // Parses a decimal string (plain or scientific); an inexactly representable
  // value gets one ulp of radius.
  static RealBall from_decimal(const std::string& s, mpfr_prec_t prec);
  // Ball from explicit midpoint and radius decimal strings.
  static RealBall from_decimal_pair(const std::string& mid, const std::string& rad,
                                    mpfr_prec_t prec);
  // Tightest ball containing [lo, hi]; requires lo <= hi.
  static RealBall from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t prec);

  mpfr_prec_t precision() const { return prec_; }
  mpfr_srcptr mid() const { return mid_; }
  mpfr_srcptr rad() const { return rad_; }
  // Writes the lower/upper interval endpoint into out, rounded outward.
  void lower(mpfr_ptr out) const;
  void upper(mpfr_ptr out) const;

  bool is_exact() const;  // radius is exactly zero

  RealBall operator-() const;
  friend RealBall operator+(const RealBall& a, const RealBall& b);
  friend RealBall operator-(const RealBall& a, const RealBall& b);
  friend RealBall operator*(const RealBall& a, const RealBall& b);
  // Throws DomainError if b's interval contains zero.
  friend RealBall operator/(const RealBall& a, const RealBall& b);

  RealBall abs() const;
  RealBall log() const;   // DomainError unless interval strictly positive
  RealBall exp() const;
  RealBall sqrt() const;  // DomainError if interval contains negatives
  // Integer power; requires a strictly positive interval for k < 0 and a
  // nonnegative interval for k > 1 (monotone evaluation).
  RealBall pow_int(long k) const;

  static Order compare(const RealBall& a, const RealBall& b);
  bool certainly_less(const RealBall& o) const;
  bool certainly_greater(const RealBall& o) const;
  bool certainly_positive() const;
  bool certainly_negative() const;
  bool contains_zero() const;
  bool contains(const mpq_class& v) const;
  bool contains_int(const mpz_class& v) const;
  // Conservative subset test: true only when this interval certainly lies
  // inside o's interval.
  bool contained_in(const RealBall& o) const;

  // Enclosure of the distance from the enclosed real to its nearest integer;
  // always a subinterval of [0, 1/2].
  RealBall nearest_int_distance() const;
  // Floor of the enclosed real, if every point of the interval shares it.
  std::optional<mpz_class> certified_floor() const;
  // Nearest integer to the midpoint (ties to even); no certification.
  mpz_class round_nearest_mid() const;

  // Canonical decimal forms: shortest strings that parse back to the exact
  // binary midpoint/radius, in scientific notation.  Deterministic.
  std::string mid_decimal() const;
  std::string rad_decimal() const;
  // Human-readable "mid +/- rad" at reduced digits, for logs and messages.
  std::string brief(int digits = 8) const;

 private:
  void add_rounding_slack(int ternary);

  mpfr_t mid_;
  mpfr_t rad_;
  mpfr_prec_t prec_;
};

// Bits of mantissa needed to carry `digits` decimal digits, with guard bits.
mpfr_prec_t digits_to_bits(long digits);

}  // namespace npal
