#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "npal/constants.hpp"

namespace npal {

// Logarithmic height of the rational num/den (after canonicalization):
// log max(|num|, den).  Throws DomainError on a zero denominator.
RealBall height_rational(const mpz_class& num, const mpz_class& den,
                         long precision_digits = 64);

// Logarithmic height of the Binet coefficient a1: its minimal polynomial is
// 31 x^3 - 3 x - 1 and all three conjugates have modulus < 1 (certified from
// the enclosures: a1 in (0, 1) and |a2|^2 = 1/(31 a1) < 1), so
// h(a1) = (1/3) log 31.
RealBall height_a1(const AlgebraicConstants& c);

// One application of the explicit lower bound on linear forms in logarithms:
// |Gamma| > exp(-C(s, d) (1 + log D) A_1 ... A_s) with
// C(s, d) = 1.4 * 30^{s+3} * s^{4.5} * d^2 (1 + log d).
// a_values must each be certifiably not below 0.16 (LemmaError otherwise).
struct MatveevInstance {
  int log_count;                  // s
  int degree;                     // d, degree of the relevant number field
  std::vector<RealBall> a_values; // A_1 .. A_s
};

// C(s, d) * A_1 ... A_s  (everything except the (1 + log D) factor).
RealBall matveev_coefficient(const MatveevInstance& inst);

// Full magnitude C(s, d) (1 + log D) A_1 ... A_s; D >= 1 bounds the |b_j|.
RealBall matveev_lower_bound(const MatveevInstance& inst, const mpz_class& D);

// One inequality of the cascading chain: quantity < coefficient (1+log n)^k.
struct StepBound {
  int step;
  RealBall coefficient;
  int log_power;
};

// Every derived constant of the three-step chain that turns the Matveev
// bounds into an absolute bound on the sequence index, with exact outward
// integerization at the end.
//   step1: u1 log10        < step1.coefficient  (1+log n)
//   step2: u2 log10        < step2.coefficient  (1+log n)^2
//   combined: (u1+u2)log10 < combined.coefficient (1+log n)^2
//   step3: n log(alpha1) - log 2 < step3_magnitude (1+log n)^3
//   index_threshold: n/(1+log n)^3 < index_threshold for n > 500
//   index_bound: n <= index_bound (via the logarithm-cube conversion lemma
//   applied to x = e*n, which makes (1+log n)^3 = (log x)^3 exact)
//   length_bound: 2 u1 + u2 <= length_bound
struct DerivedBounds {
  RealBall matveev_base;        // C(3,3) * A2 * A3 shared by all three steps
  RealBall step1_height;        // height bound for the step-1 rational
  RealBall step1_a_value;       // 3 * step1_height
  RealBall step1_magnitude;     // matveev_base * step1_a_value
  StepBound step1;
  RealBall step2_height_coeff;
  RealBall step2_a_coeff;
  RealBall step2_magnitude;
  StepBound step2;
  StepBound combined;
  RealBall step3_height_coeff;
  RealBall step3_a_coeff;
  RealBall step3_magnitude;
  RealBall index_threshold;
  mpz_class index_bound;
  mpz_class length_bound;
};

DerivedBounds derive_bounds(const AlgebraicConstants& c);

// A derived ball checked entirely below its published ceiling.
struct TargetCheck {
  std::string name;
  std::string derived;  // decimal rendering of the derived value
  std::string target;
  bool ok;
};

std::vector<TargetCheck> check_against_targets(const DerivedBounds& b);

// Conversion lemma: if T > (4 m^2)^m and x / (log x)^m < T then
// x < 2^m T (log T)^m.  Returns the right-hand side; throws LemmaError if
// the side condition on T is not certified.
RealBall conversion_bound(long m, const RealBall& T);

// Index window pinned by a pattern length: if N_n has exactly 2 u1 + u2
// digits then n lies in [lo, hi] (outward integerization of
// [(S log10 - 2)/log alpha1, (S log10 + 1)/log alpha1], S = 2 u1 + u2).
struct IndexWindow {
  mpz_class lo;
  mpz_class hi;
};

IndexWindow length_index_window(unsigned long u1, unsigned long u2,
                                const AlgebraicConstants& c);

}  // namespace npal
