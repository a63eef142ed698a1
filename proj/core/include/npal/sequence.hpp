#pragma once

#include <gmpxx.h>

#include <vector>

#include "npal/constants.hpp"

namespace npal {

// Third-order recurrence N_{n+3} = N_{n+2} + N_n with N_0 = 0, N_1 = N_2 = 1.
// Exact integer evaluation by iteration.
mpz_class term(unsigned long n);

// All terms N_0 .. N_{n_max} in one pass.
std::vector<mpz_class> terms_up_to(unsigned long n_max);

// Certified facts about the non-dominant part of the Binet representation
// N_n = a1 alpha1^n + r(n), where r(n) collects the two complex-conjugate
// root contributions.  The constructor certifies the moduli used by every
// rounding argument: |alpha2| = alpha1^{-1/2} lies in (0.82, 0.83) and the
// coefficient modulus |a2| = sqrt(1/(31 a1)) satisfies 2|a2| <= 0.56, so
// |r(n)| <= 0.56 alpha1^{-n/2} < 1/2 for every n >= 1 and rounding
// a1 alpha1^n to the nearest integer recovers N_n exactly.
struct ResidualModel {
  RealBall abs_alpha2;
  RealBall abs_a2;
  explicit ResidualModel(const AlgebraicConstants& c);
};

// round(a1 alpha1^n), certified: the distance from a1 alpha1^n to the
// returned integer is certifiably < 1/2.  Transparently refines the
// constants when n demands more digits than they carry.  Agrees with
// term(n) for every n >= 1.
mpz_class binet_term(unsigned long n, const AlgebraicConstants& c);

// Enclosure of r(n) = N_n - a1 alpha1^n.
RealBall residual(unsigned long n, const AlgebraicConstants& c);

// Enclosure of the residual envelope alpha1^{-n/2}.
RealBall residual_bound(unsigned long n, const AlgebraicConstants& c);

// Certifies |r(n)| < alpha1^{-n/2}.
bool residual_within_bound(unsigned long n, const AlgebraicConstants& c);

// Certifies the growth sandwich alpha1^{n-3} <= N_n <= alpha1^{n-1} (n >= 1).
bool growth_bounds_hold(unsigned long n, const AlgebraicConstants& c);

}  // namespace npal
