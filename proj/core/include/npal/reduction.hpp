#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "npal/constants.hpp"

namespace npal {

// Convergent p/q of a continued fraction, 0-based index.
struct Convergent {
  int index;
  mpz_class p;
  mpz_class q;
};

// Certified continued fraction expansion of a real enclosure.  Partial
// quotients are certified floors (the residual's enclosure must not straddle
// an integer); each emitted convergent is checked against the approximation
// law |x - p/q| < 1/q^2 with ball arithmetic.  `exhausted` reports that
// precision ran out before `count` terms; the list up to that point is valid.
struct ContinuedFractionResult {
  std::vector<mpz_class> partial_quotients;
  std::vector<Convergent> convergents;
  bool exhausted;
};

ContinuedFractionResult continued_fraction(const RealBall& x, int count);

// Shared-convergent reduction witness: the first convergent of theta with
// q > 6 M whose family-minimum xi = ||mu q|| - M ||theta q|| is certifiably
// positive.  Throws ReductionError when no convergent within reach (or the
// working precision) certifies the whole family.
struct ReductionWitness {
  Convergent convergent;
  RealBall xi_min;
};

ReductionWitness find_reduction_convergent(const RealBall& theta,
                                           const mpz_class& M,
                                           const std::vector<RealBall>& family,
                                           int max_convergents = 32);

// Largest exponent NOT excluded by one certified instance: solutions require
// kappa < log(A q / xi) / log B, so the returned bound is ceil(upper) - 1
// of that quotient, rounded outward.
mpz_class kappa_bound(const RealBall& A, const mpz_class& q, const RealBall& xi,
                      const RealBall& logB);

// Aggregated outcome of one reduction stage.
struct ConvergentUse {
  int index;
  mpz_class q;
  unsigned long instances;
};

struct StageOutcome {
  std::string stage;
  mpz_class bound;              // max kappa bound over the family
  RealBall xi_min;              // smallest certified xi over the family
  Convergent worst_convergent;  // convergent used by the bound-determining instance
  RealBall worst_xi;
  unsigned long instance_count;
  std::vector<ConvergentUse> convergents_used;
  std::vector<std::string> side_conditions;
};

// Stage 1: bounds the leading block length u1.  Nine instances (one per
// leading digit); all certify at the first admissible convergent, so this
// stage uses the shared-convergent witness.
StageOutcome reduce_stage1(const AlgebraicConstants& c, const mpz_class& M,
                           int threads = 1);

// Stage 2: bounds the middle block length u2 given u1 <= u1_max.
// 81 * u1_max instances; each scans convergents until its own xi certifies.
StageOutcome reduce_stage2(const AlgebraicConstants& c, const mpz_class& M,
                           unsigned long u1_max, int threads = 1);

// Stage 3: bounds the index n given u1 <= u1_max, u2 <= u2_max.
// 81 * u1_max * u2_max instances.
StageOutcome reduce_stage3(const AlgebraicConstants& c, const mpz_class& M,
                           unsigned long u1_max, unsigned long u2_max,
                           int threads = 1);

}  // namespace npal
