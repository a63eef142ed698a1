#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gmpxx.h>

#include <vector>

#include "npal/constants.hpp"
#include "npal/errors.hpp"
#include "npal/reduction.hpp"

using npal::AlgebraicConstants;
using npal::ContinuedFractionResult;
using npal::make_constants;
using npal::Order;
using npal::RealBall;

namespace {

RealBall theta_of(const AlgebraicConstants& c) { return c.log10 / c.log_alpha1; }

// Truncated decimal references carry an explicit pad bounding the truncation
// error, so the padded ball contains the exact value.
bool overlaps(const RealBall& a, const char* ref, const char* pad) {
  RealBall r = RealBall::from_decimal_pair(ref, pad, a.precision());
  return RealBall::compare(a, r) == Order::undecided;
}

}  // namespace

TEST_CASE("continued fraction of the logarithm ratio starts as expected") {
  AlgebraicConstants c = make_constants(64);
  ContinuedFractionResult cf = npal::continued_fraction(theta_of(c), 12);
  REQUIRE(cf.partial_quotients.size() == 12);
  const long expect[12] = {6, 41, 1, 15, 14, 2, 1, 62, 1, 1, 4, 2};
  for (int i = 0; i < 12; ++i) CHECK(cf.partial_quotients[i] == expect[i]);
  CHECK_FALSE(cf.exhausted);
}

TEST_CASE("golden ratio convergents are consecutive Fibonacci ratios") {
  RealBall five = RealBall::from_long(5, 256);
  RealBall golden = (RealBall::from_long(1, 256) + five.sqrt()) / RealBall::from_long(2, 256);
  ContinuedFractionResult cf = npal::continued_fraction(golden, 20);
  REQUIRE(cf.convergents.size() == 20);
  mpz_class fib_prev = 0, fib = 1;  // F_0, F_1; convergent k is F_{k+2}/F_{k+1}
  for (const npal::Convergent& cv : cf.convergents) {
    mpz_class fib_next = fib + fib_prev;
    CHECK(cv.p == fib_next);
    CHECK(cv.q == fib);
    fib_prev = fib;
    fib = fib_next;
  }
}

TEST_CASE("square-root-of-two convergents") {
  RealBall root2 = RealBall::from_long(2, 256).sqrt();
  ContinuedFractionResult cf = npal::continued_fraction(root2, 10);
  CHECK(cf.partial_quotients[0] == 1);
  for (int i = 1; i < 10; ++i) CHECK(cf.partial_quotients[i] == 2);
  CHECK(cf.convergents[8].p == 1393);
  CHECK(cf.convergents[8].q == 985);
}

TEST_CASE("convergents obey the standard recurrence and approximation law") {
  AlgebraicConstants c = make_constants(128);
  RealBall theta = theta_of(c);
  ContinuedFractionResult cf = npal::continued_fraction(theta, 25);
  REQUIRE(cf.convergents.size() == 25);
  // p_k = a_k p_{k-1} + p_{k-2}, q likewise
  for (size_t k = 2; k < cf.convergents.size(); ++k) {
    CHECK(cf.convergents[k].p == cf.partial_quotients[k] * cf.convergents[k - 1].p +
                                     cf.convergents[k - 2].p);
    CHECK(cf.convergents[k].q == cf.partial_quotients[k] * cf.convergents[k - 1].q +
                                     cf.convergents[k - 2].q);
  }
  // |theta - p/q| q^2 < 1, re-checked externally with exact rationals
  for (const npal::Convergent& cv : cf.convergents) {
    mpq_class pq(cv.p, cv.q);
    pq.canonicalize();
    RealBall err = (theta - RealBall::from_mpq(pq, 128)).abs() *
                   RealBall::from_mpz(cv.q * cv.q, 128);
    CHECK(err.certainly_less(RealBall::from_long(1, 128)));
  }
}

TEST_CASE("the well-known large denominator appears at index 83") {
  AlgebraicConstants c = make_constants(256);
  ContinuedFractionResult cf = npal::continued_fraction(theta_of(c), 90);
  REQUIRE(cf.convergents.size() >= 84);
  CHECK(cf.convergents[83].q ==
        mpz_class("6475079168555166505756274992528866354949952611904"));
  CHECK(cf.convergents[83].p ==
        mpz_class("39004872323488274910527574940109870965487010175807"));
}

TEST_CASE("starved precision exhausts the expansion early and honestly") {
  AlgebraicConstants c = make_constants(40);
  ContinuedFractionResult cf = npal::continued_fraction(theta_of(c), 400);
  CHECK(cf.exhausted);
  REQUIRE(!cf.convergents.empty());
  mpz_class six_m("6" + std::string(48, '0'));
  CHECK(cf.convergents.back().q < six_m);  // never reaches the admissible range
}

TEST_CASE("toy reduction: sqrt(2) with a rational shift, brute-force certified") {
  // family: mu = 1/3, A = 10, B = 2, M = 50
  RealBall root2 = RealBall::from_long(2, 256).sqrt();
  RealBall mu = RealBall::from_mpq(mpq_class(1, 3), 256);
  mpz_class M = 50;
  npal::ReductionWitness w = npal::find_reduction_convergent(root2, M, {mu});
  CHECK(w.convergent.index == 8);
  CHECK(w.convergent.q == 985);  // q = 408 exists but fails the positivity test
  CHECK(overlaps(w.xi_min, "0.3153864584", "1e-9"));
  mpz_class bound = npal::kappa_bound(RealBall::from_long(10, 256), w.convergent.q, w.xi_min,
                                      RealBall::from_long(2, 256).log());
  CHECK(bound == 14);
  // Soundness against brute force: no m <= 50 brings m sqrt(2) + 1/3 closer
  // to an integer than A B^{-(bound+1)} = 10 * 2^{-15}.
  RealBall threshold = RealBall::from_mpq(mpq_class(10, 32768), 256);
  for (long m = 1; m <= 50; ++m) {
    RealBall d = (root2 * RealBall::from_long(m, 256) + mu).nearest_int_distance();
    CHECK(d.certainly_greater(threshold));
  }
}

TEST_CASE("toy reduction: the real shift at a small modulus") {
  AlgebraicConstants c = make_constants(64);
  RealBall nine_a1 = RealBall::from_long(9, c.a1.precision()) * c.a1;
  RealBall mu5 = (RealBall::from_long(5, c.a1.precision()) / nine_a1).log() / c.log_alpha1;
  mpz_class M = 1000000;
  npal::ReductionWitness w = npal::find_reduction_convergent(theta_of(c), M, {mu5});
  CHECK(w.convergent.index == 10);
  CHECK(w.convergent.q == 16491064);
  CHECK(overlaps(w.xi_min, "0.04182017432", "1e-10"));
  RealBall A = RealBall::from_long(54, c.a1.precision()) / c.log_alpha1;
  CHECK(npal::kappa_bound(A, w.convergent.q, w.xi_min, c.log10) == 10);
}

TEST_CASE("kappa bound shrinks as xi grows") {
  RealBall A = RealBall::from_long(10, 128);
  RealBall logB = RealBall::from_long(2, 128).log();
  mpz_class q = 985;
  mpz_class loose = npal::kappa_bound(A, q, RealBall::from_decimal("0.01", 128), logB);
  mpz_class tight = npal::kappa_bound(A, q, RealBall::from_decimal("0.4", 128), logB);
  CHECK(tight <= loose);
}

TEST_CASE("stage 1 certifies the published outcome") {
  AlgebraicConstants c = make_constants(256);
  mpz_class M("1" + std::string(48, '0'));
  npal::StageOutcome s = npal::reduce_stage1(c, M);
  CHECK(s.stage == "stage1");
  CHECK(s.bound == 52);
  CHECK(s.instance_count == 9);
  CHECK(s.worst_convergent.q ==
        mpz_class("6475079168555166505756274992528866354949952611904"));
  CHECK(s.worst_convergent.q > 6 * M);
  CHECK(overlaps(s.xi_min, "0.05498024606", "1e-10"));
  CHECK(s.xi_min.certainly_positive());
}

TEST_CASE("stage 2 on a reduced family still certifies") {
  // the full 4212-instance family runs in the acceptance suite; a single
  // leading-block cap keeps this unit fast while exercising the machinery
  AlgebraicConstants c = make_constants(256);
  mpz_class M("1" + std::string(48, '0'));
  npal::StageOutcome s = npal::reduce_stage2(c, M, 3);
  CHECK(s.stage == "stage2");
  CHECK(s.instance_count == 81 * 3);
  CHECK(s.xi_min.certainly_positive());
  CHECK(s.bound >= 1);
  CHECK(s.bound <= 57);
}
