#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gmpxx.h>

#include <random>

#include "npal/constants.hpp"
#include "npal/errors.hpp"
#include "npal/linforms.hpp"

using npal::AlgebraicConstants;
using npal::make_constants;
using npal::MatveevInstance;
using npal::Order;
using npal::RealBall;

namespace {

// The reference strings are truncated decimals; pad is an upper bound on the
// truncation error, so the padded ball contains the exact value and a genuine
// enclosure of the same quantity must overlap it.
bool overlaps(const RealBall& a, const char* ref, const char* pad) {
  RealBall r = RealBall::from_decimal_pair(ref, pad, a.precision());
  return RealBall::compare(a, r) == Order::undecided;
}

}  // namespace

TEST_CASE("rational height axioms under fuzzing") {
  std::mt19937_64 rng(0x5eed0007ULL);
  std::uniform_int_distribution<long> num(-1000000L, 1000000L);
  std::uniform_int_distribution<long> den(1L, 1000000L);
  for (int i = 0; i < 10000; ++i) {
    long p = num(rng), q = den(rng);
    if (p == 0) p = 1;
    RealBall h = npal::height_rational(p, q);
    // h >= 0 always, and h(p/q) = h(q/p)
    CHECK_FALSE(h.certainly_negative());
    RealBall hr = npal::height_rational(q, p);
    CHECK(RealBall::compare(h, hr) == Order::undecided);
    // h is blind to common factors
    RealBall hs = npal::height_rational(7 * p, 7 * q);
    CHECK(RealBall::compare(h, hs) == Order::undecided);
  }
}

TEST_CASE("rational height spot values") {
  CHECK(overlaps(npal::height_rational(10, 3), "2.30258509299", "1e-10"));  // log 10
  CHECK(overlaps(npal::height_rational(-3, 2), "1.09861228867", "1e-10"));  // log 3
  CHECK(overlaps(npal::height_rational(-6, 4), "1.09861228867", "1e-10"));  // canonicalized
  CHECK(overlaps(npal::height_rational(1, 1), "0", "0"));
  CHECK(overlaps(npal::height_rational(0, 5), "0", "0"));
  CHECK(overlaps(npal::height_rational(12, 1), "2.48490664979", "1e-10"));  // log 12
  CHECK_THROWS_AS(npal::height_rational(1, 0), npal::DomainError);
}

TEST_CASE("coefficient height is certified from its conjugate moduli") {
  AlgebraicConstants c = make_constants(64);
  CHECK(overlaps(npal::height_a1(c), "1.1446624015", "1e-9"));  // (1/3) log 31
}

TEST_CASE("lower-bound magnitude on a tiny hand-checked instance") {
  // s = 1, d = 1: C = 1.4 * 30^4 = 1134000; times A = 2 and (1 + log 10)
  MatveevInstance inst{1, 1, {RealBall::from_long(2, 128)}};
  CHECK(overlaps(npal::matveev_coefficient(inst), "2268000", "0"));
  CHECK(overlaps(npal::matveev_lower_bound(inst, 10), "7490262.99091", "1e-4"));
}

TEST_CASE("lower-bound rejects degenerate height parameters") {
  MatveevInstance bad{1, 1, {RealBall::from_decimal("0.001", 128)}};
  CHECK_THROWS_AS(npal::matveev_coefficient(bad), npal::LemmaError);
}

TEST_CASE("derived chain matches the independently computed constants") {
  AlgebraicConstants c = make_constants(256);
  npal::DerivedBounds b = npal::derive_bounds(c);
  CHECK(overlaps(b.matveev_base, "7.14093015849e12", "1e2"));
  CHECK(overlaps(b.step1_height, "5.53911155617", "1e-10"));
  CHECK(overlaps(b.step1.coefficient, "1.18663226288e14", "1e4"));
  CHECK(b.step1.log_power == 1);
  CHECK(overlaps(b.step2.coefficient, "2.54209743391e27", "1e17"));
  CHECK(b.step2.log_power == 2);
  CHECK(overlaps(b.combined.coefficient, "2.54209743391e27", "1e17"));
  CHECK(overlaps(b.step3_magnitude, "5.44588206948e40", "1e30"));
  CHECK(overlaps(b.index_threshold, "1.42470950477e41", "1e31"));
  CHECK(b.index_bound == mpz_class("1000848015501459853995551592300463198378917619842"));
  CHECK(b.length_bound == mpz_class("166147707966236772663115310684359590985483942919"));
}

TEST_CASE("every derived quantity sits below its reference ceiling") {
  AlgebraicConstants c = make_constants(256);
  auto checks = npal::check_against_targets(npal::derive_bounds(c));
  CHECK(checks.size() == 14);
  for (const npal::TargetCheck& t : checks) {
    INFO(t.name << " derived=" << t.derived << " target=" << t.target);
    CHECK(t.ok);
  }
}

TEST_CASE("logarithm-power conversion on hand-checked inputs") {
  // m = 1, T = 100: x/log x < 100 forces x < 2 * 100 * log 100 = 921.034...
  RealBall T = RealBall::from_long(100, 128);
  CHECK(overlaps(npal::conversion_bound(1, T), "921.0340372", "1e-3"));
  // m = 3 at the chain's scale stays under the published index ceiling
  RealBall T3 = RealBall::from_decimal("1.53e41", 256);
  RealBall out = npal::conversion_bound(3, T3);
  CHECK(overlaps(out, "1.043844803e48", "1e40"));
  CHECK(out.certainly_less(RealBall::from_decimal("1.05e48", 256)));
  // side condition: T must exceed (4 m^2)^m
  CHECK_THROWS_AS(npal::conversion_bound(3, RealBall::from_long(1000, 128)), npal::LemmaError);
}

TEST_CASE("digit-length pins the index into a short window") {
  AlgebraicConstants c = make_constants(96);
  npal::IndexWindow w = npal::length_index_window(1, 1, c);
  CHECK(w.lo == 13);
  CHECK(w.hi == 20);  // the real hit n = 19 lies inside
  npal::IndexWindow w2 = npal::length_index_window(2, 3, c);
  CHECK(w2.lo == 37);
  CHECK(w2.hi == 44);
  // window width is the same for every pattern length
  CHECK(w.hi - w.lo == w2.hi - w2.lo);
}
