#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "npal/patterns.hpp"
#include "npal/search.hpp"
#include "npal/sequence.hpp"

using npal::PalPattern;
using npal::SearchHit;

TEST_CASE("a window containing the hit finds exactly it") {
  auto hits = npal::small_range_search(30, 3);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].n == 19);
  CHECK(hits[0].value == 595);
  CHECK(hits[0].pattern == PalPattern{5, 9, 1, 1});
}

TEST_CASE("both search directions agree on shared windows") {
  for (auto [n_max, u_max] : {std::pair<unsigned long, unsigned long>{30, 2},
                              {60, 5},
                              {120, 12},
                              {200, 40}}) {
    auto fwd = npal::small_range_search(n_max, u_max);
    auto rev = npal::oracle_search(n_max, u_max);
    CHECK(fwd == rev);
  }
}

TEST_CASE("windows below the hit are empty") {
  CHECK(npal::small_range_search(18, 10).empty());
  CHECK(npal::oracle_search(18, 10).empty());
}

TEST_CASE("a tight block cap excludes the hit") {
  // the hit needs u1 = u2 = 1; u_max = 0 is not meaningful, but a window of
  // short terms with blocks capped at 1 still finds it
  auto hits = npal::small_range_search(19, 1);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].n == 19);
}

TEST_CASE("thread count does not change results") {
  auto one = npal::small_range_search(150, 20, 1);
  auto four = npal::small_range_search(150, 20, 4);
  CHECK(one == four);
  CHECK(npal::oracle_search(150, 20, 1) == npal::oracle_search(150, 20, 4));
}

TEST_CASE("hits are sorted by index and record admissible decompositions") {
  auto hits = npal::small_range_search(250, 30);
  for (size_t i = 1; i < hits.size(); ++i) CHECK(hits[i - 1].n < hits[i].n);
  for (const SearchHit& h : hits) {
    CHECK(npal::pattern_value(h.pattern) == h.value);
    CHECK(npal::term(h.n) == h.value);
  }
}
