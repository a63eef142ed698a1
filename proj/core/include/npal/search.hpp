#pragma once

#include <gmpxx.h>

#include <vector>

#include "npal/patterns.hpp"

namespace npal {

// A sequence term that is a palindromic two-block repdigit concatenation.
struct SearchHit {
  unsigned long n;
  mpz_class value;
  PalPattern pattern;

  bool operator==(const SearchHit&) const = default;
};

// Scans terms N_0 .. N_{n_max} and keeps those whose digit string decomposes
// into a pattern with u1, u2 <= u_max.  Hits are sorted by n; the recorded
// pattern is the decomposition with smallest admissible u1.
std::vector<SearchHit> small_range_search(unsigned long n_max, unsigned long u_max,
                                          int threads = 1);

// Independent direction: enumerates all pattern values with u1, u2 <= u_max
// whose length fits N_{n_max}, and tests membership among the terms.  Must
// agree with small_range_search on any window where both are exhaustive.
std::vector<SearchHit> oracle_search(unsigned long n_max, unsigned long u_max,
                                     int threads = 1);

}  // namespace npal
