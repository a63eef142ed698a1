#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "npal/errors.hpp"

namespace npal {

// Palindromic concatenation of two distinct repdigit blocks:
// u1 copies of f1, then u2 copies of f2, then u1 copies of f1 again.
// f1 is the leading digit (1..9), f2 may be 0 (0..9), f1 != f2,
// u1 >= 1, u2 >= 1; total length 2 u1 + u2 >= 3.
struct PalPattern {
  int f1;
  int f2;
  unsigned long u1;
  unsigned long u2;

  bool operator==(const PalPattern&) const = default;
};

// d repeated u times as an integer: d (10^u - 1) / 9.  Requires 0 <= d <= 9,
// u >= 1; throws InvalidPattern otherwise.
mpz_class repdigit_value(int d, unsigned long u);

// Exact value of the pattern via the closed form
// (f1 (10^L - 1) - (f1 - f2) 10^{u1} (10^{u2} - 1)) / 9,  L = 2 u1 + u2.
// Throws InvalidPattern if the pattern violates its digit/length constraints.
mpz_class pattern_value(const PalPattern& p);

// Every decomposition of v's digit string into such a pattern, in increasing
// u1 order.  Empty when v has no decomposition (fewer than 3 digits, not a
// palindromic two-block concatenation, ...).
std::vector<PalPattern> pattern_parse_all(const mpz_class& v);

// First decomposition, if any.
std::optional<PalPattern> pattern_parse(const mpz_class& v);

}  // namespace npal
