#include "npal/patterns.hpp"

#include <string>

namespace npal {

namespace {

mpz_class pow10(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

void validate(const PalPattern& p) {
  if (p.f1 < 1 || p.f1 > 9) throw InvalidPattern("leading digit must be 1..9");
  if (p.f2 < 0 || p.f2 > 9) throw InvalidPattern("middle digit must be 0..9");
  if (p.f1 == p.f2) throw InvalidPattern("blocks must use distinct digits");
  if (p.u1 == 0 || p.u2 == 0) throw InvalidPattern("block lengths must be >= 1");
}

bool all_same(const std::string& s, size_t from, size_t len, char c) {
  for (size_t i = from; i < from + len; ++i)
    if (s[i] != c) return false;
  return true;
}

}  // namespace

mpz_class repdigit_value(int d, unsigned long u) {
  if (d < 0 || d > 9) throw InvalidPattern("repdigit digit must be 0..9");
  if (u == 0) throw InvalidPattern("repdigit length must be >= 1");
  return d * (pow10(u) - 1) / 9;
}

mpz_class pattern_value(const PalPattern& p) {
  validate(p);
  unsigned long L = 2 * p.u1 + p.u2;
  mpz_class nine_x = p.f1 * (pow10(L) - 1) -
                     (p.f1 - p.f2) * pow10(p.u1) * (pow10(p.u2) - 1);
  return nine_x / 9;
}

std::vector<PalPattern> pattern_parse_all(const mpz_class& v) {
  std::vector<PalPattern> out;
  if (v <= 0) return out;
  std::string s = v.get_str();
  size_t L = s.size();
  if (L < 3) return out;
  for (unsigned long u1 = 1; 2 * u1 < L; ++u1) {
    unsigned long u2 = static_cast<unsigned long>(L) - 2 * u1;
    char c1 = s[0];
    char c2 = s[u1];
    if (c1 == c2) continue;
    if (all_same(s, 0, u1, c1) && all_same(s, u1, u2, c2) &&
        all_same(s, u1 + u2, u1, c1))
      out.push_back(PalPattern{c1 - '0', c2 - '0', u1, u2});
  }
  return out;
}

std::optional<PalPattern> pattern_parse(const mpz_class& v) {
  auto all = pattern_parse_all(v);
  if (all.empty()) return std::nullopt;
  return all.front();
}

}  // namespace npal
