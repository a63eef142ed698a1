#include "npal/search.hpp"

#include <algorithm>
#include <map>
#include <thread>

#include "npal/sequence.hpp"

namespace npal {

namespace {

// Decomposition with smallest u1 whose block lengths fit u_max, if any.
std::optional<PalPattern> admissible_pattern(const mpz_class& v, unsigned long u_max) {
  for (const PalPattern& p : pattern_parse_all(v))
    if (p.u1 <= u_max && p.u2 <= u_max) return p;
  return std::nullopt;
}

int clamp_threads(int threads, unsigned long work_items) {
  if (threads < 1) threads = 1;
  unsigned long cap = work_items == 0 ? 1 : work_items;
  return static_cast<int>(std::min<unsigned long>(static_cast<unsigned long>(threads), cap));
}

}  // namespace

std::vector<SearchHit> small_range_search(unsigned long n_max, unsigned long u_max,
                                          int threads) {
  std::vector<mpz_class> terms = terms_up_to(n_max);
  threads = clamp_threads(threads, n_max + 1);
  std::vector<std::vector<SearchHit>> partial(threads);

  auto scan = [&](int t) {
    for (unsigned long n = static_cast<unsigned long>(t); n <= n_max;
         n += static_cast<unsigned long>(threads)) {
      if (auto p = admissible_pattern(terms[n], u_max))
        partial[t].push_back(SearchHit{n, terms[n], *p});
    }
  };
  if (threads == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(scan, t);
    for (auto& th : pool) th.join();
  }

  std::vector<SearchHit> hits;
  for (auto& part : partial)
    hits.insert(hits.end(), part.begin(), part.end());
  std::sort(hits.begin(), hits.end(),
            [](const SearchHit& a, const SearchHit& b) { return a.n < b.n; });
  return hits;
}

std::vector<SearchHit> oracle_search(unsigned long n_max, unsigned long u_max,
                                     int threads) {
  std::vector<mpz_class> terms = terms_up_to(n_max);
  std::map<mpz_class, unsigned long> index_of;
  for (unsigned long n = 0; n <= n_max; ++n)
    index_of.emplace(terms[n], n);  // keeps the first of the duplicate 1s

  unsigned long max_len = terms.empty() ? 0 : terms.back().get_str().size();
  unsigned long u1_cap = u_max;
  if (max_len >= 3) u1_cap = std::min(u1_cap, (max_len - 1) / 2);

  threads = clamp_threads(threads, u1_cap);
  std::vector<std::vector<SearchHit>> partial(threads);

  auto scan = [&](int t) {
    for (unsigned long u1 = 1 + static_cast<unsigned long>(t); u1 <= u1_cap;
         u1 += static_cast<unsigned long>(threads)) {
      if (2 * u1 + 1 > max_len) continue;
      unsigned long u2_cap = std::min<unsigned long>(u_max, max_len - 2 * u1);
      for (unsigned long u2 = 1; u2 <= u2_cap; ++u2) {
        for (int f1 = 1; f1 <= 9; ++f1) {
          for (int f2 = 0; f2 <= 9; ++f2) {
            if (f2 == f1) continue;
            PalPattern p{f1, f2, u1, u2};
            mpz_class v = pattern_value(p);
            auto it = index_of.find(v);
            if (it != index_of.end())
              partial[t].push_back(SearchHit{it->second, v, p});
          }
        }
      }
    }
  };
  if (threads == 1) {
    scan(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(scan, t);
    for (auto& th : pool) th.join();
  }

  // One hit per term: keep the decomposition with smallest u1 (ties: u2).
  std::map<unsigned long, SearchHit> best;
  for (auto& part : partial) {
    for (SearchHit& h : part) {
      auto it = best.find(h.n);
      if (it == best.end() ||
          std::make_pair(h.pattern.u1, h.pattern.u2) <
              std::make_pair(it->second.pattern.u1, it->second.pattern.u2))
        best.insert_or_assign(h.n, h);
    }
  }
  std::vector<SearchHit> hits;
  hits.reserve(best.size());
  for (auto& [n, h] : best) hits.push_back(h);
  return hits;
}

}  // namespace npal
