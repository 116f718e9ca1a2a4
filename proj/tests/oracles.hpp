#pragma once

// Slow, obviously-correct reference routines used only by tests. None of
// them calls into the library.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

inline std::vector<std::pair<std::uint64_t, unsigned>> trial_factor(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t gpf(std::uint64_t n) { return trial_factor(n).back().first; }

inline unsigned valuation(std::uint64_t n, std::uint64_t p) {
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

inline bool smooth(std::uint64_t n, const std::vector<std::uint64_t>& primes) {
  for (auto p : primes)
    while (n % p == 0) n /= p;
  return n == 1;
}

// Stein's binary gcd.
inline unsigned __int128 binary_gcd(unsigned __int128 a, unsigned __int128 b) {
  if (a == 0) return b;
  if (b == 0) return a;
  int shift = 0;
  while (((a | b) & 1) == 0) {
    a >>= 1;
    b >>= 1;
    ++shift;
  }
  while ((a & 1) == 0) a >>= 1;
  while (b != 0) {
    while ((b & 1) == 0) b >>= 1;
    if (a > b) std::swap(a, b);
    b -= a;
  }
  return a << shift;
}

inline unsigned __int128 ipow(unsigned __int128 t, unsigned e) {
  unsigned __int128 r = 1;
  while (e--) r *= t;
  return r;
}

// Number of z != 1 with z^p = 1 and z^q = 1, i.e. the degree of the gcd of
// the two cyclotomic quotients, by counting k in [1, p) with p | q k.
inline unsigned common_nontrivial_roots(unsigned p, unsigned q) {
  unsigned count = 0;
  for (unsigned k = 1; k < p; ++k)
    if ((static_cast<unsigned long>(q) * k) % p == 0) ++count;
  return count;
}

struct TripleKey {
  std::uint64_t a, b, c;
  auto operator<=>(const TripleKey&) const = default;
};

// Every (a, b, c) with a <= a_max and (ab+1)(ac+1) smooth, by trial division.
inline std::vector<TripleKey> triples(const std::vector<std::uint64_t>& primes, std::uint64_t a_max) {
  std::vector<TripleKey> out;
  for (std::uint64_t a = 3; a <= a_max; ++a)
    for (std::uint64_t b = 2; b < a; ++b)
      for (std::uint64_t c = 1; c < b; ++c)
        if (smooth((a * b + 1) * (a * c + 1), primes)) out.push_back({a, b, c});
  return out;
}

// Largest prime factor of every n <= limit, by marking multiples of each
// prime in increasing order.
inline std::vector<std::uint64_t> gpf_sieve(std::uint64_t limit) {
  std::vector<std::uint64_t> g(limit + 1, 0);
  for (std::uint64_t p = 2; p <= limit; ++p)
    if (g[p] == 0)
      for (std::uint64_t m = p; m <= limit; m += p) g[m] = p;
  return g;
}

// Direct double loop over (b, c) for one a; lexicographic tie-break. The
// gpf of a product is the max over its factors, read from the sieve.
struct GpfMin {
  std::uint64_t gpf, b, c;
};
inline GpfMin gpf_min(std::uint64_t a, bool gss, const std::vector<std::uint64_t>& sieve) {
  GpfMin best{UINT64_MAX, 0, 0};
  for (std::uint64_t b = 2; b < a; ++b)
    for (std::uint64_t c = 1; c < b; ++c) {
      std::uint64_t g = std::max(sieve[a * b + 1], sieve[a * c + 1]);
      if (gss) g = std::max(g, sieve[b * c + 1]);
      if (g < best.gpf) best = {g, b, c};
    }
  return best;
}

}  // namespace oracle
