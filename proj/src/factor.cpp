#include "gpf/factor.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace gpf {
namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::vector<std::uint32_t> sieve(std::uint64_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

// splitmix64, for deterministic rho parameters.
std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Factorizer::Factorizer(FactorConfig config)
    : config_(config), small_primes_(sieve(std::min<std::uint64_t>(config.trial_bound, 1u << 30))) {}

std::optional<std::uint64_t> Factorizer::brent(std::uint64_t n) const {
  if (n % 2 == 0) return 2;
  for (unsigned attempt = 0; attempt < config_.rho_attempts; ++attempt) {
    const std::uint64_t seed = mix(config_.rho_seed * 0x100000001b3ULL + attempt);
    std::uint64_t y = seed % n;
    const std::uint64_t c = mix(seed) % (n - 1) + 1;
    const std::uint64_t m = 128;
    std::uint64_t g = 1, r = 1, q = 1, x = 0, ys = 0;
    std::uint64_t steps = 0;
    auto f = [&](std::uint64_t v) {
      return static_cast<std::uint64_t>((static_cast<u128>(v) * v + c) % n);
    };
    while (g == 1 && steps < config_.rho_iterations) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      while (k < r && g == 1) {
        ys = y;
        const std::uint64_t batch = std::min(m, r - k);
        for (std::uint64_t i = 0; i < batch; ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += batch;
        steps += batch;
      }
      r <<= 1;
    }
    if (g == n) {
      // The batch overshot; replay one step at a time.
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
  }
  return std::nullopt;
}

void Factorizer::split(std::uint64_t n, std::vector<std::uint64_t>& primes,
                       std::vector<std::uint64_t>& unresolved) const {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  auto d = brent(n);
  if (!d) {
    unresolved.push_back(n);
    return;
  }
  split(*d, primes, unresolved);
  split(n / *d, primes, unresolved);
}

FactorResult Factorizer::factor(std::uint64_t n) const {
  if (n == 0) throw std::domain_error("cannot factor zero");
  std::vector<std::uint64_t> primes;
  std::vector<std::uint64_t> unresolved;
  bool cofactor_prime = false;  // set once p^2 exceeds what is left
  for (auto p : small_primes_) {
    if (static_cast<u128>(p) * p > n) {
      cofactor_prime = true;
      break;
    }
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  if (n > 1) {
    if (cofactor_prime || is_prime(n)) primes.push_back(n);
    else split(n, primes, unresolved);
  }

  std::map<std::uint64_t, unsigned> counts;
  for (auto p : primes) ++counts[p];
  FactorResult result;
  for (const auto& [p, e] : counts) result.factors.push_back({p, e});
  std::sort(unresolved.begin(), unresolved.end());
  result.unresolved = std::move(unresolved);
  return result;
}

GpfResult Factorizer::greatest_prime_factor(std::uint64_t n) const {
  if (n < 2) throw std::domain_error("greatest prime factor needs n >= 2");
  auto f = factor(n);
  GpfResult r;
  if (!f.factors.empty()) r.largest_known = f.factors.back().prime;
  r.unresolved = std::move(f.unresolved);
  return r;
}

GpfResult Factorizer::greatest_prime_factor_of_product(std::span<const std::uint64_t> factors) const {
  GpfResult r;
  bool any = false;
  for (auto n : factors) {
    if (n == 0) throw std::domain_error("zero factor in product");
    if (n == 1) continue;
    any = true;
    auto g = greatest_prime_factor(n);
    r.largest_known = std::max(r.largest_known, g.largest_known);
    r.unresolved.insert(r.unresolved.end(), g.unresolved.begin(), g.unresolved.end());
  }
  if (!any) throw std::domain_error("greatest prime factor needs a product >= 2");
  std::sort(r.unresolved.begin(), r.unresolved.end());
  return r;
}

const Factorizer& default_factorizer() {
  static const Factorizer instance;
  return instance;
}

}  // namespace gpf
