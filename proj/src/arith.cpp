#include "gpf/arith.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <numeric>

namespace gpf {
namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e != 0) {
    if (e & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return result;
}

constexpr std::array<unsigned, 13> kWitnessPrimes = {2,  3,  5,  7,  11, 13, 17,
                                                     19, 23, 29, 31, 37, 41};

// n odd, n > 2, n - 1 = d * 2^s.
bool strong_probable_prime(const BigInt& n, const BigInt& base, const BigInt& d,
                           unsigned long s) {
  const BigInt n_minus_1 = n - 1;
  BigInt x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (unsigned p : kWitnessPrimes) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // The first 12 prime bases are deterministic below 3.18e23.
  for (unsigned a : kWitnessPrimes) {
    if (a == 41) break;
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Primality primality(const BigInt& n) {
  if (n < 2) return Primality::composite;
  if (n.fits_ulong_p()) return is_prime(n.get_ui()) ? Primality::prime : Primality::composite;
  for (unsigned p : kWitnessPrimes) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return Primality::composite;
  }
  BigInt d = n - 1;
  const unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  static const BigInt kDeterministicLimit("3317044064679887385961981");
  if (n < kDeterministicLimit) {
    for (unsigned a : kWitnessPrimes) {
      if (!strong_probable_prime(n, a, d, s)) return Primality::composite;
    }
    return Primality::prime;
  }
  // Seeded from n so repeated calls agree.
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(n);
  const BigInt span = n - 3;
  for (int round = 0; round < 64; ++round) {
    const BigInt base = rng.get_z_range(span) + 2;
    if (!strong_probable_prime(n, base, d, s)) return Primality::composite;
  }
  return Primality::probable_prime;
}

ExactRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  ExactRational q(num, den);
  q.canonicalize();
  return q;
}

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

ExactRational pow(const ExactRational& base, long exponent) {
  const unsigned long e = exponent < 0 ? -static_cast<unsigned long>(exponent)
                                       : static_cast<unsigned long>(exponent);
  ExactRational r(pow(base.get_num(), e), pow(base.get_den(), e));
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("negative power of zero");
    r = 1 / r;
  }
  r.canonicalize();
  return r;
}

Place Place::finite(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  return Place{p};
}

std::uint64_t Place::prime() const {
  if (is_infinite()) throw std::logic_error("the infinite place has no prime");
  return prime_;
}

std::string Place::name() const { return is_infinite() ? "inf" : std::to_string(prime_); }

PlaceSet::PlaceSet(std::vector<std::uint64_t> primes) : primes_(std::move(primes)) {
  std::sort(primes_.begin(), primes_.end());
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (!is_prime(primes_[i]))
      throw std::invalid_argument(std::to_string(primes_[i]) + " is not prime");
    if (i > 0 && primes_[i] == primes_[i - 1])
      throw std::invalid_argument("duplicate prime " + std::to_string(primes_[i]));
  }
}

bool PlaceSet::contains(std::uint64_t p) const {
  return std::binary_search(primes_.begin(), primes_.end(), p);
}

std::optional<std::size_t> PlaceSet::index_of(std::uint64_t p) const {
  auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
  if (it == primes_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - primes_.begin());
}

std::vector<Place> PlaceSet::places() const {
  std::vector<Place> out;
  out.reserve(primes_.size() + 1);
  for (auto p : primes_) out.push_back(Place::finite(p));
  out.push_back(Place::infinite());
  return out;
}

std::string PlaceSet::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(primes_[i]);
  }
  return s;
}

std::string format_factorization(const Factorization& f) {
  if (f.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) s += '*';
    s += std::to_string(f[i].prime);
    if (f[i].exponent != 1) s += '^' + std::to_string(f[i].exponent);
  }
  return s;
}

unsigned padic_valuation(const BigInt& n, std::uint64_t p) {
  if (n == 0) throw std::domain_error("valuation of zero is undefined");
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  BigInt rest;
  const BigInt prime(static_cast<unsigned long>(p));
  return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

long padic_valuation(const ExactRational& x, std::uint64_t p) {
  if (x == 0) throw std::domain_error("valuation of zero is undefined");
  return static_cast<long>(padic_valuation(x.get_num(), p)) -
         static_cast<long>(padic_valuation(x.get_den(), p));
}

ExactRational abs_at_place(const ExactRational& x, Place w) {
  if (x == 0) throw std::domain_error("absolute value of zero at a place");
  if (w.is_infinite()) return abs(x);
  const BigInt p(static_cast<unsigned long>(w.prime()));
  return pow(ExactRational(p), -padic_valuation(x, w.prime()));
}

ExactRational product_over_finite_places(const ExactRational& x, const PlaceSet& s) {
  if (x == 0) throw std::domain_error("product over places of zero");
  ExactRational prod = 1;
  for (auto p : s.primes()) prod *= abs_at_place(x, Place::finite(p));
  return prod;
}

ExactRational product_over_places(const ExactRational& x, const PlaceSet& s) {
  ExactRational prod = product_over_finite_places(x, s) * abs(x);
  prod.canonicalize();
  return prod;
}

std::vector<std::uint64_t> divisors(std::uint64_t n, const Factorization& f) {
  u128 check = 1;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!is_prime(f[i].prime))
      throw std::invalid_argument("factorization entry " + std::to_string(f[i].prime) +
                                  " is not prime");
    for (std::size_t j = 0; j < i; ++j) {
      if (f[j].prime == f[i].prime) throw std::invalid_argument("repeated prime in factorization");
    }
    for (unsigned e = 0; e < f[i].exponent; ++e) {
      check *= f[i].prime;
      if (check > n) throw std::invalid_argument("factorization does not match n");
    }
  }
  if (check != n) throw std::invalid_argument("factorization does not match n");

  std::vector<std::uint64_t> out{1};
  for (const auto& [p, e] : f) {
    const std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

BigInt power_minus_one_gcd(const BigInt& t, unsigned p, unsigned q) {
  if (t < 2) throw std::domain_error("power_minus_one_gcd needs t >= 2");
  BigInt g;
  const BigInt a = pow(t, p) - 1;
  const BigInt b = pow(t, q) - 1;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

}  // namespace gpf
