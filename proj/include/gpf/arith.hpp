#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace gpf {

using BigInt = mpz_class;
using ExactRational = mpq_class;

// Raised when a relation that is a theorem fails on concrete data. It always
// indicates a bug in this library, never a property of the input.
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

enum class Primality { composite, prime, probable_prime };

// Deterministic Miller-Rabin for every 64-bit input.
bool is_prime(std::uint64_t n);

// Deterministic below 3.317e24 (first 13 prime bases); above that 64 random
// rounds and the answer is labeled probable_prime.
Primality primality(const BigInt& n);

/// Builds a rational in lowest terms with a positive denominator.
ExactRational make_rational(const BigInt& num, const BigInt& den = 1);

BigInt pow(const BigInt& base, unsigned long exponent);
ExactRational pow(const ExactRational& base, long exponent);

/// A place of Q: either a prime p (|p|_p = 1/p) or the archimedean place.
class Place {
public:
  static Place infinite() { return Place{0}; }
  static Place finite(std::uint64_t p);

  bool is_infinite() const { return prime_ == 0; }
  std::uint64_t prime() const;
  std::string name() const;

  auto operator<=>(const Place&) const = default;

private:
  explicit Place(std::uint64_t p) : prime_(p) {}
  std::uint64_t prime_;
};

/// A finite set of primes together with the infinite place, which is always
/// a member. Primes are kept strictly increasing.
class PlaceSet {
public:
  PlaceSet() = default;
  /// Sorts the input; rejects duplicates and non-primes with invalid_argument.
  explicit PlaceSet(std::vector<std::uint64_t> primes);

  std::span<const std::uint64_t> primes() const { return primes_; }
  std::size_t size() const { return primes_.size(); }
  bool empty() const { return primes_.empty(); }
  bool contains(std::uint64_t p) const;
  std::optional<std::size_t> index_of(std::uint64_t p) const;

  /// Finite places in increasing order, then the infinite place.
  std::vector<Place> places() const;
  static constexpr bool includes_infinity = true;

  std::string to_string() const;  // "2,3,5,7"

  bool operator==(const PlaceSet&) const = default;

private:
  std::vector<std::uint64_t> primes_;
};

struct PrimePower {
  std::uint64_t prime = 0;
  unsigned exponent = 0;
  auto operator<=>(const PrimePower&) const = default;
};
using Factorization = std::vector<PrimePower>;

/// "2^2*7"; the empty factorization renders as "1".
std::string format_factorization(const Factorization& f);

/// Largest e with p^e | n. n == 0 is a domain_error; composite p is
/// an invalid_argument.
unsigned padic_valuation(const BigInt& n, std::uint64_t p);
long padic_valuation(const ExactRational& x, std::uint64_t p);

/// |x|_w: p^(-v_p(x)) at a finite place, |x| at infinity.
ExactRational abs_at_place(const ExactRational& x, Place w);

/// Product of |x|_w over all w in S (infinite place included).
ExactRational product_over_places(const ExactRational& x, const PlaceSet& s);
/// Same product restricted to the finite places of S.
ExactRational product_over_finite_places(const ExactRational& x, const PlaceSet& s);

/// All divisors of n in ascending order. The factorization must multiply
/// out to n with distinct primes, else invalid_argument.
std::vector<std::uint64_t> divisors(std::uint64_t n, const Factorization& f);

/// Twelve significant digits ("%.12g").
std::string format_real(double x);

/// gcd(t^p - 1, t^q - 1) for t >= 2.
BigInt power_minus_one_gcd(const BigInt& t, unsigned p, unsigned q);

}  // namespace gpf
