#include "gpf/sunits.hpp"

#include <numeric>

namespace gpf {

Factorization SUnit::factorization(const PlaceSet& s) const {
  Factorization f;
  const auto primes = s.primes();
  for (std::size_t i = 0; i < exponents.size() && i < primes.size(); ++i) {
    if (exponents[i] != 0) f.push_back({primes[i], exponents[i]});
  }
  return f;
}

std::optional<ExponentVector> is_smooth(std::uint64_t n, const PlaceSet& s) {
  if (n == 0) throw std::domain_error("smoothness of zero is undefined");
  ExponentVector e(s.size(), 0);
  const auto primes = s.primes();
  for (std::size_t i = 0; i < primes.size() && n > 1; ++i) {
    while (n % primes[i] == 0) {
      n /= primes[i];
      ++e[i];
    }
  }
  if (n != 1) return std::nullopt;
  return e;
}

SUnit make_sunit(std::uint64_t n, const PlaceSet& s) {
  auto e = is_smooth(n, s);
  if (!e) {
    std::uint64_t rest = n;
    for (auto p : s.primes())
      while (rest % p == 0) rest /= p;
    std::uint64_t offender = rest;
    for (std::uint64_t d = 2; d * d <= rest; ++d) {
      if (rest % d == 0) {
        offender = d;
        break;
      }
    }
    throw std::invalid_argument(std::to_string(n) + " is not S-smooth: prime factor " +
                                std::to_string(offender) + " not in S");
  }
  return SUnit{n, std::move(*e)};
}

std::optional<std::uint64_t> reconstruct(const ExponentVector& e, const PlaceSet& s) {
  std::uint64_t value = 1;
  const auto primes = s.primes();
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (unsigned k = 0; k < e[i]; ++k) {
      if (__builtin_mul_overflow(value, primes[i], &value)) return std::nullopt;
    }
  }
  return value;
}

SUnitStream::SUnitStream(PlaceSet s, std::uint64_t bound) : places_(std::move(s)), bound_(bound) {
  if (bound_ >= 1) heap_.push(Node{1, 0, ExponentVector(places_.size(), 0)});
}

std::optional<SUnit> SUnitStream::next() {
  if (heap_.empty()) return std::nullopt;
  Node top = heap_.top();
  heap_.pop();
  const auto primes = places_.primes();
  for (std::size_t i = top.min_index; i < primes.size(); ++i) {
    if (top.value > bound_ / primes[i]) break;  // primes ascend
    Node child{top.value * primes[i], i, top.exponents};
    ++child.exponents[i];
    heap_.push(std::move(child));
  }
  return SUnit{top.value, std::move(top.exponents)};
}

std::vector<SUnit> enumerate_sunits(const PlaceSet& s, std::uint64_t bound) {
  std::vector<SUnit> out;
  SUnitStream stream(s, bound);
  while (auto u = stream.next()) out.push_back(std::move(*u));
  return out;
}

bool mult_independent(const ExponentVector& eu, const ExponentVector& ev) {
  if (eu.size() != ev.size())
    throw std::invalid_argument("exponent vectors over different prime sets");
  for (std::size_t i = 0; i < eu.size(); ++i) {
    for (std::size_t j = i + 1; j < eu.size(); ++j) {
      const auto minor = static_cast<long long>(eu[i]) * ev[j] - static_cast<long long>(eu[j]) * ev[i];
      if (minor != 0) return true;
    }
  }
  // All 2x2 minors vanish: proportional, or one side is zero.
  return false;
}

namespace {

unsigned vector_gcd(const ExponentVector& e) {
  unsigned g = 0;
  for (auto x : e) g = std::gcd(g, x);
  return g;
}

}  // namespace

std::optional<PowerRelation> find_power_relation(const SUnit& u, const SUnit& v) {
  if (u.value < 2 || v.value < 2) throw std::domain_error("power relation needs u, v >= 2");
  if (mult_independent(u.exponents, v.exponents)) return std::nullopt;
  // Proportional: eu = gu * e and ev = gv * e for one primitive e.
  const unsigned gu = vector_gcd(u.exponents);
  const unsigned gv = vector_gcd(v.exponents);
  const unsigned g = std::gcd(gu, gv);
  PowerRelation rel{gv / g, gu / g};
  if (pow(BigInt(static_cast<unsigned long>(u.value)), rel.p) !=
      pow(BigInt(static_cast<unsigned long>(v.value)), rel.q))
    throw InvariantViolation("proportional exponent vectors without power relation");
  return rel;
}

SUnit common_base(const SUnit& u, const SUnit& v, const PowerRelation& rel, const PlaceSet& s) {
  ExponentVector e(u.exponents.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (u.exponents[i] % rel.q != 0 || v.exponents[i] % rel.p != 0 ||
        u.exponents[i] / rel.q != v.exponents[i] / rel.p)
      throw std::invalid_argument("relation does not match the exponent vectors");
    e[i] = u.exponents[i] / rel.q;
  }
  auto value = reconstruct(e, s);
  if (!value) throw std::overflow_error("common base exceeds 64 bits");
  return SUnit{*value, std::move(e)};
}

}  // namespace gpf
