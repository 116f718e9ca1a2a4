#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "gpf/arith.hpp"

namespace gpf {

/// Exponents aligned with PlaceSet::primes().
using ExponentVector = std::vector<unsigned>;

/// A positive integer whose prime factors all lie in S, with its exponents.
struct SUnit {
  std::uint64_t value = 1;
  ExponentVector exponents;

  Factorization factorization(const PlaceSet& s) const;
  bool operator==(const SUnit&) const = default;
};

/// Exponent vector of n if n is S-smooth; nullopt otherwise. n = 0 throws
/// domain_error.
std::optional<ExponentVector> is_smooth(std::uint64_t n, const PlaceSet& s);

/// Throws invalid_argument naming the first prime outside S.
SUnit make_sunit(std::uint64_t n, const PlaceSet& s);

/// Recomputes the value from the exponents; nullopt on 64-bit overflow.
std::optional<std::uint64_t> reconstruct(const ExponentVector& e, const PlaceSet& s);

/// Increasing stream of all S-units <= bound. Each unit is generated once by
/// multiplying only by primes at least as large as its largest prime, so the
/// heap holds the frontier and nothing else.
class SUnitStream {
public:
  SUnitStream(PlaceSet s, std::uint64_t bound);

  std::optional<SUnit> next();
  std::size_t frontier_size() const { return heap_.size(); }

private:
  struct Node {
    std::uint64_t value;
    std::size_t min_index;
    ExponentVector exponents;
  };
  struct Greater {
    bool operator()(const Node& a, const Node& b) const { return a.value > b.value; }
  };

  PlaceSet places_;
  std::uint64_t bound_;
  std::priority_queue<Node, std::vector<Node>, Greater> heap_;
};

std::vector<SUnit> enumerate_sunits(const PlaceSet& s, std::uint64_t bound);

/// True iff the vectors are not proportional over Q. A zero vector (u = 1)
/// counts as dependent. Size mismatch throws invalid_argument.
bool mult_independent(const ExponentVector& eu, const ExponentVector& ev);

/// u^p = v^q with gcd(p, q) = 1, p and q minimal.
struct PowerRelation {
  unsigned p = 0;
  unsigned q = 0;
  bool operator==(const PowerRelation&) const = default;
};

/// Minimal relation u^p = v^q, verified by exact exponentiation, or nullopt
/// when u and v are multiplicatively independent. Requires u, v >= 2.
std::optional<PowerRelation> find_power_relation(const SUnit& u, const SUnit& v);

/// The integer t with u = t^q and v = t^p for a relation from
/// find_power_relation.
SUnit common_base(const SUnit& u, const SUnit& v, const PowerRelation& rel, const PlaceSet& s);

}  // namespace gpf
