#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpf/arith.hpp"
#include "gpf/factor.hpp"
#include "gpf/sunits.hpp"

namespace gpf {

/// Integers a > b > c >= 1.
class Triple {
public:
  /// Throws invalid_argument unless a > b > c >= 1 and ab + 1 fits 64 bits.
  Triple(std::uint64_t a, std::uint64_t b, std::uint64_t c);

  std::uint64_t a() const { return a_; }
  std::uint64_t b() const { return b_; }
  std::uint64_t c() const { return c_; }
  std::uint64_t u() const { return a_ * b_ + 1; }
  std::uint64_t v() const { return a_ * c_ + 1; }

  std::string to_string() const;  // "3,2,1"
  auto operator<=>(const Triple&) const = default;

private:
  std::uint64_t a_, b_, c_;
};

/// A triple with both u = ab+1 and v = ac+1 S-smooth.
struct TripleHit {
  Triple triple;
  SUnit u;
  SUnit v;

  bool operator==(const TripleHit& o) const {
    return triple == o.triple && u.value == o.u.value && v.value == o.v.value;
  }
};

/// Deterministic output order: a, then u, then v.
bool hit_order(const TripleHit& x, const TripleHit& y);

/// A pair (u, v) whose gcd(u-1, v-1) could not be fully factored; its
/// triples are unknown and it is reported instead of being dropped.
struct UncheckedCandidate {
  std::uint64_t u = 0;
  std::uint64_t v = 0;
  std::uint64_t g = 0;
  std::vector<std::uint64_t> unresolved;
};

struct PairSearchResult {
  std::vector<TripleHit> hits;
  std::vector<UncheckedCandidate> unchecked;
};

struct SearchOptions {
  unsigned workers = 1;
  const Factorizer* factorizer = nullptr;  // default_factorizer() when null
};

/// Direct triple loop, testing ab+1 and ac+1 for smoothness. Needs a_max >= 3.
std::vector<TripleHit> brute_force_triples(const PlaceSet& s, std::uint64_t a_max,
                                           const SearchOptions& options = {});

/// Complete search over S-unit pairs u > v with u <= u_bound, using that any
/// admissible a divides gcd(u-1, v-1). Needs 7 <= u_bound < 2^63.
PairSearchResult pair_search(const PlaceSet& s, std::uint64_t u_bound,
                             const SearchOptions& options = {});

std::vector<TripleHit> filter_a_max(const std::vector<TripleHit>& hits, std::uint64_t a_max);

struct FrontierStability {
  std::uint64_t lower_bound = 0;
  std::uint64_t upper_bound = 0;
  std::size_t lower_hits = 0;
  std::size_t upper_hits = 0;
  std::size_t new_hits = 0;
  bool subset = false;  // lower-bound hits all reappear at the upper bound
  std::uint64_t largest_a = 0;
  std::uint64_t largest_u = 0;
};

FrontierStability frontier_stability(const std::vector<TripleHit>& lower, std::uint64_t lower_bound,
                                     const std::vector<TripleHit>& upper, std::uint64_t upper_bound);

enum class GpfMode { pair, gss };
std::string to_string(GpfMode mode);
GpfMode parse_gpf_mode(const std::string& s);

/// Minimum over a > b > c > 0 of the gpf of (ab+1)(ac+1), or of
/// (ab+1)(ac+1)(bc+1) in gss mode. Ties go to the smallest (b, c).
struct GpfRecord {
  std::uint64_t a = 0;
  GpfMode mode = GpfMode::pair;
  std::uint64_t best_b = 0;
  std::uint64_t best_c = 0;
  BigInt product;
  std::uint64_t gpf = 0;
  bool resolved = true;  // false if some (b, c) had an unresolved factor
};

std::vector<GpfRecord> gpf_table(std::uint64_t a_min, std::uint64_t a_max, GpfMode mode,
                                 const SearchOptions& options = {});

struct GcdScanRecord {
  std::uint64_t u = 0;
  std::uint64_t v = 0;
  std::uint64_t g = 0;
  double exponent = 0;  // log g / log max(u, v)
  bool independent = true;
  std::optional<PowerRelation> relation;
  std::optional<std::uint64_t> base;  // t with u = t^q, v = t^p
};

/// gcd data for one pair of S-units, in the given order. Throws
/// InvariantViolation if a dependent pair has g < t - 1.
GcdScanRecord gcd_record(const SUnit& u, const SUnit& v, const PlaceSet& s);

/// All S-unit pairs min_value <= v < u <= bound, sorted by exponent
/// descending, then by (u, v).
std::vector<GcdScanRecord> gcd_scan(const PlaceSet& s, std::uint64_t bound,
                                    std::uint64_t min_value = 16, const SearchOptions& options = {});

/// (abc)^2 = rst - rs - rt - st + r + s + t - 1 with r = ab+1, s = ac+1, t = bc+1.
struct Remark2Report {
  Triple triple;
  BigInt r, s, t;
  BigInt abc_squared;
  BigInt identity_residual;
  double dominance_ratio = 0;  // log(rs) / log(rst)
};

/// Throws InvariantViolation if the residual is nonzero.
Remark2Report remark2_report(const Triple& triple);

/// Natural log of a positive big integer, accurate beyond double range.
double log_big(const BigInt& n);

}  // namespace gpf
