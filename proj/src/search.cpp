#include "gpf/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include "parallel.hpp"

namespace gpf {
namespace {

using u128 = unsigned __int128;

const Factorizer& factorizer_of(const SearchOptions& o) {
  return o.factorizer ? *o.factorizer : default_factorizer();
}

// Largest prime factor for every n <= limit.
class GpfSieve {
public:
  explicit GpfSieve(std::uint64_t limit) : gpf_(limit + 1, 0) {
    for (std::uint64_t p = 2; p <= limit; ++p) {
      if (gpf_[p] != 0) continue;
      for (std::uint64_t m = p; m <= limit; m += p) gpf_[m] = static_cast<std::uint32_t>(p);
    }
  }
  std::uint64_t limit() const { return gpf_.size() - 1; }
  std::uint64_t operator[](std::uint64_t n) const { return gpf_[n]; }

private:
  std::vector<std::uint32_t> gpf_;
};

constexpr std::uint64_t kSieveLimit = 1u << 22;

struct GpfLookup {
  const GpfSieve* sieve;
  const Factorizer& factorizer;

  // Returns {gpf, resolved}. n >= 2.
  std::pair<std::uint64_t, bool> operator()(std::uint64_t n) const {
    if (sieve && n <= sieve->limit()) return {(*sieve)[n], true};
    auto r = factorizer.greatest_prime_factor(n);
    return {r.largest_known, r.resolved()};
  }
};

GpfRecord gpf_for_a(std::uint64_t a, GpfMode mode, const GpfLookup& lookup) {
  GpfRecord rec;
  rec.a = a;
  rec.mode = mode;
  // g[b] = gpf(ab + 1)
  std::vector<std::uint64_t> g(a, 0);
  std::vector<bool> ok(a, true);
  for (std::uint64_t b = 1; b < a; ++b) {
    auto [p, res] = lookup(a * b + 1);
    g[b] = p;
    ok[b] = res;
  }

  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  if (mode == GpfMode::pair) {
    // For each b the best partner c < b is one with the smallest g[c].
    std::uint64_t prefix_min = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t best_b = 0;
    for (std::uint64_t b = 2; b < a; ++b) {
      if (ok[b - 1]) prefix_min = std::min(prefix_min, g[b - 1]);
      if (!ok[b]) {
        rec.resolved = false;
        continue;
      }
      if (prefix_min == std::numeric_limits<std::uint64_t>::max()) continue;
      const std::uint64_t value = std::max(g[b], prefix_min);
      if (value < best) {
        best = value;
        best_b = b;
      }
    }
    if (std::find(ok.begin() + 1, ok.end(), false) != ok.end()) rec.resolved = false;
    if (best_b != 0) {
      rec.best_b = best_b;
      for (std::uint64_t c = 1; c < best_b; ++c) {
        if (ok[c] && g[c] <= best) {
          rec.best_c = c;
          break;
        }
      }
    }
  } else {
    for (std::uint64_t b = 2; b < a; ++b) {
      if (!ok[b]) {
        rec.resolved = false;
        continue;
      }
      for (std::uint64_t c = 1; c < b; ++c) {
        if (!ok[c]) continue;
        const std::uint64_t partial = std::max(g[b], g[c]);
        if (partial >= best) continue;
        auto [p, res] = lookup(b * c + 1);
        if (!res) {
          rec.resolved = false;
          continue;
        }
        const std::uint64_t value = std::max(partial, p);
        if (value < best) {
          best = value;
          rec.best_b = b;
          rec.best_c = c;
        }
      }
    }
  }
  if (rec.best_b != 0) {
    rec.gpf = best;
    const BigInt a_big(static_cast<unsigned long>(a));
    rec.product = (a_big * rec.best_b + 1) * (a_big * rec.best_c + 1);
    if (mode == GpfMode::gss) rec.product *= BigInt(static_cast<unsigned long>(rec.best_b)) * rec.best_c + 1;
  }
  return rec;
}

}  // namespace

Triple::Triple(std::uint64_t a, std::uint64_t b, std::uint64_t c) : a_(a), b_(b), c_(c) {
  if (!(a > b && b > c && c >= 1))
    throw std::invalid_argument("triple must satisfy a > b > c >= 1, got " + to_string());
  std::uint64_t ab;
  if (__builtin_mul_overflow(a, b, &ab) || ab == std::numeric_limits<std::uint64_t>::max())
    throw std::invalid_argument("ab + 1 exceeds 64 bits");
}

std::string Triple::to_string() const {
  return std::to_string(a_) + "," + std::to_string(b_) + "," + std::to_string(c_);
}

bool hit_order(const TripleHit& x, const TripleHit& y) {
  return std::tuple(x.triple.a(), x.u.value, x.v.value) < std::tuple(y.triple.a(), y.u.value, y.v.value);
}

std::vector<TripleHit> brute_force_triples(const PlaceSet& s, std::uint64_t a_max,
                                           const SearchOptions& options) {
  if (a_max < 3) throw std::invalid_argument("a_max must be at least 3");
  const std::size_t count = a_max - 2;  // a = 3 .. a_max
  std::vector<std::vector<TripleHit>> per_a(count);
  detail::parallel_for(count, options.workers, [&](std::size_t i) {
    const std::uint64_t a = i + 3;
    for (std::uint64_t b = 2; b < a; ++b) {
      const auto eu = is_smooth(a * b + 1, s);
      for (std::uint64_t c = 1; c < b; ++c) {
        const auto ev = is_smooth(a * c + 1, s);
        if (eu && ev) per_a[i].push_back({Triple(a, b, c), SUnit{a * b + 1, *eu}, SUnit{a * c + 1, *ev}});
      }
    }
  });
  std::vector<TripleHit> hits;
  for (auto& v : per_a) hits.insert(hits.end(), v.begin(), v.end());
  std::sort(hits.begin(), hits.end(), hit_order);
  return hits;
}

PairSearchResult pair_search(const PlaceSet& s, std::uint64_t u_bound, const SearchOptions& options) {
  if (u_bound < 7) throw std::invalid_argument("u_bound must be at least 7");
  if (u_bound >= (std::uint64_t{1} << 63)) throw std::invalid_argument("u_bound must be below 2^63");
  const Factorizer& factorizer = factorizer_of(options);

  std::vector<SUnit> units;
  for (auto& x : enumerate_sunits(s, u_bound))
    if (x.value >= 4) units.push_back(std::move(x));

  // Shards are contiguous ranges of u indices.
  constexpr std::size_t kShard = 32;
  const std::size_t shards = (units.size() + kShard - 1) / kShard;
  std::vector<PairSearchResult> partial(shards);

  detail::parallel_for(shards, options.workers, [&](std::size_t shard) {
    auto& out = partial[shard];
    const std::size_t hi = std::min(units.size(), (shard + 1) * kShard);
    for (std::size_t i = shard * kShard; i < hi; ++i) {
      const SUnit& u = units[i];
      if (u.value < 7) continue;
      const std::uint64_t um1 = u.value - 1;
      for (std::size_t j = 0; j < i; ++j) {
        const SUnit& v = units[j];
        const std::uint64_t g = std::gcd(um1, v.value - 1);
        // Every admissible a divides g and has a^2 > u - 1.
        if (static_cast<u128>(g) * g <= um1) continue;

        // Strip the primes of S first, then factor the rest.
        Factorization f;
        std::uint64_t rest = g;
        for (auto p : s.primes()) {
          unsigned e = 0;
          while (rest % p == 0) {
            rest /= p;
            ++e;
          }
          if (e) f.push_back({p, e});
        }
        if (rest > 1) {
          auto fr = factorizer.factor(rest);
          if (!fr.complete()) {
            out.unchecked.push_back({u.value, v.value, g, fr.unresolved});
            continue;
          }
          f.insert(f.end(), fr.factors.begin(), fr.factors.end());
          std::sort(f.begin(), f.end());
        }
        for (auto a : divisors(g, f)) {
          if (static_cast<u128>(a) * a <= um1) continue;
          // a <= v - 1 holds since a | v - 1.
          out.hits.push_back({Triple(a, um1 / a, (v.value - 1) / a), u, v});
        }
      }
    }
  });

  PairSearchResult result;
  for (auto& p : partial) {
    result.hits.insert(result.hits.end(), p.hits.begin(), p.hits.end());
    result.unchecked.insert(result.unchecked.end(), p.unchecked.begin(), p.unchecked.end());
  }
  std::sort(result.hits.begin(), result.hits.end(), hit_order);
  std::sort(result.unchecked.begin(), result.unchecked.end(),
            [](const auto& x, const auto& y) { return std::tie(x.u, x.v) < std::tie(y.u, y.v); });
  return result;
}

std::vector<TripleHit> filter_a_max(const std::vector<TripleHit>& hits, std::uint64_t a_max) {
  std::vector<TripleHit> out;
  std::copy_if(hits.begin(), hits.end(), std::back_inserter(out),
               [&](const TripleHit& h) { return h.triple.a() <= a_max; });
  return out;
}

FrontierStability frontier_stability(const std::vector<TripleHit>& lower, std::uint64_t lower_bound,
                                     const std::vector<TripleHit>& upper, std::uint64_t upper_bound) {
  FrontierStability fs;
  fs.lower_bound = lower_bound;
  fs.upper_bound = upper_bound;
  fs.lower_hits = lower.size();
  fs.upper_hits = upper.size();
  std::vector<Triple> lo, up;
  for (const auto& h : lower) lo.push_back(h.triple);
  for (const auto& h : upper) {
    up.push_back(h.triple);
    fs.largest_a = std::max(fs.largest_a, h.triple.a());
    fs.largest_u = std::max(fs.largest_u, h.u.value);
  }
  std::sort(lo.begin(), lo.end());
  std::sort(up.begin(), up.end());
  fs.subset = std::includes(up.begin(), up.end(), lo.begin(), lo.end());
  std::vector<Triple> fresh;
  std::set_difference(up.begin(), up.end(), lo.begin(), lo.end(), std::back_inserter(fresh));
  fs.new_hits = fresh.size();
  return fs;
}

std::string to_string(GpfMode mode) { return mode == GpfMode::pair ? "pair" : "gss"; }

GpfMode parse_gpf_mode(const std::string& s) {
  if (s == "pair") return GpfMode::pair;
  if (s == "gss") return GpfMode::gss;
  throw std::invalid_argument("unknown gpf mode '" + s + "' (expected pair or gss)");
}

std::vector<GpfRecord> gpf_table(std::uint64_t a_min, std::uint64_t a_max, GpfMode mode,
                                 const SearchOptions& options) {
  if (a_min < 3 || a_min > a_max) throw std::invalid_argument("gpf_table needs 3 <= a_min <= a_max");
  if (a_max > (std::uint64_t{1} << 31)) throw std::invalid_argument("a_max must be below 2^31");
  const std::uint64_t largest = a_max * (a_max - 1) + 1;
  std::optional<GpfSieve> sieve;
  if (largest <= kSieveLimit) sieve.emplace(largest);
  const GpfLookup lookup{sieve ? &*sieve : nullptr, factorizer_of(options)};

  std::vector<GpfRecord> records(a_max - a_min + 1);
  detail::parallel_for(records.size(), options.workers,
                       [&](std::size_t i) { records[i] = gpf_for_a(a_min + i, mode, lookup); });
  return records;
}

double log_big(const BigInt& n) {
  if (n <= 0) throw std::domain_error("log of a nonpositive integer");
  long exp2 = 0;
  const double mantissa = mpz_get_d_2exp(&exp2, n.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exp2) * std::log(2.0);
}

GcdScanRecord gcd_record(const SUnit& u, const SUnit& v, const PlaceSet& s) {
  GcdScanRecord rec;
  rec.u = u.value;
  rec.v = v.value;
  rec.g = std::gcd(u.value - 1, v.value - 1);
  const std::uint64_t top = std::max(u.value, v.value);
  rec.exponent = rec.g <= 1 || top <= 1
                     ? 0.0
                     : static_cast<double>(std::log(static_cast<long double>(rec.g)) /
                                           std::log(static_cast<long double>(top)));
  rec.independent = mult_independent(u.exponents, v.exponents);
  if (!rec.independent && u.value >= 2 && v.value >= 2) {
    rec.relation = find_power_relation(u, v);
    const SUnit t = common_base(u, v, *rec.relation, s);
    rec.base = t.value;
    if (rec.g < t.value - 1) throw InvariantViolation("gcd(u-1, v-1) < t-1 for a dependent pair");
  }
  return rec;
}

std::vector<GcdScanRecord> gcd_scan(const PlaceSet& s, std::uint64_t bound, std::uint64_t min_value,
                                    const SearchOptions& options) {
  if (bound < 4) throw std::invalid_argument("gcd_scan bound must be at least 4");
  std::vector<SUnit> units;
  for (auto& x : enumerate_sunits(s, bound))
    if (x.value >= std::max<std::uint64_t>(min_value, 2)) units.push_back(std::move(x));

  std::vector<std::vector<GcdScanRecord>> rows(units.size());
  detail::parallel_for(units.size(), options.workers, [&](std::size_t i) {
    for (std::size_t j = 0; j < i; ++j) rows[i].push_back(gcd_record(units[i], units[j], s));
  });
  std::vector<GcdScanRecord> out;
  for (auto& r : rows) out.insert(out.end(), r.begin(), r.end());
  std::sort(out.begin(), out.end(), [](const GcdScanRecord& x, const GcdScanRecord& y) {
    if (x.exponent != y.exponent) return x.exponent > y.exponent;
    return std::tie(x.u, x.v) < std::tie(y.u, y.v);
  });
  return out;
}

Remark2Report remark2_report(const Triple& triple) {
  const BigInt a(static_cast<unsigned long>(triple.a()));
  const BigInt b(static_cast<unsigned long>(triple.b()));
  const BigInt c(static_cast<unsigned long>(triple.c()));
  Remark2Report rep{triple, a * b + 1, a * c + 1, b * c + 1, 0, 0, 0};
  const BigInt abc = a * b * c;
  rep.abc_squared = abc * abc;
  const BigInt& r = rep.r;
  const BigInt& s = rep.s;
  const BigInt& t = rep.t;
  const BigInt rhs = r * s * t - r * s - r * t - s * t + r + s + t - 1;
  rep.identity_residual = rep.abc_squared - rhs;
  if (rep.identity_residual != 0)
    throw InvariantViolation("(abc)^2 identity fails for " + triple.to_string());
  rep.dominance_ratio = log_big(r * s) / log_big(r * s * t);
  return rep;
}

}  // namespace gpf
