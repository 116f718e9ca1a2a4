#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gpf/arith.hpp"

namespace gpf {

struct FactorConfig {
  std::uint64_t trial_bound = 1'000'000;
  std::uint64_t rho_iterations = 1u << 20;  // per attempt
  unsigned rho_attempts = 16;
  std::uint64_t rho_seed = 1;
};

struct FactorResult {
  Factorization factors;                // certified primes, ascending
  std::vector<std::uint64_t> unresolved;  // composite cofactors rho gave up on

  bool complete() const { return unresolved.empty(); }
};

/// Largest prime factor, or the unresolved composites that block it. When
/// unresolved is nonempty, `largest_known` is only a lower bound and must not
/// be reported as the gpf.
struct GpfResult {
  std::uint64_t largest_known = 0;
  std::vector<std::uint64_t> unresolved;

  bool resolved() const { return unresolved.empty(); }
  std::optional<std::uint64_t> prime() const {
    if (!resolved()) return std::nullopt;
    return largest_known;
  }
};

/// Trial division up to the configured bound, then Pollard rho with Brent's
/// cycle detection on what remains. Immutable after construction, so one
/// instance can be shared by any number of threads.
class Factorizer {
public:
  explicit Factorizer(FactorConfig config = {});

  FactorResult factor(std::uint64_t n) const;
  /// n >= 2, else domain_error.
  GpfResult greatest_prime_factor(std::uint64_t n) const;
  /// gpf of a product, computed factor by factor. Every factor must be >= 1
  /// and at least one >= 2.
  GpfResult greatest_prime_factor_of_product(std::span<const std::uint64_t> factors) const;

  const FactorConfig& config() const { return config_; }

private:
  void split(std::uint64_t n, std::vector<std::uint64_t>& primes,
             std::vector<std::uint64_t>& unresolved) const;
  std::optional<std::uint64_t> brent(std::uint64_t n) const;

  FactorConfig config_;
  std::vector<std::uint32_t> small_primes_;
};

/// Shared instance with the default configuration.
const Factorizer& default_factorizer();

inline GpfResult greatest_prime_factor(std::uint64_t n) {
  return default_factorizer().greatest_prime_factor(n);
}

}  // namespace gpf
