#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpf/factor.hpp"
#include "gpf/search.hpp"

namespace gpf::cli {

enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kUsage = 2,
  kInvariantViolation = 3,
  kUnresolvedFactorization = 4,
};

enum class Command { brute, search, verify, gpf_table, gcd_scan, smooth };
enum class Format { csv, json };

std::string to_string(Command c);

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Thrown by parse_args for --help; carries the rendered help text.
class HelpRequested : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct RunPlan {
  Command command = Command::search;
  std::vector<std::uint64_t> primes;
  bool primes_auto = false;  // verify only
  std::uint64_t a_min = 3;
  std::uint64_t a_max = 0;
  std::uint64_t u_bound = 0;
  std::uint64_t stability_from = 0;  // 0: no stability report
  std::uint64_t bound = 0;
  std::uint64_t min_value = 16;
  std::optional<std::array<std::uint64_t, 3>> triple;
  GpfMode mode = GpfMode::pair;
  unsigned truncation = 5;
  std::string out_path;  // empty: standard output
  Format format = Format::csv;
  unsigned workers = 1;
  FactorConfig factor;
};

/// Default worker count: GPF_WORKERS if set, else the hardware concurrency.
unsigned default_workers();

/// argv[0] is the program name. Throws UsageError naming the bad flag.
RunPlan parse_args(const std::vector<std::string>& argv);

/// Everything needed to reproduce a run; omits the worker count and output
/// path, which do not change results.
nlohmann::ordered_json plan_parameters(const RunPlan& plan);

/// Runs the plan, writing results to plan.out_path (atomically) or `out`.
/// Progress goes to `err`. Returns an ExitCode.
int execute(const RunPlan& plan, std::ostream& out, std::ostream& err);

/// parse_args + execute with every error mapped to its exit code.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

/// Writes via a temporary file and rename. Throws runtime_error with the path.
void write_atomically(const std::string& path, const std::string& content);

}  // namespace gpf::cli
