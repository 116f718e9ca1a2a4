#include "gpf/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>
#include <unistd.h>

#include "gpf/machinery.hpp"
#include "gpf/serialize.hpp"
#include "gpf/sunits.hpp"

namespace gpf::cli {
namespace {

// Accepts plain decimal or <mantissa>e<exponent>, e.g. 1e8.
std::uint64_t parse_count(const std::string& flag, const std::string& text) {
  auto fail = [&] { throw UsageError(flag + ": '" + text + "' is not a nonnegative integer"); };
  if (text.empty()) fail();
  const auto e = text.find_first_of("eE");
  const std::string mantissa = text.substr(0, e);
  if (mantissa.empty() || mantissa.find_first_not_of("0123456789") != std::string::npos) fail();
  unsigned __int128 value = 0;
  for (char ch : mantissa) {
    value = value * 10 + static_cast<unsigned>(ch - '0');
    if (value > UINT64_MAX) fail();
  }
  if (e != std::string::npos) {
    const std::string exp = text.substr(e + 1);
    if (exp.empty() || exp.size() > 2 || exp.find_first_not_of("0123456789") != std::string::npos) fail();
    for (int i = std::stoi(exp); i > 0; --i) {
      value *= 10;
      if (value > UINT64_MAX) fail();
    }
  }
  return static_cast<std::uint64_t>(value);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::vector<std::uint64_t> parse_primes(const std::string& text) {
  std::vector<std::uint64_t> primes;
  for (const auto& tok : split(text, ',')) {
    const auto p = parse_count("--primes", tok);
    if (!is_prime(p)) throw UsageError(std::to_string(p) + " is not prime");
    primes.push_back(p);
  }
  try {
    PlaceSet check(primes);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--primes: ") + e.what());
  }
  std::sort(primes.begin(), primes.end());
  return primes;
}

Format format_from_extension(const std::string& path) {
  const auto ext = std::filesystem::path(path).extension().string();
  if (ext == ".json") return Format::json;
  return Format::csv;
}

const char* kCommandNames[] = {"brute", "search", "verify", "gpf-table", "gcd-scan", "smooth"};

}  // namespace

std::string to_string(Command c) { return kCommandNames[static_cast<int>(c)]; }

unsigned default_workers() {
  if (const char* env = std::getenv("GPF_WORKERS")) {
    try {
      const auto n = parse_count("GPF_WORKERS", env);
      if (n >= 1 && n <= 1024) return static_cast<unsigned>(n);
    } catch (const UsageError&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

RunPlan parse_args(const std::vector<std::string>& argv) {
  CLI::App app{"Searches for triples a > b > c > 0 with (ab+1)(ac+1) S-smooth and checks the\n"
               "Subspace-Theorem witness inequalities on them.",
               argv.empty() ? "gpfsearch" : argv[0]};
  app.require_subcommand(1);

  std::string primes_text, a_min = "3", a_max, u_bound, stability_from, bound, min_value = "16";
  std::string triple_text, mode = "pair", out_path, format, workers;
  std::string trial_bound = "1000000", rho_iterations = "1048576", rho_seed = "1";
  std::string truncation = "5";

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "Output file (written atomically); standard output if absent");
    sub->add_option("--format", format, "csv or json (default: from --out extension, else csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--workers", workers, "Worker threads (default: $GPF_WORKERS or hardware threads)");
  };
  auto factoring = [&](CLI::App* sub) {
    sub->add_option("--trial-bound", trial_bound, "Trial division bound before Pollard rho")
        ->default_str("1000000");
    sub->add_option("--rho-iterations", rho_iterations, "Pollard-Brent iterations per attempt")
        ->default_str("1048576");
    sub->add_option("--rho-seed", rho_seed, "Pollard-Brent seed")->default_str("1");
  };

  auto* brute = app.add_subcommand("brute", "Direct triple loop up to --a-max");
  brute->add_option("--primes", primes_text, "Comma-separated primes of S")->required();
  brute->add_option("--a-max", a_max, "Largest a (>= 3)")->required();
  common(brute);

  auto* search = app.add_subcommand("search", "Complete S-unit pair search up to --u-bound");
  search->add_option("--primes", primes_text, "Comma-separated primes of S")->required();
  search->add_option("--u-bound", u_bound, "Largest u = ab+1 (>= 7, accepts 1e8)")->required();
  search->add_option("--stability-from", stability_from,
                     "Also search this smaller bound and report hits new between the two");
  common(search);
  factoring(search);

  auto* verify = app.add_subcommand("verify", "Witness construction and exact inequality report");
  verify->add_option("--triple", triple_text, "a,b,c with a > b > c >= 1")->required();
  verify->add_option("--primes", primes_text, "Comma-separated primes of S, or 'auto'")->required();
  verify->add_option("--truncation", truncation, "Truncation order k of the series (N = 3k+2)")
      ->default_str("5");
  common(verify);

  auto* gpf = app.add_subcommand("gpf-table", "Minimal greatest prime factor for each a");
  gpf->add_option("--a-min", a_min, "Smallest a (>= 3)")->default_str("3");
  gpf->add_option("--a-max", a_max, "Largest a")->required();
  gpf->add_option("--mode", mode, "pair: (ab+1)(ac+1); gss: (ab+1)(ac+1)(bc+1)")
      ->check(CLI::IsMember({"pair", "gss"}))
      ->default_str("pair");
  common(gpf);
  factoring(gpf);

  auto* gcd = app.add_subcommand("gcd-scan", "gcd(u-1, v-1) over S-unit pairs");
  gcd->add_option("--primes", primes_text, "Comma-separated primes of S")->required();
  gcd->add_option("--bound", bound, "Largest S-unit (>= 4)")->required();
  gcd->add_option("--min-value", min_value, "Smallest S-unit considered")->default_str("16");
  common(gcd);

  auto* smooth = app.add_subcommand("smooth", "List S-units up to --bound in increasing order");
  smooth->add_option("--primes", primes_text, "Comma-separated primes of S")->required();
  smooth->add_option("--bound", bound, "Largest value (>= 1)")->required();
  common(smooth);

  std::vector<const char*> raw;
  for (const auto& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream text, ignored;
    app.exit(e, text, ignored);
    throw HelpRequested(text.str());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunPlan plan;
  if (app.got_subcommand(brute)) plan.command = Command::brute;
  else if (app.got_subcommand(search)) plan.command = Command::search;
  else if (app.got_subcommand(verify)) plan.command = Command::verify;
  else if (app.got_subcommand(gpf)) plan.command = Command::gpf_table;
  else if (app.got_subcommand(gcd)) plan.command = Command::gcd_scan;
  else plan.command = Command::smooth;

  if (!primes_text.empty()) {
    if (primes_text == "auto") {
      if (plan.command != Command::verify) throw UsageError("--primes auto is only valid for verify");
      plan.primes_auto = true;
    } else {
      plan.primes = parse_primes(primes_text);
    }
  }

  switch (plan.command) {
    case Command::brute:
      plan.a_max = parse_count("--a-max", a_max);
      if (plan.a_max < 3) throw UsageError("--a-max must be at least 3");
      break;
    case Command::search:
      plan.u_bound = parse_count("--u-bound", u_bound);
      if (plan.u_bound < 7) throw UsageError("--u-bound must be at least 7");
      if (plan.u_bound >= (std::uint64_t{1} << 63)) throw UsageError("--u-bound must be below 2^63");
      if (!stability_from.empty()) {
        plan.stability_from = parse_count("--stability-from", stability_from);
        if (plan.stability_from < 7 || plan.stability_from >= plan.u_bound)
          throw UsageError("--stability-from must satisfy 7 <= value < --u-bound");
      }
      break;
    case Command::verify: {
      const auto parts = split(triple_text, ',');
      if (parts.size() != 3) throw UsageError("--triple expects a,b,c");
      std::array<std::uint64_t, 3> t{};
      for (int i = 0; i < 3; ++i) t[i] = parse_count("--triple", parts[i]);
      try {
        Triple check(t[0], t[1], t[2]);
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--triple: ") + e.what());
      }
      if (t[0] > (std::uint64_t{1} << 31)) throw UsageError("--triple: a must be below 2^31");
      plan.triple = t;
      const auto k = parse_count("--truncation", truncation);
      if (k < 5 || k > 64) throw UsageError("--truncation must be in [5, 64]");
      plan.truncation = static_cast<unsigned>(k);
      break;
    }
    case Command::gpf_table:
      plan.a_min = parse_count("--a-min", a_min);
      plan.a_max = parse_count("--a-max", a_max);
      if (plan.a_min < 3) throw UsageError("--a-min must be at least 3");
      if (plan.a_min > plan.a_max) throw UsageError("--a-min must not exceed --a-max");
      if (plan.a_max > (std::uint64_t{1} << 31)) throw UsageError("--a-max must be below 2^31");
      plan.mode = parse_gpf_mode(mode);
      break;
    case Command::gcd_scan:
      plan.bound = parse_count("--bound", bound);
      plan.min_value = parse_count("--min-value", min_value);
      if (plan.bound < 4) throw UsageError("--bound must be at least 4");
      break;
    case Command::smooth:
      plan.bound = parse_count("--bound", bound);
      if (plan.bound < 1) throw UsageError("--bound must be at least 1");
      break;
  }

  plan.factor.trial_bound = parse_count("--trial-bound", trial_bound);
  plan.factor.rho_iterations = parse_count("--rho-iterations", rho_iterations);
  plan.factor.rho_seed = parse_count("--rho-seed", rho_seed);
  if (plan.factor.trial_bound > (std::uint64_t{1} << 30)) throw UsageError("--trial-bound must be below 2^30");

  plan.out_path = out_path;
  if (!format.empty()) {
    plan.format = format == "json" ? Format::json : Format::csv;
    if (!out_path.empty()) {
      const auto ext = std::filesystem::path(out_path).extension().string();
      if ((ext == ".json" && plan.format != Format::json) || (ext == ".csv" && plan.format != Format::csv))
        throw UsageError("--format " + format + " conflicts with --out " + out_path);
    }
  } else {
    plan.format = format_from_extension(out_path);
  }

  if (workers.empty()) {
    plan.workers = default_workers();
  } else {
    const auto w = parse_count("--workers", workers);
    if (w < 1 || w > 1024) throw UsageError("--workers must be in [1, 1024]");
    plan.workers = static_cast<unsigned>(w);
  }
  return plan;
}

nlohmann::ordered_json plan_parameters(const RunPlan& plan) {
  nlohmann::ordered_json p;
  p["command"] = to_string(plan.command);
  switch (plan.command) {
    case Command::brute:
      p["primes"] = plan.primes;
      p["a_max"] = plan.a_max;
      break;
    case Command::search:
      p["primes"] = plan.primes;
      p["u_bound"] = plan.u_bound;
      if (plan.stability_from) p["stability_from"] = plan.stability_from;
      break;
    case Command::verify:
      if (plan.primes_auto) p["primes"] = "auto";
      else p["primes"] = plan.primes;
      p["triple"] = *plan.triple;
      p["truncation"] = plan.truncation;
      break;
    case Command::gpf_table:
      p["a_min"] = plan.a_min;
      p["a_max"] = plan.a_max;
      p["mode"] = to_string(plan.mode);
      break;
    case Command::gcd_scan:
      p["primes"] = plan.primes;
      p["bound"] = plan.bound;
      p["min_value"] = plan.min_value;
      break;
    case Command::smooth:
      p["primes"] = plan.primes;
      p["bound"] = plan.bound;
      break;
  }
  if (plan.command == Command::search || plan.command == Command::gpf_table) {
    p["trial_bound"] = plan.factor.trial_bound;
    p["rho_iterations"] = plan.factor.rho_iterations;
    p["rho_seed"] = plan.factor.rho_seed;
  }
  p["format"] = plan.format == Format::json ? "json" : "csv";
  return p;
}

void write_atomically(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("write failed for " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename " + tmp + " to " + path + ": " + ec.message());
  }
}

namespace {

void emit(const RunPlan& plan, const Table& table, const nlohmann::ordered_json& extra, std::ostream& out) {
  const auto params = plan_parameters(plan);
  const std::string content =
      plan.format == Format::csv ? to_csv(table, &params) : to_json(table, params, extra).dump(2) + "\n";
  if (plan.out_path.empty()) {
    out << content;
    out.flush();
  } else {
    write_atomically(plan.out_path, content);
  }
}

Table verify_table(const TripleHit& hit, const PlaceSet& s, unsigned truncation, std::ostream& err) {
  Table t{{"check", "kind", "status", "value"}, {}};
  auto value = [&](std::string name, std::string v) {
    t.rows.push_back({std::move(name), std::string("value"), std::string("INFO"), std::move(v)});
  };
  auto exact = [&](std::string name, bool ok, std::string v) {
    t.rows.push_back({std::move(name), std::string("exact"), std::string(ok ? "PASS" : "FAIL"), std::move(v)});
  };

  const WitnessVector w = build_witness(hit.triple, s, truncation);
  const FormTable forms = evaluate_forms(w, s);
  value("S", s.to_string() + ",inf");
  value("u", std::to_string(hit.u.value) + "=" + format_factorization(hit.u.factorization(s)));
  value("v", std::to_string(hit.v.value) + "=" + format_factorization(hit.v.factorization(s)));
  value("N", std::to_string(w.dimension()));
  value("y1", w.y1.get_str());
  value("y2", w.y2.get_str());
  value("x1", w.x[0].get_str());
  value("x2", w.x[1].get_str());
  value("L1inf(x)", forms.values.back()[0].get_str());
  value("L2inf(x)", forms.values.back()[1].get_str());

  err << "verify: building inequality report for " << hit.triple.to_string() << "\n";
  const InequalityReport rep = inequality_report(w, s);
  value("height", rep.height.get_str());
  value("full_product", rep.full_product.get_str());
  value("product_bound", rep.product_bound.get_str());
  for (const auto& c : rep.checks) {
    t.rows.push_back({c.name, std::string(c.hard ? "exact" : "measured"),
                      std::string(c.hard ? (c.passed ? "PASS" : "FAIL") : "INFO"), c.value});
  }

  const DescentReport d = descent_check(hit, s);
  exact("a_divides_gcd(u-1,v-1)", d.a_divides_g, "g=" + std::to_string(d.g));
  if (d.relation) {
    value("power_relation", "u^" + std::to_string(d.relation->p) + "=v^" + std::to_string(d.relation->q) +
                                ", t=" + std::to_string(*d.base));
    value("gcd(t^p-1,t^q-1)", d.base_gcd->get_str());
    exact("chain_a<=t-1<=u^(1/q)<=a^(2/q)", *d.chain_holds,
          format_real((*d.chain_values)[0]) + "," + format_real((*d.chain_values)[1]) + "," +
              format_real((*d.chain_values)[2]));
  } else {
    value("power_relation", "none (multiplicatively independent)");
  }
  exact("u_ne_v^2", !d.u_is_v_squared, std::to_string(hit.u.value));
  exact("square_relation_excluded", d.square_excluded, "c(ac+2)=" + d.square_b.get_str());

  const Remark2Report r2 = remark2_report(hit.triple);
  exact("abc_square_identity", r2.identity_residual == 0,
        "(abc)^2=" + r2.abc_squared.get_str() + ", residual=" + r2.identity_residual.get_str());
  t.rows.push_back({std::string("abc_square_dominance_ratio"), std::string("measured"), std::string("INFO"),
                    format_real(r2.dominance_ratio)});
  return t;
}

int execute_impl(const RunPlan& plan, std::ostream& out, std::ostream& err) {
  const Factorizer factorizer(plan.factor);
  const SearchOptions options{plan.workers, &factorizer};
  const PlaceSet s(plan.primes);

  switch (plan.command) {
    case Command::brute: {
      err << "brute: S={" << s.to_string() << "}, a <= " << plan.a_max << "\n";
      auto hits = brute_force_triples(s, plan.a_max, options);
      err << "brute: " << hits.size() << " hits\n";
      emit(plan, to_table(hits, s), nlohmann::ordered_json::object(), out);
      return kOk;
    }
    case Command::search: {
      err << "search: S={" << s.to_string() << "}, u <= " << plan.u_bound << "\n";
      auto result = pair_search(s, plan.u_bound, options);
      err << "search: " << result.hits.size() << " hits, " << result.unchecked.size() << " unchecked\n";
      nlohmann::ordered_json extra = nlohmann::ordered_json::object();
      if (plan.stability_from) {
        auto lower = pair_search(s, plan.stability_from, options);
        const auto fs = frontier_stability(lower.hits, plan.stability_from, result.hits, plan.u_bound);
        err << "stability: " << fs.lower_hits << " hits at u <= " << fs.lower_bound << ", " << fs.upper_hits
            << " at u <= " << fs.upper_bound << ", " << fs.new_hits << " new, subset="
            << (fs.subset ? "yes" : "NO") << ", largest a=" << fs.largest_a << "\n";
        extra["stability"] = {{"lower_bound", fs.lower_bound}, {"upper_bound", fs.upper_bound},
                              {"lower_hits", fs.lower_hits},   {"upper_hits", fs.upper_hits},
                              {"new_hits", fs.new_hits},       {"subset", fs.subset},
                              {"largest_a", fs.largest_a},     {"largest_u", fs.largest_u}};
        if (!fs.subset) {
          emit(plan, to_table(result.hits, s), extra, out);
          err << "error: lower-bound hits missing from the upper-bound search\n";
          return kInvariantViolation;
        }
      }
      if (!result.unchecked.empty()) {
        auto q = nlohmann::ordered_json::array();
        for (const auto& c : result.unchecked) {
          q.push_back({{"u", c.u}, {"v", c.v}, {"g", c.g}, {"unresolved", c.unresolved}});
          err << "unchecked: u=" << c.u << " v=" << c.v << " g=" << c.g << "\n";
        }
        extra["quarantine"] = q;
      }
      emit(plan, to_table(result.hits, s), extra, out);
      return result.unchecked.empty() ? kOk : kUnresolvedFactorization;
    }
    case Command::verify: {
      const auto [a, b, c] = *plan.triple;
      const Triple triple(a, b, c);
      PlaceSet places = s;
      if (plan.primes_auto) {
        std::set<std::uint64_t> found;
        for (auto n : {triple.u(), triple.v()}) {
          auto f = factorizer.factor(n);
          if (!f.complete()) {
            err << "error: could not factor " << n << "\n";
            return kUnresolvedFactorization;
          }
          for (const auto& pp : f.factors) found.insert(pp.prime);
        }
        places = PlaceSet(std::vector<std::uint64_t>(found.begin(), found.end()));
        err << "verify: S inferred as {" << places.to_string() << "}\n";
      }
      TripleHit hit{triple, SUnit{}, SUnit{}};
      try {
        hit.u = make_sunit(triple.u(), places);
        hit.v = make_sunit(triple.v(), places);
      } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
      }
      auto table = verify_table(hit, places, plan.truncation, err);
      nlohmann::ordered_json extra = nlohmann::ordered_json::object();
      extra["resolved_primes"] = std::vector<std::uint64_t>(places.primes().begin(), places.primes().end());
      emit(plan, table, extra, out);
      return kOk;
    }
    case Command::gpf_table: {
      err << "gpf-table: a in [" << plan.a_min << ", " << plan.a_max << "], mode " << to_string(plan.mode) << "\n";
      auto records = gpf_table(plan.a_min, plan.a_max, plan.mode, options);
      emit(plan, to_table(records), nlohmann::ordered_json::object(), out);
      const bool resolved = std::all_of(records.begin(), records.end(), [](const auto& r) { return r.resolved; });
      return resolved ? kOk : kUnresolvedFactorization;
    }
    case Command::gcd_scan: {
      err << "gcd-scan: S={" << s.to_string() << "}, " << plan.min_value << " <= v < u <= " << plan.bound << "\n";
      auto records = gcd_scan(s, plan.bound, plan.min_value, options);
      err << "gcd-scan: " << records.size() << " pairs\n";
      emit(plan, to_table(records), nlohmann::ordered_json::object(), out);
      return kOk;
    }
    case Command::smooth: {
      auto units = enumerate_sunits(s, plan.bound);
      err << "smooth: " << units.size() << " S-units <= " << plan.bound << "\n";
      emit(plan, to_table(units, s), nlohmann::ordered_json::object(), out);
      return kOk;
    }
  }
  return kUsage;
}

}  // namespace

int execute(const RunPlan& plan, std::ostream& out, std::ostream& err) {
  try {
    return execute_impl(plan, out, err);
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kInvariantViolation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  RunPlan plan;
  try {
    plan = parse_args(argv);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  return execute(plan, out, err);
}

}  // namespace gpf::cli
