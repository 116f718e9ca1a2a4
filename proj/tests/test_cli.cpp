#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gpf/cli.hpp"

using namespace gpf;
using namespace gpf::cli;

namespace {

std::vector<std::string> argv_of(std::initializer_list<const char*> args) {
  std::vector<std::string> v{"gpfsearch"};
  for (const char* a : args) v.emplace_back(a);
  return v;
}

struct Captured {
  int code;
  std::string out;
  std::string err;
};

Captured run_args(std::initializer_list<const char*> args) {
  std::ostringstream out, err;
  int code = run(argv_of(args), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "gpf_test_cli";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("parse search invocation") {
  auto plan = parse_args(argv_of({"search", "--primes", "2,3,5,7", "--u-bound", "1e8", "--out", "hits.csv"}));
  CHECK(plan.command == Command::search);
  CHECK(plan.primes == std::vector<std::uint64_t>{2, 3, 5, 7});
  CHECK(plan.u_bound == 100000000);
  CHECK(plan.format == Format::csv);
  CHECK(plan.out_path == "hits.csv");

  auto json = parse_args(argv_of({"search", "--primes", "7,2", "--u-bound", "1000", "--out", "x.json"}));
  CHECK(json.format == Format::json);
  CHECK(json.primes == std::vector<std::uint64_t>{2, 7});
}

TEST_CASE("parse verify with automatic primes") {
  auto plan = parse_args(argv_of({"verify", "--triple", "3,2,1", "--primes", "auto"}));
  CHECK(plan.command == Command::verify);
  CHECK(plan.primes_auto);
  REQUIRE(plan.triple);
  CHECK((*plan.triple)[0] == 3);
  CHECK(plan.truncation == 5);
}

TEST_CASE("usage errors") {
  auto bad = [](std::initializer_list<const char*> args) {
    CHECK_THROWS_AS(parse_args(argv_of(args)), UsageError);
  };
  bad({"search", "--primes", "2,9", "--u-bound", "100"});
  bad({"search", "--primes", "2,3", "--u-bound", "6"});
  bad({"search", "--primes", "auto", "--u-bound", "100"});
  bad({"search", "--primes", "2,3", "--u-bound", "100", "--stability-from", "100"});
  bad({"brute", "--primes", "2,3", "--a-max", "2"});
  bad({"brute", "--primes", "2,3", "--a-max", "10", "--bogus"});
  bad({"brute", "--primes", "2,3", "--a-max", "10", "--format", "json", "--out", "x.csv"});
  bad({"brute", "--primes", "2,3", "--a-max", "10", "--workers", "0"});
  bad({"verify", "--triple", "2,3,1", "--primes", "2,3"});
  bad({"verify", "--triple", "3,2", "--primes", "2,3"});
  bad({"verify", "--triple", "3,2,1", "--primes", "2,7", "--truncation", "4"});
  bad({"gpf-table", "--a-min", "10", "--a-max", "5"});
  bad({"gpf-table", "--a-max", "10", "--mode", "triple"});
  bad({"frobnicate"});
  bad({});

  try {
    parse_args(argv_of({"search", "--primes", "2,9", "--u-bound", "100"}));
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("9 is not prime") != std::string::npos);
  }
  CHECK(run_args({"search", "--primes", "2,9", "--u-bound", "100"}).code == kUsage);
}

TEST_CASE("workers from environment") {
  setenv("GPF_WORKERS", "3", 1);
  CHECK(default_workers() == 3);
  CHECK(parse_args(argv_of({"brute", "--primes", "2,3", "--a-max", "10"})).workers == 3);
  CHECK(parse_args(argv_of({"brute", "--primes", "2,3", "--a-max", "10", "--workers", "2"})).workers == 2);
  unsetenv("GPF_WORKERS");
  CHECK(default_workers() >= 1);
}

TEST_CASE("parameters omit workers and output path") {
  auto p1 = parse_args(argv_of({"brute", "--primes", "2,3", "--a-max", "10", "--workers", "1", "--out", "a.csv"}));
  auto p8 = parse_args(argv_of({"brute", "--primes", "2,3", "--a-max", "10", "--workers", "8", "--out", "b.csv"}));
  CHECK(plan_parameters(p1) == plan_parameters(p8));
  CHECK_FALSE(plan_parameters(p1).contains("workers"));
}

TEST_CASE("verify output for (3,2,1)") {
  auto r = run_args({"verify", "--triple", "3,2,1", "--primes", "2,7"});
  REQUIRE(r.code == kOk);
  CHECK(r.out.find("L1inf(x),value,INFO,2\n") != std::string::npos);
  CHECK(r.out.find("L2inf(x),value,INFO,16\n") != std::string::npos);
  CHECK(r.out.find("height,value,INFO,16384\n") != std::string::npos);
  CHECK(r.out.find(",FAIL,") == std::string::npos);
  CHECK(r.out.find("abc_square_identity,exact,PASS,\"(abc)^2=36, residual=0\"") != std::string::npos);

  auto autod = run_args({"verify", "--triple", "3,2,1", "--primes", "auto"});
  CHECK(autod.code == kOk);
  CHECK(autod.err.find("S inferred as {2,7}") != std::string::npos);

  auto wrong = run_args({"verify", "--triple", "3,2,1", "--primes", "2,3"});
  CHECK(wrong.code == kUsage);
  CHECK(wrong.err.find("not S-smooth") != std::string::npos);
}

TEST_CASE("gpf-table and brute output") {
  auto g = run_args({"gpf-table", "--a-max", "4"});
  REQUIRE(g.code == kOk);
  auto gl = lines(g.out);
  REQUIRE(gl.size() == 4);
  CHECK(gl[0].rfind("# parameters: ", 0) == 0);
  CHECK(gl[1] == "a,mode,best_b,best_c,product,gpf,resolved");
  CHECK(gl[2] == "3,pair,2,1,28,7,true");
  CHECK(gl[3] == "4,pair,2,1,45,5,true");

  auto gss = run_args({"gpf-table", "--a-max", "3", "--mode", "gss"});
  CHECK(lines(gss.out)[2] == "3,gss,2,1,84,7,true");

  auto b = run_args({"brute", "--primes", "2,3,5,7", "--a-max", "5"});
  REQUIRE(b.code == kOk);
  CHECK(b.out.find("\n3,2,1,7,4,7,2^2\n") != std::string::npos);
  CHECK(b.out.find("\n4,2,1,9,5,3^2,5\n") != std::string::npos);
  CHECK(b.out.find("\n5,3,1,16,6,2^4,2*3\n") != std::string::npos);

  auto empty = run_args({"brute", "--primes", "11", "--a-max", "10"});
  REQUIRE(empty.code == kOk);
  CHECK(lines(empty.out).size() == 2);
}

TEST_CASE("json output") {
  auto r = run_args({"gcd-scan", "--primes", "2", "--bound", "1099511627776", "--format", "json"});
  REQUIRE(r.code == kOk);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["schema_version"] == 1);
  CHECK(doc["parameters"]["command"] == "gcd-scan");
  REQUIRE(doc["records"].is_array());
  bool found = false;
  for (const auto& rec : doc["records"]) {
    if (rec["u"] == 1099511627776ULL && rec["v"] == 1048576) {
      found = true;
      CHECK(rec["g"] == 1048575);
      CHECK(rec["independent"] == false);
      CHECK(rec["exponent"].get<double>() == doctest::Approx(0.499999965603).epsilon(1e-12));
    }
  }
  CHECK(found);

  auto s = run_args({"search", "--primes", "2,3,5,7", "--u-bound", "10000", "--stability-from", "1000",
                     "--format", "json"});
  REQUIRE(s.code == kOk);
  auto sd = nlohmann::json::parse(s.out);
  CHECK(sd["stability"]["subset"] == true);
  CHECK(sd["stability"]["lower_bound"] == 1000);
  CHECK(s.err.find("subset=yes") != std::string::npos);

  auto sm = run_args({"smooth", "--primes", "2,3", "--bound", "10"});
  auto sl = lines(sm.out);
  REQUIRE(sl.size() == 9);
  CHECK(sl[1] == "value,factorization");
  CHECK(sl[2] == "1,1");
  CHECK(sl[8] == "9,3^2");
}

TEST_CASE("unresolved factorizations exit with code 4") {
  // A starved factorizer cannot split the larger gcds.
  auto r = run_args({"search", "--primes", "2,3,5,7", "--u-bound", "1e7", "--trial-bound", "2",
                     "--rho-iterations", "1", "--format", "json"});
  REQUIRE(r.code == kUnresolvedFactorization);
  auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc["quarantine"].is_array());
  CHECK_FALSE(doc["quarantine"].empty());
  CHECK(r.err.find("unchecked: u=") != std::string::npos);
}

TEST_CASE("atomic writes and identical output across worker counts") {
  auto p1 = scratch("w1.csv");
  auto p8 = scratch("w8.csv");
  std::filesystem::remove(p1);
  std::filesystem::remove(p8);
  auto r1 = run_args({"search", "--primes", "2,3,5,7", "--u-bound", "1e6", "--workers", "1", "--out",
                      p1.c_str()});
  auto r8 = run_args({"search", "--primes", "2,3,5,7", "--u-bound", "1e6", "--workers", "8", "--out",
                      p8.c_str()});
  REQUIRE(r1.code == kOk);
  REQUIRE(r8.code == kOk);
  CHECK(r1.out.empty());
  const auto a = slurp(p1);
  CHECK_FALSE(a.empty());
  CHECK(a == slurp(p8));
  for (const auto& e : std::filesystem::directory_iterator(p1.parent_path()))
    CHECK(e.path().filename().string().find(".tmp") == std::string::npos);

  auto missing = run_args({"smooth", "--primes", "2", "--bound", "8", "--out", "/nonexistent/dir/x.csv"});
  CHECK(missing.code == kIoError);
}
