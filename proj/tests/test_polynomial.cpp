#include <doctest.h>

#include <numeric>

#include "gpf/polynomial.hpp"
#include "oracles.hpp"

using namespace gpf;

namespace {
IntPolynomial poly(std::initializer_list<long> c) {
  std::vector<BigInt> v;
  for (long x : c) v.emplace_back(x);
  return IntPolynomial(std::move(v));
}
}  // namespace

TEST_CASE("IntPolynomial basics") {
  CHECK(poly({1, 2, 0, 0}).degree() == 1);
  CHECK(IntPolynomial().is_zero());
  CHECK(IntPolynomial().degree() == -1);
  CHECK(poly({1, 1, 1, 1}).to_string() == "x^3+x^2+x+1");
  CHECK(poly({-1, 0, -2}).to_string() == "-2x^2-1");
  CHECK(IntPolynomial::cyclotomic_quotient(3) == poly({1, 1, 1}));
  CHECK((poly({-1, 1}) * IntPolynomial::cyclotomic_quotient(5)) == poly({-1, 0, 0, 0, 0, 1}));
  CHECK(poly({4, 6, 8}).content() == 2);
  CHECK(poly({1, 1, 1}).evaluate(2) == 7);
  CHECK_THROWS_AS(IntPolynomial::cyclotomic_quotient(0), std::invalid_argument);
}

TEST_CASE("rational_gcd reports content separately") {
  // gcd of 2x+2 and 4x^2-4 over Q is x+1.
  auto g = rational_gcd(poly({2, 2}), poly({-4, 0, 4}));
  CHECK(g.primitive == poly({1, 1}));
  CHECK(g.is_monic());
  // gcd of 2x+1 and 4x^2-1 is x + 1/2, primitive form 2x+1.
  auto h = rational_gcd(poly({1, 2}), poly({-1, 0, 4}));
  CHECK(h.primitive == poly({1, 2}));
  CHECK(h.leading == 2);
  auto z = rational_gcd(IntPolynomial(), IntPolynomial());
  CHECK(z.primitive.is_zero());
  CHECK(rational_gcd(poly({3}), poly({1, 1})).primitive == poly({1}));
}

TEST_CASE("cyclotomic_quotient_gcd examples") {
  CHECK(cyclotomic_quotient_gcd(2, 3) == poly({1}));
  CHECK(cyclotomic_quotient_gcd(4, 4) == poly({1, 1, 1, 1}));
  CHECK(cyclotomic_quotient_gcd(4, 6) == poly({1, 1}));
  CHECK(cyclotomic_quotient_gcd(1, 7) == poly({1}));
}

TEST_CASE("cyclotomic_quotient_gcd: coprime gives 1, degree equals gcd - 1") {
  for (unsigned p = 1; p <= 20; ++p)
    for (unsigned q = 1; q <= 20; ++q) {
      const auto g = cyclotomic_quotient_gcd(p, q);
      REQUIRE(g.degree() == static_cast<long>(oracle::common_nontrivial_roots(p, q)));
      REQUIRE(g.degree() == static_cast<long>(std::gcd(p, q)) - 1);
      if (std::gcd(p, q) == 1) REQUIRE(g == poly({1}));
      REQUIRE(g == IntPolynomial::cyclotomic_quotient(std::gcd(p, q)));
    }
}
