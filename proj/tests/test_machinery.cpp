#include <doctest.h>

#include <random>

#include "gpf/machinery.hpp"

using namespace gpf;

namespace {

TripleHit hit_of(std::uint64_t a, std::uint64_t b, std::uint64_t c, const PlaceSet& s) {
  const Triple t(a, b, c);
  return {t, make_sunit(t.u(), s), make_sunit(t.v(), s)};
}

ExactRational q(long n, long d = 1) { return make_rational(n, d); }

const Check& find_check(const InequalityReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c;
  throw std::runtime_error("missing check " + name);
}

}  // namespace

TEST_CASE("build_witness for (3,2,1), S = {2,7}") {
  const PlaceSet s({2, 7});
  const auto w = build_witness(Triple(3, 2, 1), s);
  CHECK(w.u == 7);
  CHECK(w.v == 4);
  CHECK(w.y1 == 2);
  CHECK(w.y2 == 16);
  REQUIRE(w.dimension() == 17);
  CHECK(w.x[0] == 2048);
  CHECK(w.x[1] == 16384);
  // sigma_i = u^j v^(5-n), i = 5j + n.
  CHECK(w.sigma[0] == 256);
  CHECK(w.sigma[4] == 1);
  CHECK(w.sigma[5] == 7 * 256);
  CHECK(w.sigma[14] == 49);
  for (std::size_t i = 0; i < 15; ++i) CHECK(w.x[i + 2] == w.sigma[i]);
  for (std::size_t i = 0; i < 15; ++i) {
    CHECK(w.alpha(0, i) == (i < 5 ? 1 : (i < 10 ? -1 : 0)));
    CHECK(w.alpha(1, i) == (i < 5 ? 1 : (i < 10 ? 0 : -1)));
  }
}

TEST_CASE("build_witness for (5,3,1), S = {2,3}") {
  const auto w = build_witness(Triple(5, 3, 1), PlaceSet({2, 3}));
  CHECK(w.y1 == 3);
  CHECK(w.y2 == 51);
  CHECK(w.x[1] == 396576);
  CHECK(w.x[1] == 17 * 3 * 7776);
}

TEST_CASE("build_witness rejects non-smooth u or v and short truncations") {
  try {
    build_witness(Triple(4, 3, 2), PlaceSet({3}));
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("13") != std::string::npos);
  }
  CHECK_THROWS_AS(build_witness(Triple(3, 2, 1), PlaceSet({2, 7}), 4), std::invalid_argument);
}

TEST_CASE("forms: structure and independence") {
  const PlaceSet s({2, 7});
  const auto w = build_witness(Triple(3, 2, 1), s);
  const auto fs = build_forms(w, s);
  REQUIRE(fs.places.size() == 3);
  for (std::size_t p = 0; p < fs.places.size(); ++p) {
    const auto& m = fs.forms[p];
    CHECK(determinant(m) == 1);
    for (std::size_t j = 2; j < 17; ++j)
      for (std::size_t i = 0; i < 17; ++i) CHECK(m(j, i) == (i == j ? 1 : 0));
    if (!fs.places[p].is_infinite()) CHECK(m == DenseMatrix<BigInt>::identity(17));
  }
  CHECK(fs.forms.back()(0, 2) == 1);
  CHECK(fs.forms.back()(0, 7) == -1);
  CHECK(fs.forms.back()(1, 12) == -1);
}

TEST_CASE("determinant agrees with cofactor expansion on small matrices") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int trial = 0; trial < 200; ++trial) {
    DenseMatrix<BigInt> m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = d(rng);
    const BigInt expected = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                            m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                            m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    REQUIRE(determinant(m) == expected);
  }
  DenseMatrix<BigInt> singular(2, 2);
  singular(0, 0) = 2;
  singular(0, 1) = 4;
  singular(1, 0) = 1;
  singular(1, 1) = 2;
  CHECK(determinant(singular) == 0);
}

TEST_CASE("evaluate_forms for (3,2,1)") {
  const PlaceSet s({2, 7});
  const auto t = evaluate_forms(build_witness(Triple(3, 2, 1), s), s);
  const std::size_t inf = 2;
  CHECK(t.values[inf][0] == 2);
  CHECK(t.abs_values[inf][0] == 2);
  CHECK(t.values[inf][1] == 16);
  CHECK(t.abs_values[0][0] == q(1, 2048));  // |2048|_2
  CHECK(t.abs_values[1][0] == 1);           // |2048|_7
  for (const auto& row : t.values)
    for (const auto& v : row) CHECK(v >= 1);
}

TEST_CASE("inequality_report for (3,2,1)") {
  const PlaceSet s({2, 7});
  const auto r = inequality_report(build_witness(Triple(3, 2, 1), s), s);
  CHECK(r.hard_pass());
  CHECK(r.series_residual[0] == 2);
  CHECK(r.series_residual[1] == 16);
  CHECK(r.finite_v_power == q(1, 1024));
  CHECK(r.product_bound == q(343, 16777216));
  CHECK(r.chain_middle == q(1, 729));
  CHECK(r.product_bound < q(1, 3));
  CHECK(r.height == 16384);
  CHECK(r.height_bound == 50176);
  CHECK(r.height_cap == 14348907);
  // j = 1, 2 each contribute 2^-10; the sigma forms contribute 1.
  CHECK(r.full_product == q(1, 1048576));
  CHECK(r.c6 == doctest::Approx(16.0 / 343.0));
  CHECK(r.measured_exponent == doctest::Approx(20.0 / 14.0));
  CHECK(r.hypothesis_exponent == doctest::Approx(1.0 / 15.0));
  for (const auto& p : r.coordinate_product) CHECK(p == 1);
  CHECK(find_check(r, "chain_lt_a^-1").passed);
  CHECK_FALSE(find_check(r, "full_product_constant").hard);
}

TEST_CASE("inequality_report hard checks hold on every hit, several truncations") {
  const PlaceSet s({2, 3, 5, 7, 11});
  const auto hits = pair_search(s, 200'000).hits;
  REQUIRE(hits.size() > 20);
  for (const auto& h : hits) {
    for (unsigned k : {5u, 6u, 8u}) {
      const auto w = build_witness(h.triple, s, k);
      REQUIRE(w.dimension() == 3 * k + 2);
      const auto r = inequality_report(w, s);
      REQUIRE(r.hard_pass());
      REQUIRE(r.series_residual[0] == w.y1);
      REQUIRE(r.inf_value[0] == ExactRational(BigInt(static_cast<unsigned long>(h.triple.b()))));
    }
  }
}

TEST_CASE("curve_nontrivial") {
  CurveCoeffs zero;
  CHECK_FALSE(curve_nontrivial(zero));

  CurveCoeffs eta;
  eta.eta1 = 1;
  CHECK(curve_nontrivial(eta));

  CurveCoeffs rho;
  rho.rho(0, 4) = 1;  // rho_{0,5}: (V-1) V^-5, times V^5 is V - 1
  CHECK(curve_nontrivial(rho));
  const auto p = curve_polynomial(rho);
  CHECK(p(0, 1) == 1);
  CHECK(p(0, 0) == -1);

  // No nonzero coefficient vector makes the equation vanish identically.
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> d(-2, 2);
  for (int trial = 0; trial < 2000; ++trial) {
    CurveCoeffs c;
    bool any = false;
    c.eta1 = d(rng);
    c.eta2 = d(rng);
    any = c.eta1 != 0 || c.eta2 != 0;
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t n = 0; n < 5; ++n) {
        c.rho(j, n) = (rng() % 3 == 0) ? d(rng) : 0;
        any = any || c.rho(j, n) != 0;
      }
    REQUIRE(curve_nontrivial(c) == any);
  }
}

TEST_CASE("descent_check on (3,2,1)") {
  const PlaceSet s({2, 7});
  const auto d = descent_check(hit_of(3, 2, 1, s), s);
  CHECK(d.g == 3);
  CHECK(d.a_divides_g);
  CHECK_FALSE(d.relation);
  CHECK_FALSE(d.u_is_v_squared);
  CHECK(d.square_b == 5);  // c(ac+2)
  CHECK(d.square_excluded);
}

TEST_CASE("descent_check on a dependent pair reports the failing chain") {
  // u = 64 = 4^3, v = 16 = 4^2 with a = 3 | gcd(63, 15): the chain would need
  // u <= a^2, which fails; this is the contradiction the descent rests on.
  const PlaceSet s({2});
  const TripleHit fake{Triple(3, 2, 1), make_sunit(64, s), make_sunit(16, s)};
  const auto d = descent_check(fake, s);
  REQUIRE(d.relation);
  CHECK(*d.relation == PowerRelation{2, 3});
  CHECK(d.base == 4u);
  CHECK(*d.base_gcd == 3);  // gcd(4^2-1, 4^3-1) = t - 1
  REQUIRE(d.chain_holds);
  CHECK_FALSE(*d.chain_holds);

  const TripleHit square{Triple(3, 2, 1), make_sunit(16, s), make_sunit(4, s)};
  CHECK_THROWS_AS(descent_check(square, s), InvariantViolation);
  const TripleHit not_dividing{Triple(5, 3, 1), make_sunit(16, s), make_sunit(4, s)};
  CHECK_THROWS_AS(descent_check(not_dividing, s), InvariantViolation);
}

TEST_CASE("u = v^2 is excluded: synthetic v = 4, u = 16") {
  const auto cands = square_relation_candidates(4);
  REQUIRE(cands.size() == 2);
  CHECK(cands[1].a == 3);
  CHECK(cands[1].b == 5);
  CHECK(cands[1].c == 1);
  for (std::uint64_t v = 2; v < 5000; ++v)
    for (const auto& c : square_relation_candidates(v)) REQUIRE(c.excluded);
}

TEST_CASE("descent holds on every hit") {
  const PlaceSet s({2, 3, 5, 7});
  for (const auto& h : pair_search(s, 1'000'000).hits) {
    const auto d = descent_check(h, s);
    REQUIRE(d.a_divides_g);
    REQUIRE(d.square_excluded);
    REQUIRE_FALSE(d.relation);
  }
}
