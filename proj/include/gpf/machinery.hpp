#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gpf/arith.hpp"
#include "gpf/matrix.hpp"
#include "gpf/search.hpp"
#include "gpf/sunits.hpp"

namespace gpf {

inline constexpr unsigned kDefaultTruncation = 5;

/// The integer point fed to the Subspace Theorem for one triple.
///
/// With truncation order k (default 5) there are N = 3k + 2 coordinates:
///   y1 = (u-1)/(v-1) = b/c,  y2 = (u^2-1)/(v-1) = (u+1)b/c,
///   sigma_i = u^j v^(k-n) with i = k*j + n, j in {0,1,2}, n in {1..k},
///   x = (c v^k y1, c v^k y2, c sigma_1, ..., c sigma_3k).
/// alpha row j (j = 1, 2) is +1 on the u^0 block and -1 on the u^j block, so
/// that L_j(x) = x_j + sum_i alpha_ji x_(i+2) telescopes to c (u^j - 1)/(v - 1).
struct WitnessVector {
  Triple triple;
  BigInt u, v;
  unsigned order = kDefaultTruncation;
  ExactRational y1, y2;
  std::vector<BigInt> sigma;
  DenseMatrix<BigInt> alpha;  // 2 x 3k
  std::vector<BigInt> x;

  std::size_t dimension() const { return x.size(); }
};

/// Throws invalid_argument naming the offending prime if u or v is not
/// S-smooth or if order < 5 (the exponent chain needs k >= 5), and
/// InvariantViolation if a closed form fails.
WitnessVector build_witness(const Triple& triple, const PlaceSet& s,
                            unsigned order = kDefaultTruncation);

/// Coefficient matrices of L_{1w}..L_{Nw}; row j holds form j.
struct FormSystem {
  std::vector<Place> places;
  std::vector<DenseMatrix<BigInt>> forms;  // one per place
};

FormSystem build_forms(const WitnessVector& w, const PlaceSet& s);

/// L_{jw}(x) and |L_{jw}(x)|_w for every place w and form j.
struct FormTable {
  std::vector<Place> places;
  std::vector<std::vector<BigInt>> values;
  std::vector<std::vector<ExactRational>> abs_values;
};

FormTable evaluate_forms(const WitnessVector& w, const PlaceSet& s);

struct Check {
  std::string name;
  bool hard = true;  // hard checks are exact theorems; soft ones are reported
  bool passed = false;
  std::string value;
};

/// Exact products behind the Subspace hypothesis, plus measured implied
/// constants. The "<<" statements carry unspecified constants, so those are
/// reported as ratios and never asserted.
struct InequalityReport {
  std::array<ExactRational, 2> series_residual;   // v^k y_j + sum v^(k-n) - sum u^j v^(k-n)
  std::array<ExactRational, 2> inf_value;      // |L_j,inf(x)|
  std::array<ExactRational, 2> finite_part;     // prod over finite w of |L_jw(x)|_w
  std::array<ExactRational, 2> place_product;    // prod over all w
  std::vector<ExactRational> coordinate_product;      // j = 3..N
  ExactRational finite_v_power;                // prod over finite w of |v^k|_w
  ExactRational full_product;                  // prod over j and w
  ExactRational product_bound;                 // c^N u^3 v^(-2(k+1))
  ExactRational chain_middle;                  // c^k a^(4-2k)
  BigInt height;                               // max |x_i|
  BigInt height_bound;                         // u^2 v^k c
  BigInt height_cap;                           // a^(2k+5)

  std::array<double, 2> c1{}, c3{}, c4{};
  double c6 = 0;
  double measured_exponent = 0;  // -log(full_product) / log(height)
  double hypothesis_exponent = 0;  // 1 / (2k + 5)
  std::vector<Check> checks;

  bool hard_pass() const;
};

/// Throws InvariantViolation listing every failed hard check.
InequalityReport inequality_report(const WitnessVector& w, const PlaceSet& s);

/// eta1 (U-1) + eta2 (U^2-1) + (V-1) sum rho_jn U^j V^-n, j = 0..2, n = 1..k.
struct CurveCoeffs {
  ExactRational eta1, eta2;
  DenseMatrix<ExactRational> rho{3, kDefaultTruncation};  // rho(j, n-1)
};

/// V^k times the curve's Laurent polynomial; entry (i, d) is the coefficient
/// of U^i V^d.
DenseMatrix<ExactRational> curve_polynomial(const CurveCoeffs& coeffs);
bool curve_nontrivial(const CurveCoeffs& coeffs);

struct DescentReport {
  Triple triple;
  std::uint64_t u = 0, v = 0;
  std::uint64_t g = 0;  // gcd(u-1, v-1)
  bool a_divides_g = false;
  std::optional<PowerRelation> relation{};
  std::optional<std::uint64_t> base{};  // u = t^q, v = t^p
  std::optional<BigInt> base_gcd{};    // gcd(t^p - 1, t^q - 1)
  // a <= t-1 <= u^(1/q) <= a^(2/q), exactly, when a relation exists.
  std::optional<bool> chain_holds{};
  std::optional<std::array<double, 3>> chain_values{};  // t-1, u^(1/q), a^(2/q)
  bool u_is_v_squared = false;
  // With the same a and c, u = v^2 would need b = c(ac+2), which exceeds a.
  BigInt square_b{};
  bool square_excluded = false;
};

/// Throws InvariantViolation if a does not divide g or u = v^2.
DescentReport descent_check(const TripleHit& hit, const PlaceSet& s);

/// For u = v^2: every a | gcd(u-1, v-1) with c = (v-1)/a >= 1 gives
/// b = (u-1)/a >= a. Returns the candidate (a, b, c) list, all excluded.
struct SquareCandidate {
  std::uint64_t a, b, c;
  bool excluded;  // b >= a
};
std::vector<SquareCandidate> square_relation_candidates(std::uint64_t v);

}  // namespace gpf
