#include "gpf/polynomial.hpp"

#include <stdexcept>
#include <utility>

namespace gpf {
namespace {

using RatCoeffs = std::vector<ExactRational>;

void trim(RatCoeffs& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

// a mod b over Q; b nonzero.
RatCoeffs remainder(RatCoeffs a, const RatCoeffs& b) {
  const ExactRational lead = b.back();
  while (a.size() >= b.size() && !a.empty()) {
    const ExactRational factor = a.back() / lead;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= factor * b[i];
    a.back() = 0;
    trim(a);
  }
  return a;
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients)) {
  trim();
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial IntPolynomial::constant(const BigInt& c) { return IntPolynomial({c}); }

IntPolynomial IntPolynomial::cyclotomic_quotient(unsigned n) {
  if (n == 0) throw std::invalid_argument("cyclotomic quotient needs n >= 1");
  return IntPolynomial(std::vector<BigInt>(n, BigInt(1)));
}

BigInt IntPolynomial::content() const {
  BigInt g = 0;
  for (const auto& c : coeffs_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

BigInt IntPolynomial::evaluate(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string IntPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (long i = degree(); i >= 0; --i) {
    const BigInt& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const bool negative = c < 0;
    const BigInt mag = abs(c);
    if (!s.empty()) s += negative ? '-' : '+';
    else if (negative) s += '-';
    if (mag != 1 || i == 0) s += mag.get_str();
    if (i > 0) {
      s += 'x';
      if (i > 1) s += '^' + std::to_string(i);
    }
  }
  return s;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return IntPolynomial(std::move(out));
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b) {
  std::vector<BigInt> out(std::max(a.coeffs_.size(), b.coeffs_.size()), BigInt(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
  return IntPolynomial(std::move(out));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b) {
  return a + b * IntPolynomial::constant(-1);
}

PolynomialGcd rational_gcd(const IntPolynomial& a, const IntPolynomial& b) {
  RatCoeffs x(a.coefficients().begin(), a.coefficients().end());
  RatCoeffs y(b.coefficients().begin(), b.coefficients().end());
  while (!y.empty()) {
    RatCoeffs r = remainder(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  if (x.empty()) return {IntPolynomial{}, BigInt(0)};

  // Clear denominators, then divide out the content.
  BigInt den_lcm = 1;
  for (const auto& c : x)
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<BigInt> ints;
  ints.reserve(x.size());
  for (const auto& c : x) ints.emplace_back(c.get_num() * (den_lcm / c.get_den()));
  IntPolynomial scaled(std::move(ints));
  BigInt content = scaled.content();
  if (scaled.leading() < 0) content = -content;
  std::vector<BigInt> primitive;
  for (const auto& c : scaled.coefficients()) primitive.emplace_back(c / content);
  IntPolynomial result(std::move(primitive));
  return {result, result.leading()};
}

IntPolynomial cyclotomic_quotient_gcd(unsigned p, unsigned q) {
  auto g = rational_gcd(IntPolynomial::cyclotomic_quotient(p), IntPolynomial::cyclotomic_quotient(q));
  if (!g.is_monic()) throw InvariantViolation("gcd of monic cyclotomic quotients is not monic");
  return g.primitive;
}

}  // namespace gpf
