#pragma once

#include <string>
#include <vector>

#include "gpf/arith.hpp"

namespace gpf {

/// Dense univariate polynomial over Z, lowest degree first. The zero
/// polynomial has no coefficients; otherwise the leading one is nonzero.
class IntPolynomial {
public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coefficients);

  static IntPolynomial constant(const BigInt& c);
  /// (x^n - 1)/(x - 1) = 1 + x + ... + x^(n-1), n >= 1.
  static IntPolynomial cyclotomic_quotient(unsigned n);

  bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  const BigInt& operator[](std::size_t i) const { return coeffs_[i]; }
  BigInt leading() const { return is_zero() ? BigInt(0) : coeffs_.back(); }

  /// gcd of the coefficients, nonnegative.
  BigInt content() const;
  BigInt evaluate(const BigInt& x) const;

  std::string to_string() const;  // "x^3+x^2+x+1"

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b);
  friend IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b);
  bool operator==(const IntPolynomial&) const = default;

private:
  void trim();
  std::vector<BigInt> coeffs_;
};

/// gcd over Q, scaled to a primitive integer polynomial with positive
/// leading coefficient. `leading` is that coefficient; the monic gcd over Q
/// is primitive / leading. The gcd of two zero polynomials is zero.
struct PolynomialGcd {
  IntPolynomial primitive;
  BigInt leading;
  bool is_monic() const { return leading == 1; }
};

PolynomialGcd rational_gcd(const IntPolynomial& a, const IntPolynomial& b);

/// Monic gcd of (x^p-1)/(x-1) and (x^q-1)/(x-1). Always has integer
/// coefficients; it is the constant 1 exactly when gcd(p, q) = 1.
IntPolynomial cyclotomic_quotient_gcd(unsigned p, unsigned q);

}  // namespace gpf
