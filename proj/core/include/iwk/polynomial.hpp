#pragma once

// Dense univariate polynomials with exact integer coefficients.

#include <string>
#include <string_view>
#include <vector>

#include "iwk/padic.hpp"

namespace iwk {

class IntPoly {
 public:
  IntPoly() = default;
  /// Coefficients from the constant term upwards.
  explicit IntPoly(std::vector<BigInt> coefficients);
  static IntPoly constant(const BigInt& c);
  static IntPoly monomial(const BigInt& c, std::size_t degree);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<BigInt>& coefficients() const { return coeffs_; }
  BigInt coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : BigInt(0); }
  BigInt leading() const { return coeffs_.empty() ? BigInt(0) : coeffs_.back(); }

  BigInt operator()(const BigInt& x) const;
  IntPoly derivative() const;
  IntPoly pow(unsigned e) const;

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const BigInt& c, const IntPoly& a);
  friend bool operator==(const IntPoly&, const IntPoly&) = default;

  /// Renders as e.g. "T^2+3*T+3".
  std::string str(char var = 'T') const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

/// Parses sums of terms `c`, `c*T`, `T^k`, `c*T^k` (signs allowed, spaces ignored).
IntPoly parse_polynomial(std::string_view text, char var = 'T');

/// All integer roots of a nonzero polynomial, ascending, without multiplicity.
/// Roots are located modulo a prime, Hensel-lifted past the Cauchy bound and
/// then confirmed by exact evaluation.
std::vector<BigInt> integer_roots(const IntPoly& f);

}  // namespace iwk
