#pragma once

// Torsion modules over Lambda = Z_p[[T]]: distinguished polynomials,
// Weierstrass preparation at finite precision, and exact orders of the
// finite-level coinvariants Lambda/(F, p^n, omega_m).

#include <cstdint>
#include <utility>
#include <vector>

#include "iwk/padic.hpp"
#include "iwk/polynomial.hpp"

namespace iwk {

/// Monic T^d + c_{d-1} T^{d-1} + ... + c_0 with p | c_k for every k.
class DistinguishedPoly {
 public:
  /// Throws std::invalid_argument unless every lower coefficient is divisible by p.
  DistinguishedPoly(std::int64_t p, std::vector<BigInt> lower_coefficients);
  /// Accepts a monic integer polynomial; rejects anything not distinguished.
  static DistinguishedPoly from_poly(std::int64_t p, const IntPoly& f);
  static DistinguishedPoly one(std::int64_t p) { return {p, {}}; }

  std::int64_t prime() const { return p_; }
  unsigned degree() const { return static_cast<unsigned>(lower_.size()); }
  const std::vector<BigInt>& lower_coefficients() const { return lower_; }
  IntPoly as_poly() const;

  friend bool operator==(const DistinguishedPoly&, const DistinguishedPoly&) = default;

 private:
  std::int64_t p_;
  std::vector<BigInt> lower_;
};

struct LambdaFactor {
  DistinguishedPoly poly;
  unsigned multiplicity = 1;
};

/// Lambda / (p^mu * prod f_k^{m_k}).
struct ElementaryLambdaModule {
  std::int64_t p;
  unsigned mu = 0;
  std::vector<LambdaFactor> factors;

  unsigned lambda() const;
  /// p^mu * prod f_k^{m_k} as an integer polynomial in T.
  IntPoly characteristic_polynomial() const;
};

/// a_0 + a_1 T + ... + a_{D-1} T^{D-1} with coefficients in Z/p^N.
class TruncatedSeries {
 public:
  TruncatedSeries(std::int64_t p, unsigned p_precision, std::vector<std::int64_t> coefficients);
  static TruncatedSeries from_poly(std::int64_t p, unsigned p_precision, unsigned t_precision, const IntPoly& f);

  std::int64_t prime() const { return ring_.prime(); }
  unsigned p_precision() const { return ring_.precision(); }
  unsigned t_precision() const { return static_cast<unsigned>(coeffs_.size()); }
  const ResidueRing& ring() const { return ring_; }
  const std::vector<std::int64_t>& coefficients() const { return coeffs_; }
  std::int64_t coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0; }

  /// Product truncated to this series' T-precision and the smaller p-precision.
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  ResidueRing ring_;
  std::vector<std::int64_t> coeffs_;
};

struct WeierstrassResult {
  unsigned mu;
  /// Determined modulo p^min(N - mu, D / lambda) by the truncated input.
  DistinguishedPoly f;
  /// Known modulo p^(N - mu); coefficients of T^k with k >= D - lambda are 0.
  TruncatedSeries unit;
};

/// s = p^mu * f * unit modulo (p^N, T^D). The factorisation is re-multiplied
/// and compared before returning; a mismatch raises PostconditionFailed.
WeierstrassResult weierstrass_prepare(const TruncatedSeries& s);

std::pair<unsigned, unsigned> mu_lambda(const ElementaryLambdaModule& M);

/// (1+T)^(p^(m-1)) - 1.
IntPoly omega(unsigned m, std::int64_t p);

struct CoinvariantBudget {
  std::uint64_t max_dimension = 243;  // p^(m-1)
  unsigned max_p_power = 8;           // n
};

/// ord_p # Lambda/(p^mu prod f^m, p^n, omega_m), measured by Smith form of the
/// multiplication-by-F matrix on Z/p^n[T]/(omega_m).
unsigned coinvariant_order(const ElementaryLambdaModule& M, unsigned m, unsigned n,
                           const CoinvariantBudget& budget = {});

struct GrowthWindow {
  std::vector<unsigned> levels;
  std::vector<unsigned> orders;
  std::vector<std::int64_t> deviations;  // order - (mu p^n + lambda n)
  std::int64_t max_abs_deviation = 0;
  /// Deviations agree from the second level onwards.
  bool tail_constant = true;
  /// Boundedness is only claimed for mu = 0; for mu > 0 the numbers are reported.
  bool asserts_bounded = true;
};

GrowthWindow growth_window_check(const ElementaryLambdaModule& M, const std::vector<unsigned>& levels,
                                 const CoinvariantBudget& budget = {});

}  // namespace iwk
