#pragma once

// Exact arithmetic substrate: valuations, truncated p-adic integers,
// residue symbols and Hensel lifting.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>

namespace iwk {

using BigInt = mpz_class;

std::string to_string(const BigInt& x);

/// Additive valuation: a natural number or +infinity.
class Valuation {
 public:
  constexpr Valuation() = default;  // zero
  constexpr explicit Valuation(unsigned v) : finite_(true), value_(v) {}

  static constexpr Valuation infinity() {
    Valuation v;
    v.finite_ = false;
    return v;
  }

  constexpr bool is_infinite() const { return !finite_; }
  constexpr bool is_finite() const { return finite_; }
  /// Finite value; throws std::logic_error on infinity.
  unsigned value() const;

  friend constexpr bool operator==(const Valuation& a, const Valuation& b) {
    return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (!a.finite_ || !b.finite_) return b.finite_ <=> a.finite_;
    return a.value_ <=> b.value_;
  }
  friend constexpr Valuation operator+(const Valuation& a, const Valuation& b) {
    if (!a.finite_ || !b.finite_) return infinity();
    return Valuation(a.value_ + b.value_);
  }

  std::string str() const;

 private:
  bool finite_ = true;
  unsigned value_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);

/// The residue ring Z/p^N with machine-word representatives.
/// p^N must stay below 2^62 so products fit in 128-bit intermediates.
class ResidueRing {
 public:
  ResidueRing(std::int64_t p, unsigned precision);

  std::int64_t prime() const { return p_; }
  unsigned precision() const { return precision_; }
  std::int64_t modulus() const { return modulus_; }

  std::int64_t reduce(std::int64_t x) const;
  std::int64_t reduce(const BigInt& x) const;
  std::int64_t add(std::int64_t a, std::int64_t b) const;
  std::int64_t sub(std::int64_t a, std::int64_t b) const;
  std::int64_t neg(std::int64_t a) const;
  std::int64_t mul(std::int64_t a, std::int64_t b) const;
  std::int64_t pow(std::int64_t a, std::uint64_t e) const;
  /// Inverse of a unit; throws std::domain_error if p | a.
  std::int64_t inverse(std::int64_t a) const;
  /// Valuation of a residue; `precision()` is returned for zero.
  unsigned valuation(std::int64_t a) const;
  std::int64_t prime_power(unsigned k) const;

  friend bool operator==(const ResidueRing&, const ResidueRing&) = default;

 private:
  std::int64_t p_;
  unsigned precision_;
  std::int64_t modulus_;
};

/// Element of Z/p^N, canonical representative in [0, p^N).
class PadicInt {
 public:
  PadicInt(std::int64_t p, unsigned precision, const BigInt& value);

  std::int64_t prime() const { return p_; }
  unsigned precision() const { return precision_; }
  std::int64_t value() const { return value_; }
  std::int64_t modulus() const;
  Valuation valuation() const;

  PadicInt operator+(const PadicInt& o) const;
  PadicInt operator-(const PadicInt& o) const;
  PadicInt operator*(const PadicInt& o) const;
  PadicInt operator-() const;
  PadicInt pow(std::uint64_t e) const;
  /// Lowers the precision (truncation); raising is not possible.
  PadicInt truncate(unsigned precision) const;

  friend bool operator==(const PadicInt&, const PadicInt&) = default;

 private:
  PadicInt(std::int64_t p, unsigned precision, std::int64_t reduced, bool);
  std::int64_t p_;
  unsigned precision_;
  std::int64_t value_;
};

std::ostream& operator<<(std::ostream& os, const PadicInt& x);

Valuation ord_p(const BigInt& x, const BigInt& p);

/// Kronecker symbol (a/n); throws std::invalid_argument for n = 0.
int kronecker_symbol(const BigInt& a, const BigInt& n);

/// Least f >= 1 with a^f = 1 mod p. Rejects a divisible by p.
std::uint64_t multiplicative_order(const BigInt& a, std::int64_t p);

/// Teichmüller lift of a mod p to Z/p^N (odd p only).
PadicInt teichmuller(std::int64_t a, std::int64_t p, unsigned precision);

/// Square root of a in Z/p^N, p odd; nullopt when a is not a square there.
std::optional<PadicInt> hensel_sqrt(const BigInt& a, std::int64_t p, unsigned precision);

// ---- elementary number theory used throughout ------------------------------

bool is_prime(const BigInt& n);
bool is_prime(std::int64_t n);
std::int64_t next_prime(std::int64_t n);  // smallest prime > n
std::int64_t powmod(std::int64_t a, std::uint64_t e, std::int64_t m);
std::int64_t mod_floor(const BigInt& a, std::int64_t m);
/// Smallest positive primitive root modulo an odd prime p.
std::int64_t primitive_root(std::int64_t p);
/// Prime factorisation of |n| (n != 0), trial division then Pollard-Brent.
std::map<BigInt, unsigned> factorize(const BigInt& n);

}  // namespace iwk
