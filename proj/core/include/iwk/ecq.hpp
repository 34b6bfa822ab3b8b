#pragma once

// Elliptic curves over Q in long Weierstrass form: invariants, global minimal
// models, reduction types, Tate-curve twist classes, quadratic twists and
// traces of Frobenius by point counting.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "iwk/padic.hpp"

namespace iwk {

/// (x, y) = (u^2 x' + r, u^3 y' + s u^2 x' + t).
struct Transform {
  BigInt u = 1;
  BigInt r = 0;
  BigInt s = 0;
  BigInt t = 0;
};

class EllipticCurve {
 public:
  /// Throws std::invalid_argument for a singular model.
  EllipticCurve(BigInt a1, BigInt a2, BigInt a3, BigInt a4, BigInt a6);

  const BigInt& a1() const { return a_[0]; }
  const BigInt& a2() const { return a_[1]; }
  const BigInt& a3() const { return a_[2]; }
  const BigInt& a4() const { return a_[3]; }
  const BigInt& a6() const { return a_[4]; }
  const std::array<BigInt, 5>& coefficients() const { return a_; }

  const BigInt& b2() const { return b2_; }
  const BigInt& b4() const { return b4_; }
  const BigInt& b6() const { return b6_; }
  const BigInt& b8() const { return b8_; }
  const BigInt& c4() const { return c4_; }
  const BigInt& c6() const { return c6_; }
  const BigInt& discriminant() const { return disc_; }
  /// c4^3 / Delta in lowest terms.
  const mpq_class& j_invariant() const { return j_; }

  /// The model obtained by the change of variables; throws if it is not integral.
  EllipticCurve transformed(const Transform& w) const;

  /// "[a1,a2,a3,a4,a6]"
  std::string str() const;
  /// "a1,a2,a3,a4,a6"
  std::string literal() const;

  friend bool operator==(const EllipticCurve& a, const EllipticCurve& b) { return a.a_ == b.a_; }

 private:
  std::array<BigInt, 5> a_;
  BigInt b2_, b4_, b6_, b8_, c4_, c6_, disc_;
  mpq_class j_;
};

/// Integral model with invariants (c4, c6) and a1, a3 in {0, 1}, a2 in {-1, 0, 1}
/// (the standard reduced form), if one exists.
std::optional<EllipticCurve> curve_from_invariants(const BigInt& c4, const BigInt& c6);

struct MinimalModel {
  EllipticCurve curve;
  Transform transform;  // from the input model to `curve`
};

/// Global minimal model (Laska-Kraus-Connell), in reduced form.
MinimalModel minimal_model(const EllipticCurve& E);

/// True when no change of variables with ell | u keeps the model integral.
bool is_minimal_at(const EllipticCurve& E, std::int64_t ell);

enum class ReductionKind { Good, MultSplit, MultNonsplit, Additive };
enum class PotentialReduction { PotGood, PotMult };
enum class SquareClass { UnitSquare, UnitNonsquare, UniformizerTimesSquare, UniformizerTimesNonsquare };

std::string to_string(ReductionKind k);
std::string to_string(PotentialReduction k);
std::string to_string(SquareClass k);

/// Square class in Q_ell^x of the twist parameter gamma: E is the quadratic
/// twist by gamma of a Tate curve over Q_ell.
struct TwistClass {
  BigInt representative;
  SquareClass kind;
  bool ramified;  // Q_ell(sqrt gamma) / Q_ell ramified
};

struct ReductionInfo {
  std::int64_t ell;
  ReductionKind kind;
  PotentialReduction potentially;
  std::optional<TwistClass> gamma;  // present exactly when POT_MULT
};

/// Classification at ell of a model minimal at ell; NotMinimalAtPrime otherwise.
ReductionInfo reduction_type(const EllipticCurve& E, std::int64_t ell);

/// Square class of x in Q_ell^x (x != 0).
TwistClass square_class(const BigInt& x, std::int64_t ell);

/// Minimal model of the twist by a squarefree d != 0.
EllipticCurve quadratic_twist(const EllipticCurve& E, const BigInt& d);

struct TraceRecord {
  std::int64_t ell;
  std::int64_t a_ell;
  std::int64_t computed_at = 0;  // unix seconds, filled in by the trace cache
};

constexpr std::int64_t kDefaultPointCountBound = 1'000'000;

/// a_ell = ell + 1 - #E(F_ell) for a prime of good reduction of this model.
TraceRecord count_points_ap(const EllipticCurve& E, std::int64_t ell, std::int64_t bound = kDefaultPointCountBound);

/// Whether E(Q_ell(mu_{p^infinity}))[p] is nonzero, for a potentially multiplicative ell != p.
bool torsion_in_cyclotomic_local(const EllipticCurve& E, std::int64_t ell, std::int64_t p);

}  // namespace iwk
