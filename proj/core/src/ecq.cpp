#include "iwk/ecq.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

#include "iwk/errors.hpp"

namespace iwk {

namespace {

bool divides_exactly(const BigInt& num, const BigInt& den, BigInt& out) {
  if (den == 0) return false;
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t())) return false;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return true;
}

BigInt ipow(const BigInt& b, unsigned e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

BigInt mod_nonneg(const BigInt& a, long m) {
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(m));
  return r;
}

unsigned val(const BigInt& x, std::int64_t ell) {
  // callers only ask for nonzero x
  return ord_p(x, BigInt(static_cast<long>(ell))).value();
}

Valuation val_or_inf(const BigInt& x, std::int64_t ell) { return ord_p(x, BigInt(static_cast<long>(ell))); }

}  // namespace

// ---- the curve --------------------------------------------------------------

EllipticCurve::EllipticCurve(BigInt a1, BigInt a2, BigInt a3, BigInt a4, BigInt a6)
    : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)} {
  const auto& [A1, A2, A3, A4, A6] = a_;
  b2_ = A1 * A1 + 4 * A2;
  b4_ = 2 * A4 + A1 * A3;
  b6_ = A3 * A3 + 4 * A6;
  b8_ = A1 * A1 * A6 + 4 * A2 * A6 - A1 * A3 * A4 + A2 * A3 * A3 - A4 * A4;
  c4_ = b2_ * b2_ - 24 * b4_;
  c6_ = -b2_ * b2_ * b2_ + 36 * b2_ * b4_ - 216 * b6_;
  disc_ = -b2_ * b2_ * b8_ - 8 * b4_ * b4_ * b4_ - 27 * b6_ * b6_ + 9 * b2_ * b4_ * b6_;
  if (disc_ == 0) throw std::invalid_argument("EllipticCurve: singular model " + str());
  j_ = mpq_class(c4_ * c4_ * c4_, disc_);
  j_.canonicalize();
}

EllipticCurve EllipticCurve::transformed(const Transform& w) const {
  const auto& [A1, A2, A3, A4, A6] = a_;
  const BigInt& u = w.u;
  const BigInt& r = w.r;
  const BigInt& s = w.s;
  const BigInt& t = w.t;
  if (u == 0) throw std::invalid_argument("transformed: u must be nonzero");
  std::array<BigInt, 5> num{
      A1 + 2 * s,
      A2 - s * A1 + 3 * r - s * s,
      A3 + r * A1 + 2 * t,
      A4 - s * A3 + 2 * r * A2 - (t + r * s) * A1 + 3 * r * r - 2 * s * t,
      A6 + r * A4 + r * r * A2 + r * r * r - t * A3 - t * t - r * t * A1,
  };
  const unsigned weight[5] = {1, 2, 3, 4, 6};
  std::array<BigInt, 5> out;
  for (int k = 0; k < 5; ++k) {
    if (!divides_exactly(num[k], ipow(u, weight[k]), out[k])) {
      throw std::invalid_argument("transformed: change of variables does not give an integral model");
    }
  }
  return {out[0], out[1], out[2], out[3], out[4]};
}

std::string EllipticCurve::str() const { return "[" + literal() + "]"; }

std::string EllipticCurve::literal() const {
  std::ostringstream os;
  for (int k = 0; k < 5; ++k) os << (k ? "," : "") << a_[k].get_str();
  return os.str();
}

// ---- models -----------------------------------------------------------------

std::optional<EllipticCurve> curve_from_invariants(const BigInt& c4, const BigInt& c6) {
  BigInt disc;
  if (!divides_exactly(c4 * c4 * c4 - c6 * c6, BigInt(1728), disc) || disc == 0) return std::nullopt;
  BigInt b2 = mod_nonneg(-c6, 12);
  if (b2 > 6) b2 -= 12;
  BigInt b4;
  BigInt b6;
  if (!divides_exactly(b2 * b2 - c4, BigInt(24), b4)) return std::nullopt;
  if (!divides_exactly(-b2 * b2 * b2 + 36 * b2 * b4 - c6, BigInt(216), b6)) return std::nullopt;
  const BigInt a1 = mod_nonneg(b2, 2);
  const BigInt a3 = mod_nonneg(b6, 2);
  BigInt a2;
  BigInt a4;
  BigInt a6;
  if (!divides_exactly(b2 - a1, BigInt(4), a2)) return std::nullopt;
  if (!divides_exactly(b4 - a1 * a3, BigInt(2), a4)) return std::nullopt;
  if (!divides_exactly(b6 - a3, BigInt(4), a6)) return std::nullopt;
  EllipticCurve E(a1, a2, a3, a4, a6);
  if (E.c4() != c4 || E.c6() != c6) return std::nullopt;
  return E;
}

namespace {

// Largest u (up to sign) with (c4/u^4, c6/u^6) the invariants of an integral model.
std::pair<BigInt, EllipticCurve> minimal_from_invariants(const BigInt& c4, const BigInt& c6, const BigInt& disc) {
  BigInt g = gcd(BigInt(c6 * c6), disc);
  BigInt u_rest = 1;
  unsigned d2 = 0;
  unsigned d3 = 0;
  for (const auto& [q, e] : factorize(g)) {
    const unsigned d = e / 12;
    if (d == 0) continue;
    if (q == 2) d2 = d;
    else if (q == 3) d3 = d;
    else u_rest *= ipow(q, d);
  }
  for (int i2 = static_cast<int>(d2); i2 >= 0; --i2) {
    for (int i3 = static_cast<int>(d3); i3 >= 0; --i3) {
      const BigInt u = u_rest * ipow(BigInt(2), static_cast<unsigned>(i2)) * ipow(BigInt(3), static_cast<unsigned>(i3));
      BigInt c4s;
      BigInt c6s;
      if (!divides_exactly(c4, ipow(u, 4), c4s) || !divides_exactly(c6, ipow(u, 6), c6s)) continue;
      if (auto E = curve_from_invariants(c4s, c6s)) return {u, *E};
    }
  }
  throw PostconditionFailed("minimal_model: no integral model for the given invariants");
}

}  // namespace

MinimalModel minimal_model(const EllipticCurve& E) {
  auto [u0, Emin] = minimal_from_invariants(E.c4(), E.c6(), E.discriminant());
  for (const BigInt& u : {u0, BigInt(-u0)}) {
    Transform w;
    w.u = u;
    if (!divides_exactly(u * Emin.a1() - E.a1(), BigInt(2), w.s)) continue;
    if (!divides_exactly(u * u * Emin.a2() - E.a2() + w.s * E.a1() + w.s * w.s, BigInt(3), w.r)) continue;
    if (!divides_exactly(u * u * u * Emin.a3() - E.a3() - w.r * E.a1(), BigInt(2), w.t)) continue;
    try {
      if (E.transformed(w) == Emin) return {Emin, w};
    } catch (const std::invalid_argument&) {
    }
  }
  throw PostconditionFailed("minimal_model: no integral change of variables to " + Emin.str());
}

bool is_minimal_at(const EllipticCurve& E, std::int64_t ell) {
  if (val(E.discriminant(), ell) < 12) return true;
  const BigInt L(static_cast<long>(ell));
  BigInt c4s;
  BigInt c6s;
  if (!divides_exactly(E.c4(), ipow(L, 4), c4s) || !divides_exactly(E.c6(), ipow(L, 6), c6s)) return true;
  return !curve_from_invariants(c4s, c6s).has_value();
}

// ---- reduction --------------------------------------------------------------

std::string to_string(ReductionKind k) {
  switch (k) {
    case ReductionKind::Good: return "GOOD";
    case ReductionKind::MultSplit: return "MULT_SPLIT";
    case ReductionKind::MultNonsplit: return "MULT_NONSPLIT";
    case ReductionKind::Additive: return "ADDITIVE";
  }
  return "?";
}

std::string to_string(PotentialReduction k) { return k == PotentialReduction::PotGood ? "POT_GOOD" : "POT_MULT"; }

std::string to_string(SquareClass k) {
  switch (k) {
    case SquareClass::UnitSquare: return "UNIT_SQUARE";
    case SquareClass::UnitNonsquare: return "UNIT_NONSQUARE";
    case SquareClass::UniformizerTimesSquare: return "UNIFORMIZER_TIMES_SQUARE";
    case SquareClass::UniformizerTimesNonsquare: return "UNIFORMIZER_TIMES_NONSQUARE";
  }
  return "?";
}

TwistClass square_class(const BigInt& x, std::int64_t ell) {
  if (x == 0) throw std::invalid_argument("square_class: zero has no square class");
  const BigInt L(static_cast<long>(ell));
  const unsigned v = val(x, ell);
  BigInt unit;
  mpz_divexact(unit.get_mpz_t(), x.get_mpz_t(), ipow(L, v).get_mpz_t());
  const bool odd_v = (v % 2) == 1;
  bool square = false;
  bool ramified = odd_v;
  BigInt rep;
  if (ell == 2) {
    const long u8 = mod_nonneg(unit, 8).get_si();
    square = (u8 == 1);
    ramified = odd_v || (u8 % 4 == 3);
    rep = u8;
  } else {
    square = kronecker_symbol(unit, L) == 1;
    if (square) {
      rep = 1;
    } else {
      long n = 2;
      while (kronecker_symbol(BigInt(n), L) != -1) ++n;
      rep = n;
    }
  }
  if (odd_v) rep *= L;
  SquareClass kind = odd_v ? (square ? SquareClass::UniformizerTimesSquare : SquareClass::UniformizerTimesNonsquare)
                           : (square ? SquareClass::UnitSquare : SquareClass::UnitNonsquare);
  return {rep, kind, ramified};
}

namespace {

// Tangent directions at the node of the reduction mod ell (ell = 2, 3).
bool node_is_split(const EllipticCurve& E, std::int64_t ell) {
  auto m = [ell](const BigInt& x) { return mod_nonneg(x, ell).get_si(); };
  const long a1 = m(E.a1()), a2 = m(E.a2()), a3 = m(E.a3()), a4 = m(E.a4()), a6 = m(E.a6());
  const long L = ell;
  auto md = [L](long v) { return ((v % L) + L) % L; };
  for (long x = 0; x < L; ++x) {
    for (long y = 0; y < L; ++y) {
      const long F = md(y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6);
      const long Fx = md(a1 * y - 3 * x * x - 2 * a2 * x - a4);
      const long Fy = md(2 * y + a1 * x + a3);
      if (F != 0 || Fx != 0 || Fy != 0) continue;
      Transform w;
      w.r = x;
      w.t = y;
      const EllipticCurve T = E.transformed(w);
      const long b1 = m(T.a1());
      const long b2 = m(T.a2());
      for (long z = 0; z < L; ++z) {
        if (md(z * z + b1 * z - b2) == 0) return true;
      }
      return false;
    }
  }
  throw PostconditionFailed("reduction_type: no singular point on the reduction of " + E.str());
}

ReductionKind classify_kind(const EllipticCurve& E, std::int64_t ell) {
  const BigInt L(static_cast<long>(ell));
  if (mod_nonneg(E.discriminant(), ell) != 0) return ReductionKind::Good;
  if (mod_nonneg(E.c4(), ell) == 0) return ReductionKind::Additive;
  bool split = false;
  if (ell >= 5) split = kronecker_symbol(-E.c6(), L) == 1;
  else split = node_is_split(E, ell);
  return split ? ReductionKind::MultSplit : ReductionKind::MultNonsplit;
}

}  // namespace

ReductionInfo reduction_type(const EllipticCurve& E, std::int64_t ell) {
  if (!is_prime(ell)) throw std::invalid_argument("reduction_type: ell must be prime");
  if (!is_minimal_at(E, ell)) throw NotMinimalAtPrime("model " + E.str() + " is not minimal at " + std::to_string(ell));
  ReductionInfo info{ell, classify_kind(E, ell), PotentialReduction::PotGood, std::nullopt};
  const Valuation vc4 = val_or_inf(E.c4(), ell);
  const unsigned vd = val(E.discriminant(), ell);
  if (!(vc4 + vc4 + vc4 >= Valuation(vd))) info.potentially = PotentialReduction::PotMult;
  if (info.potentially == PotentialReduction::PotGood) return info;

  if (ell != 2) {
    info.gamma = square_class(-E.c6(), ell);
    return info;
  }
  if (info.kind == ReductionKind::MultSplit) {
    info.gamma = square_class(BigInt(1), 2);
  } else if (info.kind == ReductionKind::MultNonsplit) {
    info.gamma = square_class(BigInt(5), 2);
  } else {
    for (long d : {-1L, 2L, -2L}) {
      const EllipticCurve Ed = quadratic_twist(E, BigInt(d));
      const ReductionKind k = classify_kind(Ed, 2);
      if (k == ReductionKind::MultSplit || k == ReductionKind::MultNonsplit) {
        info.gamma = square_class(BigInt(k == ReductionKind::MultSplit ? d : 5 * d), 2);
        break;
      }
    }
    if (!info.gamma) throw PostconditionFailed("reduction_type: no 2-adic twist of " + E.str() + " is multiplicative");
  }
  return info;
}

EllipticCurve quadratic_twist(const EllipticCurve& E, const BigInt& d) {
  if (d == 0) throw std::invalid_argument("quadratic_twist: d must be nonzero");
  for (const auto& [q, e] : factorize(d)) {
    if (e > 1) throw std::invalid_argument("quadratic_twist: d must be squarefree");
  }
  // y^2 = x^3 - 27 d^2 c4 x - 54 d^3 c6 is integral with invariants (6^4 d^2 c4, 6^6 d^3 c6)
  const BigInt c4 = ipow(BigInt(6), 4) * d * d * E.c4();
  const BigInt c6 = ipow(BigInt(6), 6) * d * d * d * E.c6();
  const BigInt disc = (c4 * c4 * c4 - c6 * c6) / 1728;
  return minimal_from_invariants(c4, c6, disc).second;
}

// ---- point counting ---------------------------------------------------------

TraceRecord count_points_ap(const EllipticCurve& E, std::int64_t ell, std::int64_t bound) {
  if (ell > bound || ell > (std::int64_t{1} << 31)) {
    throw BoundExceeded("count_points_ap: ell = " + std::to_string(ell) + " above the bound");
  }
  if (!is_prime(ell)) throw std::invalid_argument("count_points_ap: ell must be prime");
  if (mod_nonneg(E.discriminant(), ell) == 0) {
    throw BadReductionPrime("count_points_ap: bad reduction at " + std::to_string(ell));
  }
  if (ell == 2) {
    auto m = [](const BigInt& x) { return mod_nonneg(x, 2).get_si(); };
    const long a1 = m(E.a1()), a2 = m(E.a2()), a3 = m(E.a3()), a4 = m(E.a4()), a6 = m(E.a6());
    std::int64_t count = 1;
    for (long x = 0; x < 2; ++x) {
      for (long y = 0; y < 2; ++y) {
        if ((y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x - a6) % 2 == 0) ++count;
      }
    }
    return {2, 3 - count};
  }
  const std::int64_t L = ell;
  std::vector<signed char> chi(static_cast<std::size_t>(L), -1);
  chi[0] = 0;
  for (std::int64_t x = 1; x <= L / 2; ++x) chi[static_cast<std::size_t>(x * x % L)] = 1;
  // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
  const std::int64_t c2 = mod_nonneg(E.b2(), L).get_si();
  const std::int64_t c1 = mod_nonneg(2 * E.b4(), L).get_si();
  const std::int64_t c0 = mod_nonneg(E.b6(), L).get_si();
  std::int64_t sum = 0;
  for (std::int64_t x = 0; x < L; ++x) {
    std::int64_t v = (4 * x + c2) % L;
    v = (v * x + c1) % L;
    v = (v * x + c0) % L;
    sum += chi[static_cast<std::size_t>(v)];
  }
  return {ell, -sum};
}

bool torsion_in_cyclotomic_local(const EllipticCurve& E, std::int64_t ell, std::int64_t p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("torsion_in_cyclotomic_local: p must be an odd prime");
  if (p == ell) throw std::invalid_argument("torsion_in_cyclotomic_local: ell must differ from p");
  const ReductionInfo info = reduction_type(E, ell);
  if (info.potentially != PotentialReduction::PotMult) {
    throw std::invalid_argument("torsion_in_cyclotomic_local: reduction at " + std::to_string(ell) +
                                " is not potentially multiplicative");
  }
  const TwistClass& g = *info.gamma;
  if (g.kind == SquareClass::UnitSquare) return true;
  if (!g.ramified) return multiplicative_order(BigInt(static_cast<long>(ell)), p) % 2 == 0;
  return false;
}

}  // namespace iwk
