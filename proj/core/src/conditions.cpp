#include "iwk/conditions.hpp"

#include <map>
#include <sstream>
#include <stdexcept>

#include "iwk/errors.hpp"

namespace iwk {

std::string to_string(Status s) {
  switch (s) {
    case Status::Holds: return "HOLDS";
    case Status::Fails: return "FAILS";
    case Status::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

namespace {

void require_good_odd_prime(const EllipticCurve& E, std::int64_t p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  if (E.discriminant() % BigInt(static_cast<long>(p)) == 0) {
    throw BadReductionAtP("E has bad reduction at p = " + std::to_string(p));
  }
}

std::int64_t md(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

bool is_square_mod(std::int64_t a, std::int64_t p) { return powmod(md(a, p), static_cast<std::uint64_t>((p - 1) / 2), p) == 1; }

}  // namespace

// ---- division polynomials ---------------------------------------------------

IntPoly division_polynomial(const EllipticCurve& E, unsigned n) {
  const IntPoly F({E.b6(), 2 * E.b4(), E.b2(), BigInt(4)});
  const IntPoly F2 = F * F;
  std::map<unsigned, IntPoly> f;
  f[0] = IntPoly();
  f[1] = IntPoly::constant(1);
  f[2] = IntPoly::constant(1);
  f[3] = IntPoly({E.b8(), 3 * E.b6(), 3 * E.b4(), E.b2(), BigInt(3)});
  f[4] = IntPoly({E.b4() * E.b8() - E.b6() * E.b6(), E.b2() * E.b8() - E.b4() * E.b6(), 10 * E.b8(), 10 * E.b6(),
                  5 * E.b4(), E.b2(), BigInt(2)});
  std::function<const IntPoly&(unsigned)> get = [&](unsigned k) -> const IntPoly& {
    if (auto it = f.find(k); it != f.end()) return it->second;
    IntPoly v;
    const unsigned m = k / 2;
    if (k % 2 == 1) {
      const IntPoly a = get(m + 2) * get(m).pow(3);
      const IntPoly b = get(m - 1) * get(m + 1).pow(3);
      v = (m % 2 == 0) ? F2 * a - b : a - F2 * b;
    } else {
      v = get(m) * (get(m + 2) * get(m - 1).pow(2) - get(m - 2) * get(m + 1).pow(2));
    }
    return f.emplace(k, std::move(v)).first->second;
  };
  return get(n);
}

std::vector<mpq_class> rational_torsion_abscissae(const EllipticCurve& E, std::int64_t p) {
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("rational_torsion_abscissae: p must be odd");
  const IntPoly psi = division_polynomial(E, static_cast<unsigned>(p));
  // psi has leading coefficient p; x = z/p turns it into a monic integer polynomial in z
  const int D = psi.degree();
  const BigInt P(static_cast<long>(p));
  std::vector<BigInt> g(static_cast<std::size_t>(D) + 1);
  for (int i = 0; i < D; ++i) {
    BigInt pw;
    mpz_pow_ui(pw.get_mpz_t(), P.get_mpz_t(), static_cast<unsigned long>(D - i - 1));
    g[static_cast<std::size_t>(i)] = psi.coeff(static_cast<std::size_t>(i)) * pw;
  }
  g[static_cast<std::size_t>(D)] = 1;
  std::vector<mpq_class> out;
  for (const auto& z : integer_roots(IntPoly(std::move(g)))) {
    mpq_class x(z, P);
    x.canonicalize();
    out.push_back(x);
  }
  return out;
}

// ---- (C1) -------------------------------------------------------------------

Verdict check_c1_str(const EllipticCurve& E0, std::int64_t p, std::int64_t prime_bound, const TraceSource& traces) {
  const EllipticCurve E = minimal_model(E0).curve;
  require_good_odd_prime(E, p);
  Verdict v{"C1_str", Status::Inconclusive, {}, {{"prime_bound", prime_bound}, {"mod_p_surjective", 0}}, {}};

  if (p <= 7) {
    const auto xs = rational_torsion_abscissae(E, p);
    if (!xs.empty()) {
      v.status = Status::Fails;
      v.witnesses.push_back({p, "rational root x = " + xs.front().get_str() + " of the " + std::to_string(p) +
                                    "-division polynomial: rational p-isogeny, image in a Borel subgroup"});
      return v;
    }
  }

  // s1: a != 0, disc non-residue (Borel, normaliser of split Cartan)
  // s2: a != 0, disc nonzero residue (normaliser of non-split Cartan)
  // s3: u = a^2/ell outside {0,1,2,4} and u^2 - 3u + 1 != 0 (projective image A4, S4, A5); p >= 5 only
  const bool need_s3 = p >= 5;
  bool s1 = false;
  bool s2 = false;
  bool s3 = !need_s3;
  std::int64_t used = 0;
  for (std::int64_t ell = 2; ell <= prime_bound && !(s1 && s2 && s3); ell = next_prime(ell)) {
    if (ell == p || E.discriminant() % BigInt(static_cast<long>(ell)) == 0) continue;
    const std::int64_t a = traces ? traces(ell) : count_points_ap(E, ell).a_ell;
    ++used;
    const std::int64_t am = md(a, p);
    if (am == 0) continue;
    const std::int64_t disc = md(am * am - 4 * md(ell, p), p);
    if (!s1 && disc != 0 && !is_square_mod(disc, p)) {
      s1 = true;
      v.witnesses.push_back({ell, "a=" + std::to_string(a) + ": discriminant non-residue mod p (excludes Borel and split Cartan normaliser)"});
    }
    if (!s2 && disc != 0 && is_square_mod(disc, p)) {
      s2 = true;
      v.witnesses.push_back({ell, "a=" + std::to_string(a) + ": discriminant nonzero residue mod p (excludes non-split Cartan normaliser)"});
    }
    if (!s3) {
      const std::int64_t u = md(am * am % p * powmod(md(ell, p), static_cast<std::uint64_t>(p - 2), p), p);
      if (u != 0 && u != 1 && u != 2 && u != 4 && md(u * u - 3 * u + 1, p) != 0) {
        s3 = true;
        v.witnesses.push_back({ell, "a=" + std::to_string(a) + ": a^2/ell = " + std::to_string(u) + " mod p (excludes exceptional images)"});
      }
    }
  }
  v.parameters["primes_used"] = used;
  if (s1 && s2 && s3) {
    v.parameters["mod_p_surjective"] = 1;
    if (p >= 5) {
      v.status = Status::Holds;
    } else {
      v.notes.push_back("mod-3 image is GL_2(F_3); this does not determine the 3-adic image");
    }
  } else {
    v.notes.push_back("prime budget exhausted before every maximal subgroup was excluded");
  }
  return v;
}

Verdict check_c1(const Verdict& c1_str) {
  Verdict v{"C1", Status::Inconclusive, c1_str.witnesses, c1_str.parameters, {}};
  auto it = c1_str.parameters.find("mod_p_surjective");
  if (it != c1_str.parameters.end() && it->second == 1) {
    v.status = Status::Holds;
    v.notes.push_back("mod-p image GL_2(F_p): the image of G_{K_infinity} is SL_2(F_p), absolutely irreducible");
  } else {
    v.notes.push_back("not decided from Frobenius traces");
  }
  return v;
}

// ---- (C2) -------------------------------------------------------------------

Verdict check_c2(const EllipticCurve& E0, std::int64_t p) {
  const EllipticCurve E = minimal_model(E0).curve;
  require_good_odd_prime(E, p);
  Verdict v{"C2", Status::Holds, {}, {{"p", p}}, {}};
  std::int64_t pot_mult = 0;
  for (const auto& [q, e] : factorize(E.discriminant())) {
    const std::int64_t ell = q.get_si();
    const ReductionInfo info = reduction_type(E, ell);
    if (info.potentially != PotentialReduction::PotMult) continue;
    ++pot_mult;
    if (!torsion_in_cyclotomic_local(E, ell, p)) continue;
    std::ostringstream os;
    os << to_string(info.kind) << ", gamma " << info.gamma->representative.get_str() << " ("
       << to_string(info.gamma->kind) << (info.gamma->ramified ? ", ramified" : ", unramified")
       << "), ord(ell mod p) = " << multiplicative_order(q, p) << ": E(Q_ell(mu_p^inf))[p] != 0";
    v.witnesses.push_back({ell, os.str()});
    v.status = Status::Fails;
  }
  v.parameters["pot_mult_primes"] = pot_mult;
  if (pot_mult == 0) v.notes.push_back("potentially good reduction everywhere");
  return v;
}

Verdict check_c2_sufficient(const EllipticCurve& E0, std::int64_t p) {
  const EllipticCurve E = minimal_model(E0).curve;
  require_good_odd_prime(E, p);
  Verdict v{"C2_sufficient", Status::Holds, {}, {{"p", p}}, {}};
  std::int64_t pot_mult = 0;
  for (const auto& [q, e] : factorize(E.discriminant())) {
    const std::int64_t ell = q.get_si();
    const ReductionInfo info = reduction_type(E, ell);
    if (info.potentially != PotentialReduction::PotMult) continue;
    ++pot_mult;
    std::string failure;
    if (info.kind != ReductionKind::MultNonsplit) {
      failure = "reduction " + to_string(info.kind) + " is not non-split multiplicative";
    } else if (p % 4 != 3) {
      failure = "p is not 3 mod 4";
    } else if (ell == 2 ? md(-p, 8) != 1 : kronecker_symbol(BigInt(static_cast<long>(-p)), q) != 1) {
      failure = "-p is not a square in Q_ell";
    }
    if (failure.empty()) {
      v.witnesses.push_back({ell, "non-split, p = 3 mod 4, -p a square mod ell"});
    } else {
      v.witnesses.push_back({ell, failure});
      v.status = Status::Inconclusive;
    }
  }
  v.parameters["pot_mult_primes"] = pot_mult;
  if (pot_mult == 0) v.notes.push_back("no potentially multiplicative primes");
  return v;
}

// ---- (C3) -------------------------------------------------------------------

const std::vector<CmEntry>& cm_table() {
  static const std::vector<CmEntry> table{
      {BigInt(0), -3, true},
      {BigInt(1728), -4, true},
      {BigInt(-3375), -7, true},
      {BigInt(8000), -8, true},
      {BigInt(-32768), -11, true},
      {BigInt(54000), -12, false},
      {BigInt(287496), -16, false},
      {BigInt(-884736), -19, true},
      {BigInt(-12288000), -27, false},
      {BigInt(16581375), -28, false},
      {BigInt(-884736000), -43, true},
      {BigInt(-147197952000), -67, true},
      {BigInt("-262537412640768000"), -163, true},
  };
  return table;
}

Verdict check_c3(const EllipticCurve& E) {
  Verdict v{"C3", Status::Holds, {}, {}, {}};
  const mpq_class& j = E.j_invariant();
  if (j.get_den() == 1) {
    for (const auto& entry : cm_table()) {
      if (entry.j != j.get_num()) continue;
      v.parameters["cm_discriminant"] = entry.discriminant;
      v.witnesses.push_back({0, "j = " + entry.j.get_str() + ": CM by the order of discriminant " +
                                    std::to_string(entry.discriminant) +
                                    (entry.maximal_order ? " (maximal)" : " (non-maximal)")});
      v.status = entry.maximal_order ? Status::Holds : Status::Fails;
      return v;
    }
  }
  v.notes.push_back("j = " + j.get_str() + " is not a CM j-invariant: no CM");
  return v;
}

}  // namespace iwk
