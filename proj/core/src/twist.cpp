#include "iwk/twist.hpp"

#include <algorithm>
#include <stdexcept>

#include "iwk/conditions.hpp"
#include "iwk/errors.hpp"

namespace iwk {

std::string to_string(Mod8Case c) {
  switch (c) {
    case Mod8Case::None: return "NONE";
    case Mod8Case::OneMod8: return "ONE_MOD_8";
    case Mod8Case::FiveMod8: return "FIVE_MOD_8";
    case Mod8Case::TwoInS1: return "TWO_IN_S1";
  }
  return "?";
}

BigInt signed_prime(std::int64_t ell) {
  if (ell == 2) return 2;
  return ell % 4 == 1 ? BigInt(static_cast<long>(ell)) : BigInt(static_cast<long>(-ell));
}

namespace {

bool contains(const std::vector<std::int64_t>& v, std::int64_t x) { return std::find(v.begin(), v.end(), x) != v.end(); }

long mod8(const BigInt& x) {
  BigInt r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), 8);
  return r.get_si();
}

int required_symbol(const TwistCertificate& c, std::int64_t ell) {
  const int eps = c.epsilon.at(ell);
  return contains(c.S0, ell) ? -eps : eps;
}

}  // namespace

TwistResult construct_c2_twist(const EllipticCurve& E0, std::int64_t p, std::int64_t search_bound) {
  const EllipticCurve E = minimal_model(E0).curve;
  TwistCertificate cert;
  cert.p = p;
  if (check_c2(E, p).status == Status::Holds) return {E, cert};
  cert.trivial = false;

  for (const auto& [q, e] : factorize(E.discriminant())) {
    const std::int64_t ell = q.get_si();
    if (reduction_type(E, ell).potentially != PotentialReduction::PotMult) continue;
    cert.S.push_back(ell);
    if (!torsion_in_cyclotomic_local(E, ell, p)) continue;
    if (multiplicative_order(q, p) % 2 == 1) cert.S0.push_back(ell);
    else cert.S1.push_back(ell);
  }
  for (std::int64_t ell : cert.S1) cert.N1_star *= signed_prime(ell);
  for (std::int64_t ell : cert.S) {
    if (ell == 2 || contains(cert.S1, ell)) continue;
    int eps = 1;
    for (std::int64_t l1 : cert.S1) eps *= kronecker_symbol(signed_prime(l1), BigInt(static_cast<long>(ell)));
    cert.epsilon[ell] = eps;
  }
  if (contains(cert.S, 2)) {
    if (contains(cert.S1, 2)) {
      cert.mod8_case = Mod8Case::TwoInS1;
      cert.flags.push_back("2 in S1: no mod-8 congruence is prescribed for this branch; 2 ramifies in Q(sqrt d) "
                           "and the result rests on the (C2) re-check");
    } else if (contains(cert.S0, 2)) {
      cert.mod8_case = Mod8Case::FiveMod8;
    } else {
      cert.mod8_case = Mod8Case::OneMod8;
    }
  }

  const BigInt P(static_cast<long>(p));
  for (std::int64_t q = 5; q <= search_bound; q = next_prime(q)) {
    if (q % 4 != 1) continue;
    const BigInt Q(static_cast<long>(q));
    if (q == p || E.discriminant() % Q == 0) continue;
    bool ok = true;
    for (const auto& [ell, eps] : cert.epsilon) {
      if (kronecker_symbol(Q, BigInt(static_cast<long>(ell))) != required_symbol(cert, ell)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    const long r = mod8(Q * cert.N1_star);
    if (cert.mod8_case == Mod8Case::OneMod8 && r != 1) continue;
    if (cert.mod8_case == Mod8Case::FiveMod8 && r != 5) continue;
    cert.q = q;
    cert.d = Q * cert.N1_star;
    EllipticCurve twisted = quadratic_twist(E, cert.d);
    const Verdict check = check_c2(twisted, p);
    if (check.status != Status::Holds) {
      throw PostconditionFailed("construct_c2_twist: twist by " + cert.d.get_str() + " of " + E.str() +
                                " does not satisfy (C2)");
    }
    return {std::move(twisted), std::move(cert)};
  }
  throw SearchExhausted("construct_c2_twist: no admissible q <= " + std::to_string(search_bound));
}

std::vector<std::string> certificate_violations(const TwistCertificate& c, const EllipticCurve& E0) {
  std::vector<std::string> out;
  const EllipticCurve E = minimal_model(E0).curve;
  if (c.trivial) {
    if (c.d != 1) out.emplace_back("trivial certificate with d != 1");
    return out;
  }
  for (std::int64_t ell : c.S0) {
    if (contains(c.S1, ell)) out.push_back("S0 and S1 share " + std::to_string(ell));
    if (!contains(c.S, ell)) out.push_back("S0 element " + std::to_string(ell) + " not in S");
  }
  for (std::int64_t ell : c.S1) {
    if (!contains(c.S, ell)) out.push_back("S1 element " + std::to_string(ell) + " not in S");
  }
  BigInt n1 = 1;
  for (std::int64_t ell : c.S1) n1 *= signed_prime(ell);
  if (n1 != c.N1_star) out.emplace_back("N1* is not the product of signed primes of S1");
  if (c.q % 4 != 1) out.emplace_back("q is not 1 mod 4");
  if (!is_prime(c.q)) out.emplace_back("q is not prime");
  BigInt guard = BigInt(static_cast<long>(c.p));
  for (std::int64_t ell : c.S) guard *= ell;
  if (gcd(guard, BigInt(static_cast<long>(c.q))) != 1) out.emplace_back("q divides p * prod(S)");
  for (std::int64_t ell : c.S) {
    if (ell == 2 || contains(c.S1, ell)) continue;
    auto it = c.epsilon.find(ell);
    int eps = 1;
    for (std::int64_t l1 : c.S1) eps *= kronecker_symbol(signed_prime(l1), BigInt(static_cast<long>(ell)));
    if (it == c.epsilon.end() || it->second != eps) {
      out.push_back("epsilon at " + std::to_string(ell) + " is wrong");
      continue;
    }
    const int want = contains(c.S0, ell) ? -eps : eps;
    if (kronecker_symbol(BigInt(static_cast<long>(c.q)), BigInt(static_cast<long>(ell))) != want) {
      out.push_back("Legendre symbol (q/" + std::to_string(ell) + ") violates the sign table");
    }
  }
  const long r = mod8(BigInt(static_cast<long>(c.q)) * c.N1_star);
  const bool two_in_s = contains(c.S, 2);
  if (two_in_s && contains(c.S0, 2) && r != 5) out.emplace_back("2 in S0 but q N1* != 5 mod 8");
  if (two_in_s && !contains(c.S0, 2) && !contains(c.S1, 2) && r != 1) {
    out.emplace_back("2 in S \\ (S0 u S1) but q N1* != 1 mod 8");
  }
  if (c.d != BigInt(static_cast<long>(c.q)) * c.N1_star) out.emplace_back("d != q * N1*");
  // S must be exactly the potentially multiplicative primes of E
  std::vector<std::int64_t> S;
  for (const auto& [q, e] : factorize(E.discriminant())) {
    if (reduction_type(E, q.get_si()).potentially == PotentialReduction::PotMult) S.push_back(q.get_si());
  }
  std::vector<std::int64_t> cs = c.S;
  std::sort(cs.begin(), cs.end());
  if (cs != S) out.emplace_back("S differs from the potentially multiplicative primes of E");
  return out;
}

}  // namespace iwk
