#pragma once

// Decision procedures for the hypotheses (C1)_str, (C1), (C2) and (C3).

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "iwk/ecq.hpp"
#include "iwk/polynomial.hpp"

namespace iwk {

enum class Status { Holds, Fails, Inconclusive };

std::string to_string(Status s);

struct Witness {
  std::int64_t prime;  // 0 when the witness is not attached to a prime
  std::string detail;
};

struct Verdict {
  std::string condition;
  Status status = Status::Inconclusive;
  std::vector<Witness> witnesses;
  std::map<std::string, std::int64_t> parameters;
  std::vector<std::string> notes;
};

/// Trace of Frobenius at a good prime; lets callers route through a cache.
using TraceSource = std::function<std::int64_t(std::int64_t ell)>;

constexpr std::int64_t kDefaultSurjectivityBound = 10'000;

/// f_n with psi_n = f_n (n odd) or psi_n = psi_2 f_n (n even), as a polynomial in x.
IntPoly division_polynomial(const EllipticCurve& E, unsigned n);

/// x-coordinates of points of exact order p that are rational (p odd).
std::vector<mpq_class> rational_torsion_abscissae(const EllipticCurve& E, std::int64_t p);

/// Surjectivity of the p-adic representation. Frobenius traces rule out each
/// maximal subgroup class of GL_2(F_p); a rational root of the p-division
/// polynomial (p <= 7) certifies failure. For p = 3 mod-3 surjectivity does
/// not give p-adic surjectivity, so the best outcome there is INCONCLUSIVE.
/// The parameter "mod_p_surjective" is 1 when the mod-p image was shown to be
/// all of GL_2(F_p), which is enough for (C1).
Verdict check_c1_str(const EllipticCurve& E, std::int64_t p, std::int64_t prime_bound = kDefaultSurjectivityBound,
                     const TraceSource& traces = {});

/// (C1): HOLDS when the mod-p image is GL_2(F_p), INCONCLUSIVE otherwise; never FAILS.
Verdict check_c1(const Verdict& c1_str);

/// (C2) via the local torsion criterion at every potentially multiplicative prime.
Verdict check_c2(const EllipticCurve& E, std::int64_t p);

/// The sufficient criterion: every potentially multiplicative prime is non-split
/// multiplicative, p = 3 mod 4 and -p is a square in Q_ell.
Verdict check_c2_sufficient(const EllipticCurve& E, std::int64_t p);

struct CmEntry {
  BigInt j;
  std::int64_t discriminant;
  bool maximal_order;
};

/// The thirteen rational CM j-invariants with the discriminants of their orders.
const std::vector<CmEntry>& cm_table();

Verdict check_c3(const EllipticCurve& E);

}  // namespace iwk
