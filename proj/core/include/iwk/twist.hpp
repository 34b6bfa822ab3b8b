#pragma once

// Quadratic twist forcing (C2): the twist by d = q N1* where q = 1 mod 4 is
// a prime with prescribed Legendre symbols at the potentially multiplicative
// primes, together with a certificate that can be re-checked independently.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "iwk/ecq.hpp"

namespace iwk {

enum class Mod8Case {
  None,         // 2 is not potentially multiplicative
  OneMod8,      // 2 in S \ (S0 u S1): q N1* = 1 mod 8
  FiveMod8,     // 2 in S0: q N1* = 5 mod 8
  TwoInS1,      // 2 in S1: no congruence prescribed, 2 ramifies in Q(sqrt d)
};

std::string to_string(Mod8Case c);

struct TwistCertificate {
  std::int64_t p;
  std::vector<std::int64_t> S;
  std::vector<std::int64_t> S0;
  std::vector<std::int64_t> S1;
  BigInt N1_star = 1;
  std::map<std::int64_t, int> epsilon;  // odd ell in S \ S1
  std::int64_t q = 1;                   // 1 for the trivial certificate
  Mod8Case mod8_case = Mod8Case::None;
  BigInt d = 1;
  bool trivial = true;                  // E already satisfied (C2)
  std::vector<std::string> flags;
};

struct TwistResult {
  EllipticCurve curve;
  TwistCertificate certificate;
};

/// ell* = (-1)^((ell-1)/2) ell for odd ell, 2* = 2.
BigInt signed_prime(std::int64_t ell);

constexpr std::int64_t kDefaultTwistSearchBound = 100'000;

/// Throws SearchExhausted when no admissible q <= search_bound exists and
/// PostconditionFailed when the twisted curve does not pass check_c2.
TwistResult construct_c2_twist(const EllipticCurve& E, std::int64_t p,
                               std::int64_t search_bound = kDefaultTwistSearchBound);

/// Every invariant of the certificate type, re-derived from its fields and
/// from the curve's Delta; returns the list of violated invariants.
std::vector<std::string> certificate_violations(const TwistCertificate& cert, const EllipticCurve& E);

}  // namespace iwk
