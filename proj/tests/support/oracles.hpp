#pragma once

// Slow reference computations written without the library's algorithms:
// exhaustive point counts, subgroup closures in finite abelian groups and
// exhaustive searches. Only meant for small inputs.

#include <array>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using BigInt = mpz_class;
using Coeffs = std::array<BigInt, 5>;  // a1, a2, a3, a4, a6

/// Number of projective points of the (possibly singular) model over F_ell.
std::int64_t count_points(const Coeffs& a, std::int64_t ell);
/// ell + 1 - count_points. At a bad prime of a minimal model this is
/// 1 (split node), -1 (non-split node) or 0 (cusp).
std::int64_t trace(const Coeffs& a, std::int64_t ell);

/// Euler's criterion, ell an odd prime.
int legendre(const BigInt& a, std::int64_t ell);
std::uint64_t order_mod(std::int64_t a, std::int64_t p);
/// Smallest x in [0, p^N) with x = a mod p and x^(p-1) = 1, by search.
std::int64_t teichmuller_search(std::int64_t a, std::int64_t p, unsigned N);

/// Size of the subgroup of prod Z/m_k generated by the vectors.
std::uint64_t span_size(const std::vector<std::int64_t>& moduli, const std::vector<std::vector<std::int64_t>>& gens);

/// min over i-tuples of log_p #(M / <tuple>) for M = prod Z/p^e_k.
unsigned phi_by_closure(const std::vector<unsigned>& exponents, std::int64_t p, unsigned i);

/// log_p of #((Z/p^N)^rows / column span) for a row-major matrix.
unsigned cokernel_valuation(const std::vector<std::int64_t>& entries, std::size_t rows, std::size_t cols,
                            std::int64_t p, unsigned N);

/// log_p # Z/p^n[T] / (F, (1+T)^(p^(m-1)) - 1), F given by integer coefficients
/// from the constant term up.
unsigned coinvariant_by_closure(const std::vector<std::int64_t>& F, std::int64_t p, unsigned m, unsigned n);

}  // namespace oracle
