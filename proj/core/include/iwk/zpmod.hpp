#pragma once

// Finitely generated Z_p-modules: structure-theorem normal form, Smith normal
// form over Z/p^N, higher Fitting ideals computed three independent ways, and
// the decomposition of Z/p^N[Delta]-modules into Delta-character components.

#include <cstdint>
#include <string>
#include <vector>

#include "iwk/padic.hpp"

namespace iwk {

/// Z_p^r (+) Z/p^e_1 (+) ... (+) Z/p^e_s with e_1 >= ... >= e_s >= 1.
class FgZpModule {
 public:
  /// Sorts the exponents and drops zeros (trivial summands).
  FgZpModule(std::int64_t p, unsigned free_rank, std::vector<unsigned> exponents);
  static FgZpModule zero(std::int64_t p) { return {p, 0, {}}; }

  std::int64_t prime() const { return p_; }
  unsigned free_rank() const { return free_rank_; }
  const std::vector<unsigned>& exponents() const { return exponents_; }
  std::size_t torsion_count() const { return exponents_.size(); }
  bool is_torsion() const { return free_rank_ == 0; }
  bool is_zero() const { return free_rank_ == 0 && exponents_.empty(); }
  /// ord_p(#M) for torsion M; infinity otherwise.
  Valuation order_valuation() const;

  friend bool operator==(const FgZpModule&, const FgZpModule&) = default;

 private:
  std::int64_t p_;
  unsigned free_rank_;
  std::vector<unsigned> exponents_;
};

std::string to_literal(const FgZpModule& m);  // "p:e1,e2#r"

/// Matrix of a presentation Z_p^m -> Z_p^n -> M -> 0: rows are the n
/// generators, columns the m relations. Entries are integers in [0, p^N) and
/// are taken as exact elements of Z_p.
class Presentation {
 public:
  Presentation(std::int64_t p, unsigned precision, std::size_t rows, std::size_t cols);
  Presentation(std::int64_t p, unsigned precision, std::size_t rows, std::size_t cols,
               const std::vector<BigInt>& row_major);

  std::int64_t prime() const { return ring_.prime(); }
  unsigned precision() const { return ring_.precision(); }
  const ResidueRing& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, const BigInt& value);
  void set(std::size_t r, std::size_t c, std::int64_t value);
  const std::vector<std::int64_t>& entries() const { return entries_; }

 private:
  ResidueRing ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::int64_t> entries_;
};

/// The ideal p^v Z_p; infinity encodes the zero ideal, 0 the unit ideal.
struct FittingIdeal {
  Valuation generator_valuation;

  bool is_zero_ideal() const { return generator_valuation.is_infinite(); }
  bool is_unit_ideal() const { return generator_valuation == Valuation(0); }
  friend bool operator==(const FittingIdeal&, const FittingIdeal&) = default;
};

/// chi = omega^index, omega the Teichmüller character of (Z/p)^x.
struct DeltaCharacter {
  std::int64_t p;
  unsigned index;

  DeltaCharacter(std::int64_t prime, unsigned k);
  bool is_trivial() const { return index == 0; }
  friend bool operator==(const DeltaCharacter&, const DeltaCharacter&) = default;
};

/// Square matrix over Z/p^N used for the Smith transforms.
struct ResidueMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> data;

  std::int64_t& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

struct SmithForm {
  /// One entry per generator slot (rows); non-decreasing. Slots beyond the
  /// number of relations, and pivots that are exactly zero, are infinite.
  std::vector<Valuation> diagonal;
  ResidueMatrix left;   // U, rows x rows
  ResidueMatrix right;  // V, cols x cols; U * A * V is diagonal mod p^N
};

/// Smith normal form by minimal-valuation pivoting over the local ring Z/p^N.
/// Throws PrecisionExhausted when a pivot vanishes modulo p^N although the
/// exact matrix has higher rank (a divisor of valuation >= N).
SmithForm smith_normal_form(const Presentation& P);

/// Cokernel of the presentation over Z_p.
FgZpModule module_from_presentation(const Presentation& P);

/// Cokernel of the presentation read as a module over the finite ring Z/p^N
/// (a zero diagonal entry contributes Z/p^N). Never throws on precision.
FgZpModule module_over_residue_ring(const Presentation& P);

/// Diagonal presentation diag(p^e_j) with a zero column block for the free part.
Presentation diagonal_presentation(const FgZpModule& M, unsigned precision);

FittingIdeal fitting_ideal(const FgZpModule& M, unsigned i);
Valuation phi(const FgZpModule& M, unsigned i);

struct EnumerationBudget {
  std::uint64_t max_tuples = 1'000'000;
  unsigned max_index = 3;
};

enum class Enumeration {
  /// Every i-tuple of elements of M.
  Exhaustive,
  /// First element up to the diagonal unit action on the cyclic summands,
  /// remaining i-1 elements enumerated recursively on the quotient.
  OrbitReduced,
};

/// min over (a_1..a_i) in M^i of ord_p #(M / <a_1..a_i>), each quotient order
/// measured by Smith form of the augmented presentation. Torsion M only.
Valuation phi_bruteforce(const FgZpModule& M, unsigned i,
                         Enumeration mode = Enumeration::Exhaustive,
                         const EnumerationBudget& budget = {});

/// Minimum valuation over all (n-i)x(n-i) minors, computed over Z from the
/// exact entries. Unit ideal when i >= n. At most six generators.
FittingIdeal fitting_from_minors(const Presentation& P, unsigned i);

/// Pontryagin dual; non-canonically isomorphic to M for torsion M.
FgZpModule dual(const FgZpModule& M);
FgZpModule direct_sum(const FgZpModule& a, const FgZpModule& b);

struct SubquotientReport {
  FgZpModule quotient;
  std::vector<Valuation> phi_module;    // Phi_i(M), i = 0..len-1
  std::vector<Valuation> phi_quotient;  // Phi_i(M/N)
  bool containment_holds = true;        // Phi_i(M) >= Phi_i(M/N) for all listed i
};

/// Embeds N into M summand-by-summand (N's k-th cyclic factor into M's
/// `targets[k]`-th one, free part into free part), forms M/N and compares Phi_i.
/// With empty `targets` the k-th summand of N goes to the k-th summand of M.
SubquotientReport quotient_by_submodule_order_check(const FgZpModule& M, const FgZpModule& N,
                                                    std::vector<std::size_t> targets = {});

/// Presentation over Z/p^N[Delta], Delta = (Z/p)^x cyclic of order p-1. Each
/// entry is a coefficient vector in the basis g^0..g^(p-2), g the least
/// primitive root modulo p.
class GroupRingPresentation {
 public:
  GroupRingPresentation(std::int64_t p, unsigned precision, std::size_t rows, std::size_t cols);

  std::int64_t prime() const { return ring_.prime(); }
  unsigned precision() const { return ring_.precision(); }
  const ResidueRing& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t group_order() const { return static_cast<std::size_t>(ring_.prime() - 1); }
  std::int64_t generator() const { return generator_; }

  const std::vector<std::int64_t>& entry(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  void set_entry(std::size_t r, std::size_t c, std::vector<std::int64_t> coefficients);

 private:
  ResidueRing ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::int64_t generator_;
  std::vector<std::vector<std::int64_t>> entries_;
};

/// Presentation of M_chi = M (x)_{Z_p[Delta]} Z_p(chi): every group-ring entry
/// is sent to its chi-value, i.e. the image of the idempotent e_chi.
Presentation delta_decompose(const GroupRingPresentation& P, const DeltaCharacter& chi);

/// The same module viewed over Z/p^N: each entry becomes its (p-1)x(p-1)
/// multiplication matrix on the group-ring basis.
Presentation underlying_presentation(const GroupRingPresentation& P);

}  // namespace iwk
