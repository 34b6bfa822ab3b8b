#pragma once

// Growth classes a_n = mu_hat p^n + lambda_hat n + O(1) and the comparisons
// between them: class-number growth from Iwasawa invariants, Mordell-Weil
// lower bounds and Phi_i transfer between finite levels.

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iwk/zpmod.hpp"

namespace iwk {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& q);

struct GrowthClass {
  std::int64_t p;
  Rational mu_hat;
  Rational lambda_hat;
  std::string label;

  /// Rejects negative mu_hat and mu_hat denominators other than 1 or 2.
  GrowthClass(std::int64_t prime, Rational mu, Rational lambda, std::string provenance = {});
};

enum class Relation { Equivalent, ADominates, BDominates };

std::string to_string(Relation r);

/// Lexicographic in (mu_hat, lambda_hat): p^n outgrows every multiple of n.
Relation compare(const GrowthClass& a, const GrowthClass& b);

struct IwasawaInvariants {
  std::int64_t p;
  std::optional<DeltaCharacter> character;  // nullopt: sum over all characters
  unsigned mu = 0;
  unsigned lambda = 0;
  std::string source;
};

/// (2 mu, 2 lambda).
GrowthClass class_number_growth(const IwasawaInvariants& inv);

struct MordellWeilBound {
  std::int64_t lambda_lower;  // r_m - phi(p^m), possibly negative
  GrowthClass growth_lower;   // (0, 2 max(lambda_lower, 0))
  bool clamped;
};

/// phi(p^0) = 1 and phi(p^m) = (p-1) p^(m-1).
MordellWeilBound mordell_weil_bound(std::int64_t rank, unsigned m, std::int64_t p);

struct TransferReport {
  unsigned index;
  std::int64_t bound;
  std::vector<std::optional<std::int64_t>> deviations;  // nullopt where either side is infinite
  std::vector<std::size_t> failures;                    // levels with |deviation| > bound
  bool passed() const { return failures.empty(); }
};

/// Compares Phi_i(S_n (+) S_n) with Phi_i(C_n) along the window.
TransferReport phi_i_transfer(const std::vector<FgZpModule>& selmer_side, const std::vector<FgZpModule>& class_side,
                              unsigned i, std::int64_t bound);

/// A growth coefficient printed in a published worked example.
struct PublishedGrowth {
  std::string curve_label;
  std::string curve_literal;  // minimal model "a1,a2,a3,a4,a6"
  std::int64_t p;
  unsigned character_index;
  Rational mu_hat;
  Rational lambda_hat;
  std::string note;
};

const std::vector<PublishedGrowth>& published_growth_table();

struct GrowthDiscrepancy {
  PublishedGrowth published;
  GrowthClass computed;
};

/// Finds the published entry for (minimal model, p, character) and reports it
/// when its coefficients differ from the computed class.
std::optional<GrowthDiscrepancy> check_published_growth(const std::string& curve_literal, unsigned character_index,
                                                        const GrowthClass& computed);

}  // namespace iwk
