#include "iwk/growth.hpp"

#include <cstdlib>
#include <stdexcept>

namespace iwk {

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

GrowthClass::GrowthClass(std::int64_t prime, Rational mu, Rational lambda, std::string provenance)
    : p(prime), mu_hat(mu), lambda_hat(lambda), label(std::move(provenance)) {
  if (mu_hat < Rational(0)) throw std::invalid_argument("GrowthClass: mu_hat must be non-negative");
  if (mu_hat.denominator() != 1 && mu_hat.denominator() != 2) {
    throw std::invalid_argument("GrowthClass: mu_hat denominator must be 1 or 2");
  }
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Equivalent: return "EQUIVALENT";
    case Relation::ADominates: return "A_DOMINATES";
    case Relation::BDominates: return "B_DOMINATES";
  }
  return "?";
}

Relation compare(const GrowthClass& a, const GrowthClass& b) {
  if (a.p != b.p) throw std::invalid_argument("compare: growth classes for different primes");
  if (a.mu_hat != b.mu_hat) return a.mu_hat > b.mu_hat ? Relation::ADominates : Relation::BDominates;
  if (a.lambda_hat != b.lambda_hat) return a.lambda_hat > b.lambda_hat ? Relation::ADominates : Relation::BDominates;
  return Relation::Equivalent;
}

GrowthClass class_number_growth(const IwasawaInvariants& inv) {
  std::string label = "class number growth";
  if (!inv.source.empty()) label += " from " + inv.source;
  return {inv.p, Rational(2 * static_cast<std::int64_t>(inv.mu)), Rational(2 * static_cast<std::int64_t>(inv.lambda)),
          std::move(label)};
}

MordellWeilBound mordell_weil_bound(std::int64_t rank, unsigned m, std::int64_t p) {
  if (rank < 0) throw std::invalid_argument("mordell_weil_bound: rank must be non-negative");
  std::int64_t phi_pm = 1;
  if (m >= 1) {
    phi_pm = p - 1;
    for (unsigned k = 1; k < m; ++k) phi_pm *= p;
  }
  const std::int64_t lower = rank - phi_pm;
  const bool clamped = lower < 0;
  GrowthClass g(p, Rational(0), Rational(2 * (clamped ? 0 : lower)),
                clamped ? "vacuous Mordell-Weil bound (rank below phi(p^m))" : "Mordell-Weil lower bound");
  return {lower, std::move(g), clamped};
}

TransferReport phi_i_transfer(const std::vector<FgZpModule>& selmer_side, const std::vector<FgZpModule>& class_side,
                              unsigned i, std::int64_t bound) {
  if (selmer_side.size() != class_side.size()) throw std::invalid_argument("phi_i_transfer: windows differ in length");
  TransferReport rep{i, bound, {}, {}};
  for (std::size_t n = 0; n < selmer_side.size(); ++n) {
    const Valuation a = phi(direct_sum(selmer_side[n], selmer_side[n]), i);
    const Valuation b = phi(class_side[n], i);
    if (a.is_infinite() || b.is_infinite()) {
      rep.deviations.emplace_back(std::nullopt);
      if (a != b) rep.failures.push_back(n);
      continue;
    }
    const std::int64_t d = static_cast<std::int64_t>(a.value()) - static_cast<std::int64_t>(b.value());
    rep.deviations.emplace_back(d);
    if (std::llabs(d) > bound) rep.failures.push_back(n);
  }
  return rep;
}

const std::vector<PublishedGrowth>& published_growth_table() {
  static const std::vector<PublishedGrowth> table{
      {"5077.a1", "0,0,1,-7,6", 7, 0, Rational(0), Rational(2),
       "worked example prints h_n ~ 2n for the trivial character alongside mu = 0, lambda = 2"},
  };
  return table;
}

std::optional<GrowthDiscrepancy> check_published_growth(const std::string& curve_literal, unsigned character_index,
                                                        const GrowthClass& computed) {
  for (const auto& entry : published_growth_table()) {
    if (entry.curve_literal != curve_literal || entry.p != computed.p || entry.character_index != character_index) continue;
    if (entry.mu_hat != computed.mu_hat || entry.lambda_hat != computed.lambda_hat) {
      return GrowthDiscrepancy{entry, computed};
    }
  }
  return std::nullopt;
}

}  // namespace iwk
