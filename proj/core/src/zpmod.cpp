#include "iwk/zpmod.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "iwk/errors.hpp"

namespace iwk {

// ---- FgZpModule -------------------------------------------------------------

FgZpModule::FgZpModule(std::int64_t p, unsigned free_rank, std::vector<unsigned> exponents)
    : p_(p), free_rank_(free_rank), exponents_(std::move(exponents)) {
  if (!is_prime(p)) throw std::invalid_argument("FgZpModule: p must be prime");
  std::erase(exponents_, 0U);
  std::sort(exponents_.begin(), exponents_.end(), std::greater<>());
}

Valuation FgZpModule::order_valuation() const {
  if (free_rank_ > 0) return Valuation::infinity();
  return Valuation(std::accumulate(exponents_.begin(), exponents_.end(), 0U));
}

std::string to_literal(const FgZpModule& m) {
  std::ostringstream os;
  os << m.prime() << ':';
  for (std::size_t k = 0; k < m.exponents().size(); ++k) os << (k ? "," : "") << m.exponents()[k];
  os << '#' << m.free_rank();
  return os.str();
}

// ---- Presentation -----------------------------------------------------------

Presentation::Presentation(std::int64_t p, unsigned precision, std::size_t rows, std::size_t cols)
    : ring_(p, precision), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

Presentation::Presentation(std::int64_t p, unsigned precision, std::size_t rows, std::size_t cols,
                           const std::vector<BigInt>& row_major)
    : Presentation(p, precision, rows, cols) {
  if (row_major.size() != rows * cols) throw std::invalid_argument("Presentation: entry count mismatch");
  for (std::size_t k = 0; k < row_major.size(); ++k) entries_[k] = ring_.reduce(row_major[k]);
}

void Presentation::set(std::size_t r, std::size_t c, const BigInt& value) {
  entries_.at(r * cols_ + c) = ring_.reduce(value);
}

void Presentation::set(std::size_t r, std::size_t c, std::int64_t value) {
  entries_.at(r * cols_ + c) = ring_.reduce(value);
}

DeltaCharacter::DeltaCharacter(std::int64_t prime, unsigned k) : p(prime), index(k) {
  if (prime < 3 || !is_prime(prime)) throw std::invalid_argument("DeltaCharacter: p must be an odd prime");
  if (k > static_cast<unsigned>(prime - 2)) throw std::invalid_argument("DeltaCharacter: index out of range");
}

// ---- exact integer linear algebra -------------------------------------------

namespace {

using IntMatrix = std::vector<std::vector<BigInt>>;

// Fraction-free elimination; returns the rank and leaves `a` in echelon form.
std::size_t bareiss_rank(IntMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return 0;
  const std::size_t m = a[0].size();
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m && r < n; ++c) {
    std::size_t piv = r;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) continue;
    std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < m; ++j) {
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

BigInt determinant(IntMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(a[piv], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

IntMatrix lift(const Presentation& P) {
  IntMatrix a(P.rows(), std::vector<BigInt>(P.cols()));
  for (std::size_t r = 0; r < P.rows(); ++r) {
    for (std::size_t c = 0; c < P.cols(); ++c) a[r][c] = BigInt(static_cast<long>(P.at(r, c)));
  }
  return a;
}

ResidueMatrix identity(std::size_t n) {
  ResidueMatrix m{n, n, std::vector<std::int64_t>(n * n, 0)};
  for (std::size_t k = 0; k < n; ++k) m(k, k) = 1;
  return m;
}

struct Elimination {
  std::vector<unsigned> pivots;  // valuations of the nonzero pivots, in order
  ResidueMatrix left;
  ResidueMatrix right;
};

// Minimal-valuation pivoting over Z/p^N. Stops at the first all-zero block.
Elimination eliminate(const Presentation& P) {
  const ResidueRing& R = P.ring();
  const std::size_t n = P.rows();
  const std::size_t m = P.cols();
  ResidueMatrix a{n, m, P.entries()};
  Elimination out{{}, identity(n), identity(m)};
  ResidueMatrix& U = out.left;
  ResidueMatrix& V = out.right;
  const std::size_t steps = std::min(n, m);
  for (std::size_t t = 0; t < steps; ++t) {
    unsigned best = R.precision();
    std::size_t br = t;
    std::size_t bc = t;
    for (std::size_t r = t; r < n && best > 0; ++r) {
      for (std::size_t c = t; c < m; ++c) {
        if (a(r, c) == 0) continue;
        unsigned v = R.valuation(a(r, c));
        if (v < best) {
          best = v;
          br = r;
          bc = c;
          if (v == 0) break;
        }
      }
    }
    if (best == R.precision()) break;
    if (br != t) {
      for (std::size_t c = 0; c < m; ++c) std::swap(a(br, c), a(t, c));
      for (std::size_t c = 0; c < n; ++c) std::swap(U(br, c), U(t, c));
    }
    if (bc != t) {
      for (std::size_t r = 0; r < n; ++r) std::swap(a(r, bc), a(r, t));
      for (std::size_t r = 0; r < m; ++r) std::swap(V(r, bc), V(r, t));
    }
    const std::int64_t pv = R.prime_power(best);
    const std::int64_t unit_inv = R.inverse(a(t, t) / pv);
    // normalise the pivot to p^best
    for (std::size_t c = 0; c < m; ++c) a(t, c) = R.mul(a(t, c), unit_inv);
    for (std::size_t c = 0; c < n; ++c) U(t, c) = R.mul(U(t, c), unit_inv);
    for (std::size_t r = t + 1; r < n; ++r) {
      if (a(r, t) == 0) continue;
      const std::int64_t f = a(r, t) / pv;
      for (std::size_t c = t; c < m; ++c) a(r, c) = R.sub(a(r, c), R.mul(f, a(t, c)));
      for (std::size_t c = 0; c < n; ++c) U(r, c) = R.sub(U(r, c), R.mul(f, U(t, c)));
    }
    for (std::size_t c = t + 1; c < m; ++c) {
      if (a(t, c) == 0) continue;
      const std::int64_t f = a(t, c) / pv;
      a(t, c) = 0;
      for (std::size_t r = 0; r < m; ++r) V(r, c) = R.sub(V(r, c), R.mul(f, V(r, t)));
    }
    out.pivots.push_back(best);
  }
  return out;
}

}  // namespace

// ---- Smith form and cokernels -----------------------------------------------

SmithForm smith_normal_form(const Presentation& P) {
  Elimination e = eliminate(P);
  const std::size_t square = std::min(P.rows(), P.cols());
  if (e.pivots.size() < square && bareiss_rank(lift(P)) > e.pivots.size()) {
    throw PrecisionExhausted("smith_normal_form: an elementary divisor has valuation >= precision " +
                             std::to_string(P.precision()));
  }
  SmithForm out;
  out.diagonal.assign(P.rows(), Valuation::infinity());
  for (std::size_t k = 0; k < e.pivots.size(); ++k) out.diagonal[k] = Valuation(e.pivots[k]);
  out.left = std::move(e.left);
  out.right = std::move(e.right);
  return out;
}

FgZpModule module_from_presentation(const Presentation& P) {
  SmithForm s = smith_normal_form(P);
  unsigned free_rank = 0;
  std::vector<unsigned> exps;
  for (const auto& v : s.diagonal) {
    if (v.is_infinite()) ++free_rank;
    else exps.push_back(v.value());
  }
  return {P.prime(), free_rank, std::move(exps)};
}

FgZpModule module_over_residue_ring(const Presentation& P) {
  Elimination e = eliminate(P);
  std::vector<unsigned> exps(e.pivots.begin(), e.pivots.end());
  exps.resize(P.rows(), P.precision());
  return {P.prime(), 0, std::move(exps)};
}

Presentation diagonal_presentation(const FgZpModule& M, unsigned precision) {
  const auto& e = M.exponents();
  const std::size_t s = e.size();
  Presentation P(M.prime(), precision, s + M.free_rank(), s);
  for (std::size_t j = 0; j < s; ++j) {
    if (e[j] >= precision) {
      throw PrecisionExhausted("diagonal_presentation: exponent " + std::to_string(e[j]) +
                               " not representable at precision " + std::to_string(precision));
    }
    P.set(j, j, P.ring().prime_power(e[j]));
  }
  return P;
}

// ---- Fitting ideals ---------------------------------------------------------

FittingIdeal fitting_ideal(const FgZpModule& M, unsigned i) {
  const unsigned r = M.free_rank();
  const auto& e = M.exponents();
  if (i < r) return {Valuation::infinity()};
  unsigned total = 0;
  for (std::size_t j = i - r; j < e.size(); ++j) total += e[j];
  return {Valuation(total)};
}

Valuation phi(const FgZpModule& M, unsigned i) { return fitting_ideal(M, i).generator_valuation; }

namespace {

unsigned exponent_sum(const std::vector<unsigned>& e) { return std::accumulate(e.begin(), e.end(), 0U); }

// ord_p of M / <columns>, M = (+) Z/p^e_j, columns given as coordinate vectors.
unsigned quotient_order(std::int64_t p, const std::vector<unsigned>& e,
                        const std::vector<std::vector<std::int64_t>>& columns) {
  if (e.empty()) return 0;
  const unsigned N = e.front() + 1;
  Presentation P(p, N, e.size(), e.size() + columns.size());
  for (std::size_t j = 0; j < e.size(); ++j) P.set(j, j, P.ring().prime_power(e[j]));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (std::size_t j = 0; j < e.size(); ++j) P.set(j, e.size() + c, columns[c][j]);
  }
  return exponent_sum(module_over_residue_ring(P).exponents());
}

Valuation phi_exhaustive(const FgZpModule& M, unsigned i, const EnumerationBudget& budget) {
  const auto& e = M.exponents();
  const std::int64_t p = M.prime();
  const unsigned bits = i * exponent_sum(e);
  long double tuples = 1;
  for (unsigned k = 0; k < bits; ++k) tuples *= static_cast<long double>(p);
  if (tuples > static_cast<long double>(budget.max_tuples)) {
    throw BudgetExceeded("phi_bruteforce: #M^i exceeds the enumeration budget");
  }
  std::vector<std::int64_t> moduli;
  for (unsigned k = 0; k < i; ++k) {
    for (unsigned ej : e) {
      std::int64_t q = 1;
      for (unsigned t = 0; t < ej; ++t) q *= p;
      moduli.push_back(q);
    }
  }
  std::vector<std::int64_t> digits(moduli.size(), 0);
  std::vector<std::vector<std::int64_t>> cols(i, std::vector<std::int64_t>(e.size(), 0));
  unsigned best = exponent_sum(e);
  while (true) {
    for (unsigned k = 0; k < i; ++k) {
      for (std::size_t j = 0; j < e.size(); ++j) cols[k][j] = digits[k * e.size() + j];
    }
    best = std::min(best, quotient_order(p, e, cols));
    if (best == 0) break;
    std::size_t pos = 0;
    while (pos < digits.size() && ++digits[pos] == moduli[pos]) digits[pos++] = 0;
    if (pos == digits.size()) break;
  }
  return Valuation(best);
}

class OrbitSearch {
 public:
  OrbitSearch(std::int64_t p, std::uint64_t max_states) : p_(p), max_states_(max_states) {}

  unsigned run(const std::vector<unsigned>& e, unsigned i) {
    if (i == 0 || e.empty()) return exponent_sum(e);
    auto key = std::make_pair(e, i);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (memo_.size() >= max_states_) throw BudgetExceeded("phi_bruteforce: orbit enumeration budget exceeded");
    // Up to the unit action on each cyclic factor an element is (p^v_1, ..., p^v_s), 0 <= v_j <= e_j.
    std::vector<unsigned> v(e.size(), 0);
    unsigned best = exponent_sum(e);
    const unsigned N = e.front() + 1;
    while (true) {
      Presentation P(p_, N, e.size(), e.size() + 1);
      for (std::size_t j = 0; j < e.size(); ++j) {
        P.set(j, j, P.ring().prime_power(e[j]));
        P.set(j, e.size(), v[j] >= e[j] ? 0 : P.ring().prime_power(v[j]));
      }
      FgZpModule q = module_over_residue_ring(P);
      best = std::min(best, run(q.exponents(), i - 1));
      if (best == 0) break;
      std::size_t pos = 0;
      while (pos < v.size() && ++v[pos] > e[pos]) v[pos++] = 0;
      if (pos == v.size()) break;
    }
    memo_.emplace(std::move(key), best);
    return best;
  }

 private:
  std::int64_t p_;
  std::uint64_t max_states_;
  std::map<std::pair<std::vector<unsigned>, unsigned>, unsigned> memo_;
};

}  // namespace

Valuation phi_bruteforce(const FgZpModule& M, unsigned i, Enumeration mode, const EnumerationBudget& budget) {
  if (!M.is_torsion()) throw std::invalid_argument("phi_bruteforce: module must be torsion");
  if (i > budget.max_index) throw BudgetExceeded("phi_bruteforce: index above the enumeration budget");
  if (i == 0 || M.is_zero()) return M.order_valuation();
  if (mode == Enumeration::Exhaustive) return phi_exhaustive(M, i, budget);
  OrbitSearch search(M.prime(), budget.max_tuples);
  return Valuation(search.run(M.exponents(), i));
}

FittingIdeal fitting_from_minors(const Presentation& P, unsigned i) {
  const std::size_t n = P.rows();
  const std::size_t m = P.cols();
  if (i >= n) return {Valuation(0)};
  if (n > 6) throw BudgetExceeded("fitting_from_minors: more than six generators");
  const std::size_t k = n - i;
  if (k > m) return {Valuation::infinity()};

  const IntMatrix a = lift(P);
  const BigInt p(static_cast<long>(P.prime()));
  Valuation best = Valuation::infinity();

  std::vector<bool> row_mask(n, false);
  std::fill(row_mask.begin(), row_mask.begin() + static_cast<long>(k), true);
  std::vector<bool> col_mask(m, false);
  std::uint64_t visited = 0;
  do {
    std::vector<std::size_t> rows;
    for (std::size_t r = 0; r < n; ++r) {
      if (row_mask[r]) rows.push_back(r);
    }
    std::fill(col_mask.begin(), col_mask.end(), false);
    std::fill(col_mask.begin(), col_mask.begin() + static_cast<long>(k), true);
    do {
      if (++visited > 2'000'000) throw BudgetExceeded("fitting_from_minors: too many minors");
      IntMatrix sub(k, std::vector<BigInt>(k));
      std::size_t cc = 0;
      for (std::size_t c = 0; c < m; ++c) {
        if (!col_mask[c]) continue;
        for (std::size_t rr = 0; rr < k; ++rr) sub[rr][cc] = a[rows[rr]][c];
        ++cc;
      }
      best = std::min(best, ord_p(determinant(std::move(sub)), p));
      if (best == Valuation(0)) return {best};
    } while (std::prev_permutation(col_mask.begin(), col_mask.end()));
  } while (std::prev_permutation(row_mask.begin(), row_mask.end()));
  return {best};
}

// ---- constructions ----------------------------------------------------------

FgZpModule dual(const FgZpModule& M) { return M; }

FgZpModule direct_sum(const FgZpModule& a, const FgZpModule& b) {
  if (a.prime() != b.prime()) throw std::invalid_argument("direct_sum: primes differ");
  std::vector<unsigned> e = a.exponents();
  e.insert(e.end(), b.exponents().begin(), b.exponents().end());
  return {a.prime(), a.free_rank() + b.free_rank(), std::move(e)};
}

SubquotientReport quotient_by_submodule_order_check(const FgZpModule& M, const FgZpModule& N,
                                                    std::vector<std::size_t> targets) {
  if (M.prime() != N.prime()) throw std::invalid_argument("quotient_by_submodule_order_check: primes differ");
  if (N.free_rank() > M.free_rank()) throw NotASubmodule("free rank of N exceeds that of M");
  const auto& f = N.exponents();
  if (targets.empty()) {
    targets.resize(f.size());
    std::iota(targets.begin(), targets.end(), std::size_t{0});
  }
  if (targets.size() != f.size()) throw std::invalid_argument("quotient_by_submodule_order_check: one target per summand of N");
  std::vector<unsigned> e = M.exponents();
  std::vector<bool> used(e.size(), false);
  for (std::size_t k = 0; k < f.size(); ++k) {
    const std::size_t t = targets[k];
    if (t >= e.size() || used[t]) throw NotASubmodule("no free cyclic factor of M to receive Z/p^" + std::to_string(f[k]));
    if (f[k] > e[t]) {
      throw NotASubmodule("Z/p^" + std::to_string(f[k]) + " does not embed in Z/p^" + std::to_string(e[t]));
    }
    used[t] = true;
  }
  for (std::size_t k = 0; k < f.size(); ++k) e[targets[k]] -= f[k];

  SubquotientReport rep{FgZpModule(M.prime(), M.free_rank() - N.free_rank(), std::move(e)), {}, {}, true};
  const unsigned top = M.free_rank() + static_cast<unsigned>(M.torsion_count());
  for (unsigned i = 0; i <= top; ++i) {
    rep.phi_module.push_back(phi(M, i));
    rep.phi_quotient.push_back(phi(rep.quotient, i));
    if (rep.phi_module.back() < rep.phi_quotient.back()) rep.containment_holds = false;
  }
  return rep;
}

// ---- group-ring presentations -----------------------------------------------

GroupRingPresentation::GroupRingPresentation(std::int64_t p, unsigned precision, std::size_t rows, std::size_t cols)
    : ring_(p, precision), rows_(rows), cols_(cols), generator_(0) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("GroupRingPresentation: p must be an odd prime");
  generator_ = primitive_root(p);
  entries_.assign(rows * cols, std::vector<std::int64_t>(static_cast<std::size_t>(p - 1), 0));
}

void GroupRingPresentation::set_entry(std::size_t r, std::size_t c, std::vector<std::int64_t> coefficients) {
  if (coefficients.size() != group_order()) throw std::invalid_argument("set_entry: need p-1 coefficients");
  for (auto& x : coefficients) x = ring_.reduce(x);
  entries_.at(r * cols_ + c) = std::move(coefficients);
}

Presentation delta_decompose(const GroupRingPresentation& P, const DeltaCharacter& chi) {
  if (chi.p != P.prime()) throw std::invalid_argument("delta_decompose: character for a different prime");
  const ResidueRing& R = P.ring();
  const std::int64_t w = teichmuller(P.generator(), P.prime(), P.precision()).value();
  const std::int64_t chi_g = R.pow(w, chi.index);
  const std::size_t d = P.group_order();
  std::vector<std::int64_t> powers(d, 1);
  for (std::size_t j = 1; j < d; ++j) powers[j] = R.mul(powers[j - 1], chi_g);

  Presentation out(P.prime(), P.precision(), P.rows(), P.cols());
  for (std::size_t r = 0; r < P.rows(); ++r) {
    for (std::size_t c = 0; c < P.cols(); ++c) {
      const auto& x = P.entry(r, c);
      std::int64_t v = 0;
      for (std::size_t j = 0; j < d; ++j) v = R.add(v, R.mul(x[j], powers[j]));
      out.set(r, c, v);
    }
  }
  return out;
}

Presentation underlying_presentation(const GroupRingPresentation& P) {
  const std::size_t d = P.group_order();
  Presentation out(P.prime(), P.precision(), P.rows() * d, P.cols() * d);
  for (std::size_t r = 0; r < P.rows(); ++r) {
    for (std::size_t c = 0; c < P.cols(); ++c) {
      const auto& x = P.entry(r, c);
      for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t j = 0; j < d; ++j) out.set(r * d + k, c * d + j, x[(k + d - j) % d]);
      }
    }
  }
  return out;
}

}  // namespace iwk
