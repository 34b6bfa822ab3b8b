#include "iwk/lambda.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "iwk/errors.hpp"
#include "iwk/zpmod.hpp"

namespace iwk {

DistinguishedPoly::DistinguishedPoly(std::int64_t p, std::vector<BigInt> lower_coefficients)
    : p_(p), lower_(std::move(lower_coefficients)) {
  if (!is_prime(p)) throw std::invalid_argument("DistinguishedPoly: p must be prime");
  const BigInt P(static_cast<long>(p));
  for (const auto& c : lower_) {
    if (c % P != 0) throw std::invalid_argument("DistinguishedPoly: coefficient " + c.get_str() + " not divisible by p");
  }
}

DistinguishedPoly DistinguishedPoly::from_poly(std::int64_t p, const IntPoly& f) {
  if (f.is_zero() || f.leading() != 1) throw std::invalid_argument("DistinguishedPoly: polynomial must be monic");
  std::vector<BigInt> lower(f.coefficients().begin(), f.coefficients().end() - 1);
  return {p, std::move(lower)};
}

IntPoly DistinguishedPoly::as_poly() const {
  std::vector<BigInt> c = lower_;
  c.emplace_back(1);
  return IntPoly(std::move(c));
}

unsigned ElementaryLambdaModule::lambda() const {
  unsigned total = 0;
  for (const auto& f : factors) total += f.multiplicity * f.poly.degree();
  return total;
}

IntPoly ElementaryLambdaModule::characteristic_polynomial() const {
  BigInt pm;
  mpz_ui_pow_ui(pm.get_mpz_t(), static_cast<unsigned long>(p), mu);
  IntPoly F = IntPoly::constant(pm);
  for (const auto& f : factors) F = F * f.poly.as_poly().pow(f.multiplicity);
  return F;
}

// ---- truncated series -------------------------------------------------------

TruncatedSeries::TruncatedSeries(std::int64_t p, unsigned p_precision, std::vector<std::int64_t> coefficients)
    : ring_(p, p_precision), coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) throw std::invalid_argument("TruncatedSeries: T-precision must be at least 1");
  for (auto& c : coeffs_) c = ring_.reduce(c);
}

TruncatedSeries TruncatedSeries::from_poly(std::int64_t p, unsigned p_precision, unsigned t_precision,
                                           const IntPoly& f) {
  ResidueRing R(p, p_precision);
  std::vector<std::int64_t> c(t_precision, 0);
  for (unsigned k = 0; k < t_precision; ++k) c[k] = R.reduce(f.coeff(k));
  return {p, p_precision, std::move(c)};
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  if (prime() != o.prime()) throw std::invalid_argument("TruncatedSeries: primes differ");
  ResidueRing R(prime(), std::min(p_precision(), o.p_precision()));
  const std::size_t D = coeffs_.size();
  std::vector<std::int64_t> out(D, 0);
  for (std::size_t i = 0; i < D; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; i + j < D && j < o.coeffs_.size(); ++j) {
      out[i + j] = R.add(out[i + j], R.mul(R.reduce(coeffs_[i]), R.reduce(o.coeffs_[j])));
    }
  }
  return {prime(), R.precision(), std::move(out)};
}

// ---- Weierstrass preparation ------------------------------------------------

namespace {

using Coeffs = std::vector<std::int64_t>;

Coeffs mul_trunc(const ResidueRing& R, const Coeffs& a, const Coeffs& b, std::size_t len) {
  Coeffs out(len, 0);
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] = R.add(out[i + j], R.mul(a[i], b[j]));
  }
  return out;
}

Coeffs inverse_trunc(const ResidueRing& R, const Coeffs& u, std::size_t len) {
  Coeffs inv(len, 0);
  if (len == 0) return inv;
  const std::int64_t u0 = R.inverse(u[0]);
  inv[0] = u0;
  for (std::size_t k = 1; k < len; ++k) {
    std::int64_t acc = 0;
    for (std::size_t j = 1; j <= k && j < u.size(); ++j) acc = R.add(acc, R.mul(u[j], inv[k - j]));
    inv[k] = R.mul(R.neg(acc), u0);
  }
  return inv;
}

}  // namespace

WeierstrassResult weierstrass_prepare(const TruncatedSeries& s) {
  const std::int64_t p = s.prime();
  const unsigned N = s.p_precision();
  const std::size_t D = s.t_precision();
  const ResidueRing& RN = s.ring();

  unsigned mu = N;
  for (auto c : s.coefficients()) {
    if (c != 0) mu = std::min(mu, RN.valuation(c));
  }
  if (mu == N) throw PrecisionExhausted("weierstrass_prepare: series vanishes modulo p^N");

  const unsigned Np = N - mu;
  const ResidueRing R(p, Np);
  const std::int64_t pmu = RN.prime_power(mu);
  Coeffs sp(D);
  for (std::size_t k = 0; k < D; ++k) sp[k] = s.coeff(k) / pmu;

  std::size_t lambda = 0;
  while (lambda < D && sp[lambda] % p == 0) ++lambda;
  if (lambda >= D) throw PrecisionExhausted("weierstrass_prepare: lambda not below the T-precision");

  const std::size_t ulen = D - lambda;
  Coeffs u(D, 0);
  for (std::size_t k = 0; k < ulen; ++k) u[k] = sp[k + lambda];
  Coeffs low(sp.begin(), sp.begin() + static_cast<long>(lambda));
  Coeffs a(lambda, 0);

  // s' = (T^lambda + a) u; a = low_lambda(s' u^-1), then u_k = s'_{k+lambda} - (a u)_{k+lambda}.
  const unsigned max_iter = Np + static_cast<unsigned>(D) + 5;
  bool stable = false;
  for (unsigned it = 0; it < max_iter && !stable; ++it) {
    Coeffs a_next = mul_trunc(R, low, inverse_trunc(R, u, lambda), lambda);
    Coeffs au = mul_trunc(R, a_next, u, D);
    Coeffs u_next(D, 0);
    for (std::size_t k = 0; k < ulen; ++k) u_next[k] = R.sub(sp[k + lambda], au[k + lambda]);
    stable = (a_next == a && u_next == u);
    a = std::move(a_next);
    u = std::move(u_next);
  }

  std::vector<BigInt> fl(lambda);
  for (std::size_t k = 0; k < lambda; ++k) fl[k] = BigInt(static_cast<long>(a[k]));
  WeierstrassResult out{mu, DistinguishedPoly(p, std::move(fl)), TruncatedSeries(p, Np, u)};

  // p^mu f u against s at (p^N, T^D)
  Coeffs fc(lambda + 1);
  std::copy(a.begin(), a.end(), fc.begin());
  fc[lambda] = 1;
  const Coeffs fu = mul_trunc(R, fc, u, D);
  for (std::size_t k = 0; k < D; ++k) {
    if (RN.mul(fu[k], pmu) != s.coeff(k)) {
      throw PostconditionFailed("weierstrass_prepare: re-multiplication does not reproduce the input");
    }
  }
  return out;
}

std::pair<unsigned, unsigned> mu_lambda(const ElementaryLambdaModule& M) { return {M.mu, M.lambda()}; }

IntPoly omega(unsigned m, std::int64_t p) {
  if (m == 0) throw std::invalid_argument("omega: level must be at least 1");
  BigInt e;
  mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p), m - 1);
  if (!e.fits_uint_p()) throw BudgetExceeded("omega: degree too large");
  const unsigned d = static_cast<unsigned>(e.get_ui());
  std::vector<BigInt> c(d + 1);
  BigInt binom = 1;
  for (unsigned k = 0; k <= d; ++k) {
    c[k] = binom;
    binom = binom * (d - k) / (k + 1);
  }
  c[0] = 0;
  return IntPoly(std::move(c));
}

// ---- coinvariants -----------------------------------------------------------

unsigned coinvariant_order(const ElementaryLambdaModule& M, unsigned m, unsigned n, const CoinvariantBudget& budget) {
  if (m == 0 || n == 0) throw std::invalid_argument("coinvariant_order: levels start at 1");
  const std::int64_t p = M.p;
  long double dim = 1;
  for (unsigned k = 1; k < m; ++k) dim *= static_cast<long double>(p);
  if (dim > static_cast<long double>(budget.max_dimension) || n > budget.max_p_power) {
    throw BudgetExceeded("coinvariant_order: ring Z/p^n[T]/(omega_m) above budget");
  }
  const std::size_t D = static_cast<std::size_t>(dim);
  const ResidueRing R(p, n);

  // (1+T)^D - 1 = T^D + ...; reduction uses T^D = -(lower part)
  const IntPoly w = omega(m, p);
  Coeffs wl(D);
  for (std::size_t k = 0; k < D; ++k) wl[k] = R.reduce(w.coeff(k));

  auto times_T = [&](const Coeffs& x) {
    Coeffs y(D, 0);
    const std::int64_t top = x[D - 1];
    for (std::size_t k = D - 1; k > 0; --k) y[k] = x[k - 1];
    y[0] = 0;
    if (top != 0) {
      for (std::size_t k = 0; k < D; ++k) y[k] = R.sub(y[k], R.mul(top, wl[k]));
    }
    return y;
  };

  // F mod (p^n, omega) by Horner
  const IntPoly F = M.characteristic_polynomial();
  Coeffs f(D, 0);
  for (int k = F.degree(); k >= 0; --k) {
    f = times_T(f);
    f[0] = R.add(f[0], R.reduce(F.coeff(static_cast<std::size_t>(k))));
  }

  Presentation P(p, n, D, D);
  Coeffs col = f;
  for (std::size_t j = 0; j < D; ++j) {
    for (std::size_t r = 0; r < D; ++r) P.set(r, j, col[r]);
    if (j + 1 < D) col = times_T(col);
  }
  const FgZpModule Q = module_over_residue_ring(P);
  return Q.order_valuation().value();
}

GrowthWindow growth_window_check(const ElementaryLambdaModule& M, const std::vector<unsigned>& levels,
                                 const CoinvariantBudget& budget) {
  GrowthWindow out;
  out.asserts_bounded = (M.mu == 0);
  const auto lambda = static_cast<std::int64_t>(M.lambda());
  for (unsigned n : levels) {
    const unsigned ord = coinvariant_order(M, n, n, budget);
    std::int64_t main = lambda * n;
    std::int64_t pn = 1;
    for (unsigned k = 0; k < n; ++k) pn *= M.p;
    main += static_cast<std::int64_t>(M.mu) * pn;
    const std::int64_t d = static_cast<std::int64_t>(ord) - main;
    out.levels.push_back(n);
    out.orders.push_back(ord);
    out.deviations.push_back(d);
    out.max_abs_deviation = std::max(out.max_abs_deviation, static_cast<std::int64_t>(std::llabs(d)));
  }
  for (std::size_t k = 2; k < out.deviations.size(); ++k) {
    if (out.deviations[k] != out.deviations[1]) out.tail_constant = false;
  }
  return out;
}

}  // namespace iwk
