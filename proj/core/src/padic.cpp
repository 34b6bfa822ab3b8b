#include "iwk/padic.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace iwk {

std::string to_string(const BigInt& x) { return x.get_str(); }

unsigned Valuation::value() const {
  if (!finite_) throw std::logic_error("Valuation::value() on infinity");
  return value_;
}

std::string Valuation::str() const { return finite_ ? std::to_string(value_) : "INFINITY"; }

std::ostream& operator<<(std::ostream& os, const Valuation& v) { return os << v.str(); }

// ---- ResidueRing -------------------------------------------------------------

ResidueRing::ResidueRing(std::int64_t p, unsigned precision) : p_(p), precision_(precision) {
  if (p < 2 || !is_prime(p)) throw std::invalid_argument("ResidueRing: p must be prime");
  if (precision < 1) throw std::invalid_argument("ResidueRing: precision must be >= 1");
  constexpr std::int64_t limit = std::int64_t{1} << 62;
  std::int64_t m = 1;
  for (unsigned i = 0; i < precision; ++i) {
    if (m > limit / p) throw std::overflow_error("ResidueRing: p^N exceeds 2^62");
    m *= p;
  }
  modulus_ = m;
}

std::int64_t ResidueRing::reduce(std::int64_t x) const {
  std::int64_t r = x % modulus_;
  return r < 0 ? r + modulus_ : r;
}

std::int64_t ResidueRing::reduce(const BigInt& x) const { return mod_floor(x, modulus_); }

std::int64_t ResidueRing::add(std::int64_t a, std::int64_t b) const {
  std::int64_t r = a + b;
  return r >= modulus_ ? r - modulus_ : r;
}

std::int64_t ResidueRing::sub(std::int64_t a, std::int64_t b) const {
  std::int64_t r = a - b;
  return r < 0 ? r + modulus_ : r;
}

std::int64_t ResidueRing::neg(std::int64_t a) const { return a == 0 ? 0 : modulus_ - a; }

std::int64_t ResidueRing::mul(std::int64_t a, std::int64_t b) const {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % modulus_);
}

std::int64_t ResidueRing::pow(std::int64_t a, std::uint64_t e) const {
  std::int64_t result = reduce(1);
  std::int64_t base = reduce(a);
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

std::int64_t ResidueRing::inverse(std::int64_t a) const {
  a = reduce(a);
  if (a % p_ == 0) throw std::domain_error("ResidueRing::inverse: not a unit");
  // extended Euclid over signed 128-bit to stay clear of overflow
  __int128 r0 = modulus_, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    __int128 q = r0 / r1;
    __int128 t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  __int128 inv = s0 % modulus_;
  if (inv < 0) inv += modulus_;
  return static_cast<std::int64_t>(inv);
}

unsigned ResidueRing::valuation(std::int64_t a) const {
  a = reduce(a);
  if (a == 0) return precision_;
  unsigned v = 0;
  while (a % p_ == 0) {
    a /= p_;
    ++v;
  }
  return v;
}

std::int64_t ResidueRing::prime_power(unsigned k) const {
  if (k >= precision_) return 0;
  std::int64_t r = 1;
  for (unsigned i = 0; i < k; ++i) r *= p_;
  return r;
}

// ---- PadicInt ----------------------------------------------------------------

PadicInt::PadicInt(std::int64_t p, unsigned precision, const BigInt& value)
    : p_(p), precision_(precision), value_(ResidueRing(p, precision).reduce(value)) {}

PadicInt::PadicInt(std::int64_t p, unsigned precision, std::int64_t reduced, bool)
    : p_(p), precision_(precision), value_(reduced) {}

std::int64_t PadicInt::modulus() const { return ResidueRing(p_, precision_).modulus(); }

Valuation PadicInt::valuation() const {
  if (value_ == 0) return Valuation::infinity();
  return Valuation(ResidueRing(p_, precision_).valuation(value_));
}

namespace {

ResidueRing common_ring(const PadicInt& a, const PadicInt& b) {
  if (a.prime() != b.prime()) throw std::invalid_argument("PadicInt: mismatched primes");
  return ResidueRing(a.prime(), std::min(a.precision(), b.precision()));
}

}  // namespace

PadicInt PadicInt::operator+(const PadicInt& o) const {
  ResidueRing R = common_ring(*this, o);
  return {p_, R.precision(), R.add(R.reduce(value_), R.reduce(o.value_)), true};
}

PadicInt PadicInt::operator-(const PadicInt& o) const {
  ResidueRing R = common_ring(*this, o);
  return {p_, R.precision(), R.sub(R.reduce(value_), R.reduce(o.value_)), true};
}

PadicInt PadicInt::operator*(const PadicInt& o) const {
  ResidueRing R = common_ring(*this, o);
  return {p_, R.precision(), R.mul(R.reduce(value_), R.reduce(o.value_)), true};
}

PadicInt PadicInt::operator-() const {
  ResidueRing R(p_, precision_);
  return {p_, precision_, R.neg(value_), true};
}

PadicInt PadicInt::pow(std::uint64_t e) const {
  ResidueRing R(p_, precision_);
  return {p_, precision_, R.pow(value_, e), true};
}

PadicInt PadicInt::truncate(unsigned precision) const {
  if (precision > precision_) throw std::invalid_argument("PadicInt::truncate cannot raise precision");
  return PadicInt(p_, precision, BigInt(static_cast<long>(value_)));
}

std::ostream& operator<<(std::ostream& os, const PadicInt& x) {
  return os << x.value() << " (mod " << x.prime() << "^" << x.precision() << ")";
}

// ---- valuations and symbols -----------------------------------------------------

Valuation ord_p(const BigInt& x, const BigInt& p) {
  if (p < 2) throw std::invalid_argument("ord_p: p must be >= 2");
  if (x == 0) return Valuation::infinity();
  BigInt r = abs(x);
  unsigned v = static_cast<unsigned>(mpz_remove(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t()));
  return Valuation(v);
}

int kronecker_symbol(const BigInt& a_in, const BigInt& n_in) {
  if (n_in == 0) throw std::invalid_argument("kronecker_symbol: n = 0");
  BigInt a = a_in;
  BigInt n = n_in;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  // strip factors of two from n: (a/2) = 0 if a even, else +1 for a = ±1 mod 8
  unsigned twos = 0;
  while (mpz_even_p(n.get_mpz_t())) {
    n /= 2;
    ++twos;
  }
  if (twos > 0) {
    if (mpz_even_p(a.get_mpz_t())) return 0;
    if (twos % 2 == 1) {
      unsigned long r = mpz_fdiv_ui(a.get_mpz_t(), 8);
      if (r == 3 || r == 5) result = -result;
    }
  }
  if (n == 1) return result;
  // Jacobi symbol (a/n) for odd n > 1
  a = a % n;
  if (a < 0) a += n;
  while (a != 0) {
    while (mpz_even_p(a.get_mpz_t())) {
      a /= 2;
      unsigned long r = mpz_fdiv_ui(n.get_mpz_t(), 8);
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(n.get_mpz_t(), 4) == 3) result = -result;
    a = a % n;
  }
  return n == 1 ? result : 0;
}

std::int64_t powmod(std::int64_t a, std::uint64_t e, std::int64_t m) {
  if (m == 1) return 0;
  __int128 result = 1;
  __int128 base = ((a % m) + m) % m;
  while (e > 0) {
    if (e & 1U) result = (result * base) % m;
    base = (base * base) % m;
    e >>= 1U;
  }
  return static_cast<std::int64_t>(result);
}

std::int64_t mod_floor(const BigInt& a, std::int64_t m) {
  if (m <= 0) throw std::invalid_argument("mod_floor: modulus must be positive");
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), BigInt(static_cast<long>(m)).get_mpz_t());
  return static_cast<std::int64_t>(r.get_si());
}

std::uint64_t multiplicative_order(const BigInt& a, std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("multiplicative_order: p must be prime");
  std::int64_t r = mod_floor(a, p);
  if (r == 0) throw std::invalid_argument("multiplicative_order: a = 0 mod p");
  std::uint64_t order = static_cast<std::uint64_t>(p - 1);
  for (const auto& [q, e] : factorize(BigInt(static_cast<long>(p - 1)))) {
    std::uint64_t qq = q.get_ui();
    for (unsigned i = 0; i < e; ++i) {
      if (powmod(r, order / qq, p) == 1) {
        order /= qq;
      } else {
        break;
      }
    }
  }
  return order;
}

PadicInt teichmuller(std::int64_t a, std::int64_t p, unsigned precision) {
  if (p == 2) throw std::invalid_argument("teichmuller: p must be odd");
  ResidueRing R(p, precision);
  if (a % p == 0) throw std::invalid_argument("teichmuller: a = 0 mod p");
  // Newton iteration on x^(p-1) - 1 = 0; each step doubles the correct digits
  std::int64_t x = R.reduce(((a % p) + p) % p);
  const std::int64_t pm1 = R.reduce(p - 1);
  for (unsigned correct = 1; correct < precision; correct *= 2) {
    std::int64_t fx = R.sub(R.pow(x, static_cast<std::uint64_t>(p - 1)), 1);
    std::int64_t dfx = R.mul(pm1, R.pow(x, static_cast<std::uint64_t>(p - 2)));
    x = R.sub(x, R.mul(fx, R.inverse(dfx)));
  }
  return PadicInt(p, precision, BigInt(static_cast<long>(x)));
}

namespace {

// square root modulo an odd prime (Tonelli-Shanks); requires a to be a nonzero residue
std::int64_t sqrt_mod_prime(std::int64_t a, std::int64_t p) {
  a %= p;
  if (p % 4 == 3) return powmod(a, static_cast<std::uint64_t>((p + 1) / 4), p);
  std::int64_t q = p - 1;
  unsigned s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  std::int64_t z = 2;
  while (powmod(z, static_cast<std::uint64_t>((p - 1) / 2), p) != p - 1) ++z;
  std::int64_t m = s;
  std::int64_t c = powmod(z, static_cast<std::uint64_t>(q), p);
  std::int64_t t = powmod(a, static_cast<std::uint64_t>(q), p);
  std::int64_t r = powmod(a, static_cast<std::uint64_t>((q + 1) / 2), p);
  while (t != 1) {
    std::int64_t i = 0;
    std::int64_t tt = t;
    while (tt != 1) {
      tt = static_cast<std::int64_t>(static_cast<__int128>(tt) * tt % p);
      ++i;
    }
    std::int64_t b = c;
    for (std::int64_t j = 0; j < m - i - 1; ++j) b = static_cast<std::int64_t>(static_cast<__int128>(b) * b % p);
    m = i;
    c = static_cast<std::int64_t>(static_cast<__int128>(b) * b % p);
    t = static_cast<std::int64_t>(static_cast<__int128>(t) * c % p);
    r = static_cast<std::int64_t>(static_cast<__int128>(r) * b % p);
  }
  return r;
}

}  // namespace

std::optional<PadicInt> hensel_sqrt(const BigInt& a, std::int64_t p, unsigned precision) {
  if (p == 2) throw std::invalid_argument("hensel_sqrt: p must be odd");
  ResidueRing R(p, precision);
  std::int64_t x = R.reduce(a);
  if (x == 0) return PadicInt(p, precision, BigInt(0));
  unsigned v = R.valuation(x);
  if (v % 2 == 1) return std::nullopt;
  // a = p^v * u with u a unit modulo p^(N-v); take y = p^(v/2) * sqrt(u)
  std::int64_t u = x / R.prime_power(v);
  ResidueRing Ru(p, precision - v);
  u = Ru.reduce(u);
  if (powmod(u % p, static_cast<std::uint64_t>((p - 1) / 2), p) != 1) return std::nullopt;
  std::int64_t y = sqrt_mod_prime(u % p, p);
  // Newton: y <- y - (y^2 - u) / (2y)
  for (unsigned correct = 1; correct < Ru.precision(); correct *= 2) {
    std::int64_t fy = Ru.sub(Ru.mul(y, y), u);
    y = Ru.sub(y, Ru.mul(fy, Ru.inverse(Ru.mul(2, y))));
  }
  std::int64_t root = R.mul(R.prime_power(v / 2), y);
  return PadicInt(p, precision, BigInt(static_cast<long>(root)));
}

// ---- primes and factorisation -------------------------------------------------------

bool is_prime(const BigInt& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = static_cast<std::uint64_t>(n - 1);
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  // deterministic for 64-bit inputs
  for (std::int64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::int64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = static_cast<std::int64_t>(static_cast<__int128>(x) * x % n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::int64_t next_prime(std::int64_t n) {
  std::int64_t c = n < 2 ? 2 : n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

std::int64_t primitive_root(std::int64_t p) {
  if (p == 2) return 1;
  if (!is_prime(p)) throw std::invalid_argument("primitive_root: p must be prime");
  auto factors = factorize(BigInt(static_cast<long>(p - 1)));
  for (std::int64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (const auto& [q, e] : factors) {
      if (powmod(g, static_cast<std::uint64_t>((p - 1) / q.get_si()), p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root: none found");
}

namespace {

BigInt pollard_brent(const BigInt& n, unsigned long seed) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  std::mt19937_64 rng(seed);
  while (true) {
    BigInt y = BigInt(static_cast<unsigned long>(rng() % 1000000)) % n;
    BigInt c = BigInt(static_cast<unsigned long>(rng() % 1000000 + 1)) % n;
    const unsigned long m = 128;
    BigInt g = 1, q = 1, x, ys;
    unsigned long r = 1;
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        unsigned long lim = std::min(m, r - k);
        for (unsigned long i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          q = (q * abs(x - y)) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = (ys * ys + c) % n;
        BigInt diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
    ++seed;
    rng.seed(seed);
  }
}

void factor_into(const BigInt& n, std::map<BigInt, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  BigInt d = pollard_brent(n, 0x9e3779b97f4a7c15ULL);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::map<BigInt, unsigned> factorize(const BigInt& n_in) {
  if (n_in == 0) throw std::invalid_argument("factorize: n = 0");
  std::map<BigInt, unsigned> out;
  BigInt n = abs(n_in);
  for (unsigned long q = 2; q < 10000 && q * q <= n; q += (q == 2 ? 1 : 2)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), q)) {
      n /= q;
      ++out[BigInt(q)];
    }
  }
  factor_into(n, out);
  return out;
}

}  // namespace iwk
