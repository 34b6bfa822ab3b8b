#include "iwk/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

#include "iwk/errors.hpp"

namespace iwk {

IntPoly::IntPoly(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients)) { trim(); }

IntPoly IntPoly::constant(const BigInt& c) { return IntPoly(std::vector<BigInt>{c}); }

IntPoly IntPoly::monomial(const BigInt& c, std::size_t degree) {
  std::vector<BigInt> v(degree + 1, BigInt(0));
  v[degree] = c;
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPoly::operator()(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

IntPoly IntPoly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<BigInt> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<unsigned long>(k);
  return IntPoly(std::move(d));
}

IntPoly IntPoly::pow(unsigned e) const {
  IntPoly result = constant(1);
  IntPoly base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), BigInt(0));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), BigInt(0));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> r(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntPoly(std::move(r));
}

IntPoly operator*(const BigInt& c, const IntPoly& a) {
  std::vector<BigInt> r = a.coeffs_;
  for (auto& x : r) x *= c;
  return IntPoly(std::move(r));
}

std::string IntPoly::str(char var) const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const BigInt& c = coeffs_[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    BigInt mag = abs(c);
    if (!out.empty()) out += c < 0 ? "-" : "+";
    else if (c < 0) out += "-";
    if (k == 0) {
      out += mag.get_str();
      continue;
    }
    if (mag != 1) out += mag.get_str() + "*";
    out += var;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

IntPoly parse_polynomial(std::string_view text, char var) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw ParseError("empty polynomial literal");
  std::vector<BigInt> coeffs;
  std::size_t i = 0;
  auto add_term = [&](const BigInt& c, std::size_t deg) {
    if (coeffs.size() <= deg) coeffs.resize(deg + 1, BigInt(0));
    coeffs[deg] += c;
  };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw ParseError("polynomial literal: expected sign at position " + std::to_string(i));
    }
    BigInt c = 1;
    bool have_number = false;
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) {
      c = BigInt(s.substr(start, i - start));
      have_number = true;
    }
    std::size_t deg = 0;
    if (i < s.size() && s[i] == '*') {
      if (!have_number) throw ParseError("polynomial literal: dangling '*'");
      ++i;
      if (i >= s.size() || s[i] != var) throw ParseError("polynomial literal: expected variable after '*'");
    }
    if (i < s.size() && s[i] == var) {
      ++i;
      deg = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t es = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == es) throw ParseError("polynomial literal: missing exponent");
        deg = std::stoul(s.substr(es, i - es));
      }
    } else if (!have_number) {
      throw ParseError("polynomial literal: unexpected character '" + std::string(1, s[i < s.size() ? i : s.size() - 1]) + "'");
    }
    add_term(sign * c, deg);
  }
  return IntPoly(std::move(coeffs));
}

namespace {

BigInt mod_pos(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::vector<BigInt> roots_by_divisors(const IntPoly& f) {
  std::vector<BigInt> out;
  BigInt a0 = f.coeff(0);
  std::vector<BigInt> divisors{1};
  for (const auto& [q, e] : factorize(a0)) {
    std::vector<BigInt> next;
    for (const auto& d : divisors) {
      BigInt pw = 1;
      for (unsigned k = 0; k <= e; ++k) {
        next.push_back(d * pw);
        pw *= q;
      }
    }
    divisors = std::move(next);
  }
  for (const auto& d : divisors) {
    if (f(d) == 0) out.push_back(d);
    if (f(-d) == 0) out.push_back(-d);
  }
  return out;
}

}  // namespace

std::vector<BigInt> integer_roots(const IntPoly& f_in) {
  if (f_in.is_zero()) throw std::invalid_argument("integer_roots: zero polynomial");
  std::set<BigInt> roots;
  // strip the root at zero
  std::size_t shift = 0;
  while (f_in.coeff(shift) == 0) ++shift;
  if (shift > 0) roots.insert(BigInt(0));
  IntPoly f(std::vector<BigInt>(f_in.coefficients().begin() + static_cast<long>(shift), f_in.coefficients().end()));
  if (f.degree() <= 0) return {roots.begin(), roots.end()};

  BigInt bound = 0;
  for (const auto& c : f.coefficients()) bound = std::max(bound, BigInt(abs(c)));
  bound += 1;  // |z| <= 1 + max|a_i| for integer roots
  const IntPoly df = f.derivative();

  std::int64_t ell = 101;
  for (int attempt = 0; attempt < 40; ++attempt, ell = next_prime(ell)) {
    const BigInt L(static_cast<long>(ell));
    if (mod_pos(f.leading(), L) == 0) continue;
    std::vector<BigInt> simple;
    bool ok = true;
    for (std::int64_t r = 0; r < ell && ok; ++r) {
      BigInt R(static_cast<long>(r));
      if (mod_pos(f(R), L) != 0) continue;
      if (mod_pos(df(R), L) == 0) ok = false;
      simple.push_back(R);
    }
    if (!ok) continue;
    for (BigInt x : simple) {
      BigInt m = L;
      while (m <= 2 * bound + 1) {
        m *= m;
        BigInt inv;
        BigInt d = mod_pos(df(x), m);
        if (mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t()) == 0) break;
        x = mod_pos(x - f(x) * inv, m);
      }
      BigInt z = x;
      if (z > m / 2) z -= m;
      if (f(z) == 0) roots.insert(z);
    }
    return {roots.begin(), roots.end()};
  }
  for (auto& z : roots_by_divisors(f)) roots.insert(z);
  return {roots.begin(), roots.end()};
}

}  // namespace iwk
