#include <gtest/gtest.h>

#include <random>

#include "iwk/errors.hpp"
#include "iwk/padic.hpp"
#include "iwk/polynomial.hpp"
#include "support/oracles.hpp"

using namespace iwk;

TEST(Valuation, OrderingAndInfinity) {
  EXPECT_LT(Valuation(3), Valuation::infinity());
  EXPECT_EQ(Valuation(2) + Valuation::infinity(), Valuation::infinity());
  EXPECT_EQ(Valuation(2) + Valuation(5), Valuation(7));
  EXPECT_EQ(Valuation::infinity().str(), "INFINITY");
  EXPECT_THROW(Valuation::infinity().value(), std::logic_error);
}

TEST(OrdP, Examples) {
  EXPECT_EQ(ord_p(49, 7), Valuation(2));
  EXPECT_EQ(ord_p(0, 5), Valuation::infinity());
  EXPECT_EQ(ord_p(5077, 7), Valuation(0));
  EXPECT_EQ(ord_p(-48, 2), Valuation(4));
}

TEST(Kronecker, Examples) {
  EXPECT_EQ(kronecker_symbol(-7, 5077), 1);
  EXPECT_EQ(kronecker_symbol(1, 15), 1);
  EXPECT_EQ(kronecker_symbol(1, 9), 1);
  EXPECT_EQ(kronecker_symbol(2, 7), 1);
  EXPECT_EQ(kronecker_symbol(3, 7), -1);
  EXPECT_EQ(kronecker_symbol(14, 7), 0);
  EXPECT_THROW(kronecker_symbol(3, 0), std::invalid_argument);
}

TEST(Kronecker, MatchesEulerCriterionAtOddPrimes) {
  std::mt19937_64 rng(11);
  for (std::int64_t ell = 3; ell < 400; ell = next_prime(ell)) {
    for (int k = 0; k < 20; ++k) {
      const BigInt a = static_cast<long>(rng() % 100000) - 50000;
      ASSERT_EQ(kronecker_symbol(a, ell), oracle::legendre(a, ell)) << a << " mod " << ell;
    }
  }
}

TEST(Kronecker, MultiplicativeInTheBottomArgument) {
  for (long a = -30; a <= 30; ++a) {
    for (long m = 1; m < 40; m += 2) {
      for (long n = 1; n < 40; n += 2) {
        ASSERT_EQ(kronecker_symbol(a, m * n), kronecker_symbol(a, m) * kronecker_symbol(a, n));
      }
    }
  }
}

TEST(MultiplicativeOrder, Examples) {
  EXPECT_EQ(multiplicative_order(5077, 7), 3U);
  EXPECT_EQ(multiplicative_order(1, 13), 1U);
  EXPECT_EQ(multiplicative_order(3, 7), 6U);
  EXPECT_THROW(multiplicative_order(14, 7), std::invalid_argument);
}

TEST(MultiplicativeOrder, MatchesNaiveSearch) {
  for (std::int64_t p = 3; p < 300; p = next_prime(p)) {
    for (std::int64_t a = 1; a < p; ++a) ASSERT_EQ(multiplicative_order(a, p), oracle::order_mod(a, p));
  }
}

TEST(Teichmuller, Examples) {
  EXPECT_EQ(teichmuller(1, 7, 4).value(), 1);
  EXPECT_EQ(teichmuller(6, 7, 3).value(), 342);
  EXPECT_EQ(teichmuller(2, 5, 3).value(), 57);
}

TEST(Teichmuller, MatchesSearch) {
  for (std::int64_t p : {3, 5, 7, 11}) {
    for (unsigned N = 1; N <= 4; ++N) {
      for (std::int64_t a = 1; a < p; ++a) ASSERT_EQ(teichmuller(a, p, N).value(), oracle::teichmuller_search(a, p, N));
    }
  }
}

TEST(HenselSqrt, Examples) {
  const auto r = hensel_sqrt(4, 7, 2);
  ASSERT_TRUE(r);
  EXPECT_TRUE(r->value() == 2 || r->value() == 47);
  EXPECT_FALSE(hensel_sqrt(3, 7, 1));
  const auto s = hensel_sqrt(2, 7, 2);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->value() * s->value() % 49, 2);
}

TEST(HenselSqrt, AgreesWithExhaustiveSquares) {
  for (std::int64_t p : {3, 5, 7}) {
    for (unsigned N = 1; N <= 3; ++N) {
      std::int64_t q = 1;
      for (unsigned k = 0; k < N; ++k) q *= p;
      std::vector<bool> square(static_cast<std::size_t>(q), false);
      for (std::int64_t x = 0; x < q; ++x) square[static_cast<std::size_t>(x * x % q)] = true;
      for (std::int64_t a = 0; a < q; ++a) {
        const auto r = hensel_sqrt(a, p, N);
        ASSERT_EQ(r.has_value(), square[static_cast<std::size_t>(a)]) << a << " mod " << q;
        if (r) ASSERT_EQ(r->value() * r->value() % q, a);
      }
    }
  }
}

TEST(ResidueRing, InverseAndValuation) {
  const ResidueRing R(5, 3);
  EXPECT_EQ(R.modulus(), 125);
  EXPECT_EQ(R.mul(R.inverse(7), 7), 1);
  EXPECT_THROW(R.inverse(10), std::domain_error);
  EXPECT_EQ(R.valuation(50), 2U);
  EXPECT_EQ(R.valuation(0), 3U);
  EXPECT_EQ(R.reduce(-1), 124);
}

TEST(PadicInt, Arithmetic) {
  const PadicInt a(3, 4, 10);
  const PadicInt b(3, 4, -1);
  EXPECT_EQ((a + b).value(), 9);
  EXPECT_EQ((a * b).value(), 71);
  EXPECT_EQ((a + b).valuation(), Valuation(2));
  EXPECT_EQ(PadicInt(3, 4, 81).valuation(), Valuation::infinity());
  EXPECT_EQ(a.truncate(2).value(), 1);
}

TEST(Factorize, SmallAndLarge) {
  const auto f = factorize(BigInt(-161051));
  ASSERT_EQ(f.size(), 1U);
  EXPECT_EQ(f.begin()->first, 11);
  EXPECT_EQ(f.begin()->second, 5U);
  const BigInt big = BigInt("1000000007") * BigInt("998244353") * 12;
  const auto g = factorize(big);
  EXPECT_EQ(g.size(), 4U);
  EXPECT_EQ(g.at(2), 2U);
  EXPECT_EQ(g.at(BigInt("998244353")), 1U);
}

TEST(Primes, Basics) {
  EXPECT_TRUE(is_prime(std::int64_t{5077}));
  EXPECT_FALSE(is_prime(std::int64_t{5079}));
  EXPECT_EQ(next_prime(7), 11);
  EXPECT_EQ(primitive_root(7), 3);
  EXPECT_EQ(primitive_root(5), 2);
}

TEST(Polynomial, ParseAndPrint) {
  const IntPoly f = parse_polynomial("T^2+3*T+3");
  EXPECT_EQ(f.degree(), 2);
  EXPECT_EQ(f.str(), "T^2+3*T+3");
  EXPECT_EQ(parse_polynomial("3").str(), "3");
  EXPECT_EQ(parse_polynomial("T^3 - 2*T").coeff(1), -2);
  EXPECT_THROW(parse_polynomial("T^^2"), ParseError);
  EXPECT_THROW(parse_polynomial("x+1"), ParseError);
}

TEST(Polynomial, IntegerRoots) {
  // (x-3)(x+5)(x-3)(x^2+1)
  const IntPoly f = IntPoly({-3, 1}) * IntPoly({5, 1}) * IntPoly({-3, 1}) * IntPoly({1, 0, 1});
  EXPECT_EQ(integer_roots(f), (std::vector<BigInt>{-5, 3}));
  EXPECT_TRUE(integer_roots(IntPoly({1, 0, 1})).empty());
  EXPECT_EQ(integer_roots(IntPoly({0, 0, 1})), std::vector<BigInt>{0});
}
