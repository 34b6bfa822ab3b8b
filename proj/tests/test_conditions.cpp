#include <gtest/gtest.h>

#include "corpus.hpp"
#include "iwk/conditions.hpp"
#include "iwk/errors.hpp"

using namespace iwk;

namespace {

EllipticCurve curve(long a1, long a2, long a3, long a4, long a6) { return {a1, a2, a3, a4, a6}; }
const EllipticCurve k5077 = curve(0, 0, 1, -7, 6);

bool has_witness(const Verdict& v, std::int64_t ell) {
  for (const auto& w : v.witnesses) {
    if (w.prime == ell) return true;
  }
  return false;
}

}  // namespace

TEST(DivisionPolynomial, SmallIndices) {
  const EllipticCurve& E = k5077;
  EXPECT_EQ(division_polynomial(E, 1), IntPoly::constant(1));
  EXPECT_EQ(division_polynomial(E, 2), IntPoly::constant(1));
  // psi_3 = 3x^4 + b2 x^3 + 3 b4 x^2 + 3 b6 x + b8
  const IntPoly f3({E.b8(), 3 * E.b6(), 3 * E.b4(), E.b2(), 3});
  EXPECT_EQ(division_polynomial(E, 3), f3);
  for (unsigned n = 3; n <= 11; ++n) {
    const int want = (n % 2) ? static_cast<int>((n * n - 1) / 2) : static_cast<int>((n * n - 4) / 2);
    EXPECT_EQ(division_polynomial(E, n).degree(), want) << n;
    EXPECT_EQ(division_polynomial(E, n).leading(), (n % 2) ? BigInt(n) : BigInt(n / 2)) << n;
  }
}

TEST(DivisionPolynomial, RootsAreTorsionAbscissae) {
  // 11a3 = [0,-1,1,0,0] has the rational 5-torsion points (0,0), (1,0) etc.
  const EllipticCurve E = curve(0, -1, 1, 0, 0);
  const auto xs = rational_torsion_abscissae(E, 5);
  EXPECT_EQ(xs, (std::vector<mpq_class>{0, 1}));
  EXPECT_TRUE(rational_torsion_abscissae(k5077, 7).empty());
  // 26b1 has a rational 7-torsion point
  EXPECT_FALSE(rational_torsion_abscissae(curve(1, -1, 1, -3, 3), 7).empty());
}

TEST(C1Str, WorkedExampleHolds) {
  const Verdict v = check_c1_str(k5077, 7, 10000);
  EXPECT_EQ(v.status, Status::Holds);
  EXPECT_EQ(v.parameters.at("prime_bound"), 10000);
  EXPECT_EQ(check_c1(v).status, Status::Holds);
}

TEST(C1Str, RationalTorsionFails) {
  const Verdict v = check_c1_str(curve(1, -1, 1, -3, 3), 7);  // 26b1, rational 7-torsion
  EXPECT_EQ(v.status, Status::Fails);
  EXPECT_EQ(check_c1(v).status, Status::Inconclusive);
  EXPECT_EQ(check_c1_str(curve(0, -1, 1, -10, -20), 5).status, Status::Fails);  // 11a1, 5-torsion
}

TEST(C1Str, NoDataIsInconclusive) {
  EXPECT_EQ(check_c1_str(k5077, 7, 0).status, Status::Inconclusive);
}

TEST(C1Str, PThreeNeverHolds) {
  const Verdict v = check_c1_str(k5077, 3);
  EXPECT_NE(v.status, Status::Holds);
  if (v.status == Status::Inconclusive && v.parameters.at("mod_p_surjective") == 1) {
    EXPECT_EQ(check_c1(v).status, Status::Holds);
  }
}

TEST(C1Str, TraceSourceIsUsed) {
  std::size_t calls = 0;
  const TraceSource src = [&](std::int64_t ell) {
    ++calls;
    return count_points_ap(k5077, ell).a_ell;
  };
  const Verdict v = check_c1_str(k5077, 7, 10000, src);
  EXPECT_EQ(v.status, Status::Holds);
  EXPECT_GT(calls, 0U);
}

TEST(C1Str, CorpusVerdictsAreConsistentWithTorsion) {
  for (const auto& rec : test_corpus()) {
    for (std::int64_t p : {5, 7}) {
      if (rec.curve.discriminant() % p == 0) continue;
      const Verdict v = check_c1_str(rec.curve, p, 2000);
      if (!rational_torsion_abscissae(rec.curve, p).empty()) ASSERT_EQ(v.status, Status::Fails) << rec.label;
      if (v.status == Status::Holds) ASSERT_EQ(v.parameters.at("mod_p_surjective"), 1) << rec.label;
    }
  }
}

TEST(C2, Examples) {
  EXPECT_EQ(check_c2(k5077, 7).status, Status::Holds);
  const Verdict s = check_c2(curve(0, -1, 1, -10, -20), 3);  // 11a1, split at 11
  EXPECT_EQ(s.status, Status::Fails);
  EXPECT_TRUE(has_witness(s, 11));
  // 27a1 has potentially good reduction everywhere (CM by Z[zeta_3])
  EXPECT_EQ(check_c2(curve(0, 0, 1, 0, -7), 5).status, Status::Holds);
}

TEST(C2Sufficient, Examples) {
  EXPECT_EQ(check_c2_sufficient(k5077, 7).status, Status::Holds);
  EXPECT_EQ(check_c2_sufficient(k5077, 5).status, Status::Inconclusive);
  const EllipticCurve split = curve(0, -1, 1, -10, -20);
  EXPECT_EQ(check_c2_sufficient(split, 3).status, Status::Inconclusive);
  EXPECT_EQ(check_c2(split, 3).status, Status::Fails);
}

TEST(C2Sufficient, ImpliesC2OnTheCorpus) {
  for (const auto& rec : test_corpus()) {
    for (std::int64_t p : {3, 5, 7, 11, 19, 23}) {
      if (rec.curve.discriminant() % p == 0) continue;
      if (check_c2_sufficient(rec.curve, p).status == Status::Holds) {
        ASSERT_EQ(check_c2(rec.curve, p).status, Status::Holds) << rec.label << " p=" << p;
      }
    }
  }
}

TEST(C3, Examples) {
  EXPECT_EQ(check_c3(curve(0, 0, 1, 0, -7)).status, Status::Holds);  // j = 0, maximal order
  EXPECT_EQ(check_c3(curve(0, 0, 0, -15, 22)).status, Status::Fails);  // j = 54000, order of disc -12
  EXPECT_EQ(check_c3(k5077).status, Status::Holds);
  EXPECT_EQ(check_c3(curve(0, 0, 0, 1, 0)).status, Status::Holds);  // j = 1728, Z[i]
}

TEST(C3, CmTable) {
  const auto& t = cm_table();
  EXPECT_EQ(t.size(), 13U);
  int non_maximal = 0;
  for (const auto& e : t) non_maximal += e.maximal_order ? 0 : 1;
  EXPECT_EQ(non_maximal, 4);
  for (const auto& e : t) {
    if (e.j == 54000) EXPECT_EQ(e.discriminant, -12);
    if (e.j == -12288000) EXPECT_EQ(e.discriminant, -27);
    if (e.j == 287496) EXPECT_EQ(e.discriminant, -16);
    if (e.j == 16581375) EXPECT_EQ(e.discriminant, -28);
    if (e.j == -884736000) EXPECT_EQ(e.discriminant, -43);
  }
}
