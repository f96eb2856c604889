#include <gtest/gtest.h>

#include "ihall/dcb.hpp"
#include "ihall/errors.hpp"
#include "ihall/rank1.hpp"

using namespace ihall;

namespace {

HalfLaurent v(int e) { return HalfLaurent::vpow(e); }

const std::vector<const char*>& configurations() {
  static const std::vector<const char*> c{"A2; arrows: 1>2", "A1+A1; arrows:; inv: 1:2",
                                          "A3; arrows: 1>2, 3>2; inv: 1:3"};
  return c;
}

// B^a K^b with B = v^(-1/2) u and K = K_1.
AlgElement rank1Image(IHallAlgebra& H, const rank1::BKPolynomial& p) {
  AlgElement out;
  for (const auto& [key, c] : p.terms()) {
    auto [a, b] = key;
    Word w{{b}, std::vector<int>(a, 0)};
    out += H.expandWord(w).scaled(c.shifted(-a));
  }
  return out;
}

}  // namespace

TEST(DCB, SplitA1SmallGrades) {
  IQuiver Q = IQuiver::parse("A1; inv:");
  IHallAlgebra H(Q, "");
  DCBSolver S(H);

  GradedPiece p0 = S.buildGradedPiece({0});
  ASSERT_EQ(p0.basis.size(), 1u);
  EXPECT_EQ(S.element(p0.basis[0]), H.one());

  GradedPiece p1 = S.buildGradedPiece({1});
  ASSERT_EQ(p1.basis.size(), 1u);
  EXPECT_EQ(p1.barMatrix(0, 0), HalfLaurent(1));

  const DCBasis& b2 = S.basis({2});
  ASSERT_EQ(b2.basis.size(), 2u);
  EXPECT_EQ(b2.basis[0], (Symbol{{0}, {2}}));
  EXPECT_EQ(b2.basis[1], (Symbol{{1}, {0}}));
  EXPECT_EQ(b2.transition(1, 0), -v(-2));
  EXPECT_EQ(b2.inverse(1, 0), v(-2));
  AlgElement L2 = H.rescaledU({2}) - H.k({1}).scaled(v(-2));
  EXPECT_EQ(S.element({{0}, {2}}), L2);
  EXPECT_EQ(S.element({{1}, {0}}), H.k({1}));
}

TEST(DCB, MatchesRank1Oracle) {
  IQuiver Q = IQuiver::parse("A1; inv:");
  IHallAlgebra H(Q, "");
  DCBSolver S(H);
  for (int n = 0; n <= 6; ++n)
    for (int b = 0; 2 * b <= n; ++b) {
      int a = n - 2 * b;
      AlgElement expect = rank1Image(H, rank1::Lclosed(b, a + 2 * b));
      EXPECT_EQ(S.element({{b}, {a}}), expect) << "a=" << a << " b=" << b;
    }
}

TEST(DCB, BasisPropertiesUpToHeight3) {
  for (const char* text : configurations()) {
    IQuiver Q = IQuiver::parse(text);
    IHallAlgebra H(Q, "");
    DCBSolver S(H);
    for (const DimVector& g : gradesUpTo(Q.size(), 3)) {
      const DCBasis& b = S.basis(g);
      DCBasis alt = S.solve(S.buildGradedPiece(g, TieBreak::Reverse));
      for (std::size_t j = 0; j < b.basis.size(); ++j) {
        const Symbol& s = b.basis[j];
        AlgElement L = S.element(s);
        EXPECT_EQ(H.barInvolve(L), L) << text;
        for (Eigen::Index k = 0; k < b.transition.rows(); ++k) {
          if (k == static_cast<Eigen::Index>(j)) continue;
          const HalfLaurent& t = b.transition(k, j);
          if (!t.isZero()) {
            EXPECT_TRUE(inVinvZVinv(t)) << text;
            EXPECT_TRUE(Q.extendedOrderLess(s.alpha, s.lambda, b.basis[k].alpha, b.basis[k].lambda));
          }
        }
        // Same element from the other linear extension.
        int ja = alt.indexOf(s);
        AlgElement La;
        for (Eigen::Index k = 0; k < alt.transition.rows(); ++k)
          if (!alt.transition(k, ja).isZero()) La += S.standard(alt.basis[k]).scaled(alt.transition(k, ja));
        EXPECT_EQ(La, L) << text;
        Symbol base{DimVector(Q.size(), 0), s.lambda};
        EXPECT_EQ(L, H.diamond(s.alpha, S.element(base))) << text;
      }
    }
  }
}

TEST(DCB, InBasisInvertsElement) {
  IQuiver Q = IQuiver::parse("A3; arrows: 1>2, 3>2; inv: 1:3");
  IHallAlgebra H(Q, "");
  DCBSolver S(H);
  const DCBasis& b = S.basis({1, 1, 1});
  for (const Symbol& s : b.basis) {
    auto coeffs = S.inBasis(S.element(s));
    ASSERT_EQ(coeffs.size(), 1u);
    EXPECT_EQ(coeffs.begin()->first, s);
    EXPECT_EQ(coeffs.begin()->second, HalfLaurent(1));
  }
}

TEST(DCB, PositivitySmall) {
  for (const char* text : configurations()) {
    IQuiver Q = IQuiver::parse(text);
    IHallAlgebra H(Q, "");
    DCBSolver S(H);
    PositivityReport r = verifyPositivity(S, 3);
    EXPECT_TRUE(r.ok()) << text << ": " << (r.ok() ? "" : r.violations[0].detail);
    EXPECT_GT(r.structureConstants, 0);
  }
}

TEST(DCB, SplitA1SquarePositivity) {
  IQuiver Q = IQuiver::parse("A1; inv:");
  IHallAlgebra H(Q, "");
  DCBSolver S(H);
  AlgElement L1 = S.element({{0}, {1}});
  auto c = S.inBasis(H.multiply(L1, L1));
  std::map<Symbol, HalfLaurent> expect{{{{0}, {2}}, HalfLaurent(1)}, {{{1}, {0}}, HalfLaurent(1)}};
  EXPECT_EQ(c, expect);
}

TEST(DCB, OrientationA2) {
  IQuiver Q = IQuiver::parse("A2; arrows: 1>2");
  IQuiver R = Q.reversed({0});
  IHallAlgebra H(Q, ""), H2(R, "");
  DCBSolver S(H), S2(H2);
  OrientationReport r = orientationCompare(S, S2, 3);
  EXPECT_TRUE(r.ok()) << (r.ok() ? "" : r.mismatches[0].what + r.mismatches[0].detail);
  EXPECT_GT(r.compared, 0);
}

TEST(DCB, ReportsAreSelfConsistent) {
  IQuiver Q = IQuiver::parse("A1; inv:");
  IHallAlgebra H(Q, "");
  DCBSolver S(H);
  nlohmann::json j = S.report(S.basis({2}));
  EXPECT_EQ(j["transition"][1][0], "-v^(-2)");
  std::string csv = S.csv(S.basis({2}), false);
  EXPECT_NE(csv.find("-v^(-2)"), std::string::npos);
}
