#include <gtest/gtest.h>

#include <random>

#include "ihall/errors.hpp"
#include "ihall/ihallalg.hpp"

using namespace ihall;

namespace {

HalfLaurent v(int e) { return HalfLaurent::vpow(e); }
HalfLaurent vh(int n) { return HalfLaurent::monomial(1, n); }

IQuiver splitA1() { return IQuiver::parse("A1; inv:"); }

const std::vector<const char*>& configurations() {
  static const std::vector<const char*> c{"A2; arrows: 1>2", "A1+A1; arrows:; inv: 1:2",
                                          "A3; arrows: 1>2, 3>2; inv: 1:3"};
  return c;
}

// Random Hall basis element with alpha in {-1, 0, 1}^I and small lambda.
AlgElement randomSymbol(IHallAlgebra& H, std::mt19937_64& rng, int maxHeight) {
  const IQuiver& Q = H.quiver();
  Symbol s{DimVector(Q.size(), 0), Q.emptyPartition()};
  for (int& a : s.alpha) a = static_cast<int>(rng() % 3) - 1;
  int budget = static_cast<int>(rng() % (maxHeight + 1));
  for (int tries = 0; tries < 6 && budget > 0; ++tries) {
    int r = static_cast<int>(rng() % Q.numRoots());
    int h = height(Q.positiveRoots()[r]);
    if (h <= budget) {
      ++s.lambda[r];
      budget -= h;
    }
  }
  static const std::vector<HalfLaurent> coeffs{HalfLaurent(1), v(1), vh(-1), HalfLaurent(2) - v(-2)};
  return AlgElement::symbol(s, coeffs[rng() % coeffs.size()]);
}

}  // namespace

TEST(IHallAlg, SplitA1Square) {
  IQuiver Q = splitA1();
  IHallAlgebra H(Q, "");
  AlgElement u = H.generator(0);
  AlgElement expect = H.u({2}).scaled(v(-1)) + H.k({1}).scaled(v(1) - v(-1));
  EXPECT_EQ(H.multiply(u, u), expect);
  EXPECT_EQ(H.multiply(H.one(), u), u);
  EXPECT_EQ(H.multiply(u, H.one()), u);
}

TEST(IHallAlg, KPartGrowsUnderProducts) {
  IQuiver Q = splitA1();
  IHallAlgebra H(Q, "");
  AlgElement a = H.multiply(H.k({1}), H.generator(0));
  AlgElement p = H.multiply(a, a);
  for (const auto& [s, c] : p.terms()) EXPECT_GE(s.alpha[0], 2);
}

TEST(IHallAlg, RescaledExamples) {
  IQuiver Q = splitA1();
  IHallAlgebra H(Q, "");
  EXPECT_EQ(H.rescaledU({1}), H.u({1}).scaled(vh(-1)));
  EXPECT_EQ(H.rescaledU({0}), H.one());
  EXPECT_EQ(H.rescaledU({2}), H.u({2}).scaled(v(-2)));
}

TEST(IHallAlg, DiamondExamples) {
  IQuiver Q = splitA1();
  IHallAlgebra H(Q, "");
  AlgElement u = H.generator(0);
  EXPECT_EQ(H.diamond({1}, u), H.multiply(H.k({1}), u));
  EXPECT_EQ(H.diamond({0}, u), u);

  IQuiver A3 = IQuiver::parse("A3; arrows: 1>2, 3>2; inv: 1:3");
  IHallAlgebra H3(A3, "");
  // (e1 - e3, alpha1) = 2 - 0 for this orientation.
  KostantPartition s1 = A3.single(A3.rootIndex({1, 0, 0}));
  EXPECT_EQ(H3.diamond({1, 0, 0}, H3.u(s1)), AlgElement::symbol({{1, 0, 0}, s1}, v(1)));
  EXPECT_EQ(H3.diamond({0, 0, 1}, H3.u(s1)), AlgElement::symbol({{0, 0, 1}, s1}, v(-1)));
  AlgElement x = H3.multiply(H3.generator(0), H3.generator(1));
  EXPECT_EQ(H3.diamond({1, 0, 0}, H3.diamond({0, 1, 1}, x)), H3.diamond({1, 1, 1}, x));
}

TEST(IHallAlg, WordsSplitA1) {
  IQuiver Q = splitA1();
  IHallAlgebra H(Q, "");
  EXPECT_EQ(H.expandWord({{1}, {0}}), AlgElement::symbol({{1}, {1}}));
  EXPECT_EQ(H.expandWord({{0}, {0, 0}}), H.multiply(H.generator(0), H.generator(0)));
  WordCombination w = H.expressInWords(H.u({2}));
  WordCombination expect{{Word{{0}, {0, 0}}, RationalFunction(v(1))}, {Word{{1}, {}}, RationalFunction(HalfLaurent(1) - v(2))}};
  EXPECT_EQ(w, expect);
  WordCombination single = H.expressInWords(H.generator(0));
  EXPECT_EQ(single, (WordCombination{{Word{{0}, {0}}, RationalFunction(1)}}));
  WordCombination kOnly = H.expressInWords(H.k({3}));
  EXPECT_EQ(kOnly, (WordCombination{{Word{{3}, {}}, RationalFunction(1)}}));
}

TEST(IHallAlg, BarExamplesSplitA1) {
  IQuiver Q = splitA1();
  IHallAlgebra H(Q, "");
  EXPECT_EQ(H.barInvolve(H.generator(0)), H.generator(0).scaled(v(-1)));
  EXPECT_EQ(H.barInvolve(H.k({1})), H.k({1}));
  EXPECT_EQ(H.barInvolve(H.u({2})), H.u({2}).scaled(v(-4)) + H.k({1}).scaled(HalfLaurent(1) - v(-4)));
  EXPECT_EQ(H.barInvolve(H.rescaledU({2})), H.rescaledU({2}) + H.k({1}).scaled(v(2) - v(-2)));
}

TEST(IHallAlg, LocalizedKs) {
  IQuiver Q = IQuiver::parse("A1+A1; arrows:; inv: 1:2");
  IHallAlgebra H(Q, "");
  EXPECT_EQ(H.multiply(H.k({-1, 0}), H.k({1, 0})), H.one());
  AlgElement e = H.generator(0);
  // K e K^-1 is a power of v times e.
  AlgElement conj = H.multiply(H.multiply(H.k({1, 0}), e), H.k({-1, 0}));
  ASSERT_EQ(conj.terms().size(), 1u);
  EXPECT_TRUE(conj.terms().begin()->second.isMonomial());
  EXPECT_EQ(H.barInvolve(H.k({-2, 1})), H.k({-2, 1}));
}

TEST(IHallAlg, WordsRoundTrip) {
  for (const char* text : configurations()) {
    IQuiver Q = IQuiver::parse(text);
    IHallAlgebra H(Q, "");
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 15; ++trial) {
      AlgElement a = randomSymbol(H, rng, 3);
      EXPECT_EQ(H.evaluate(H.expressInWords(a)), a) << text;
    }
  }
}

TEST(IHallAlg, Associativity) {
  for (const char* text : configurations()) {
    IQuiver Q = IQuiver::parse(text);
    IHallAlgebra H(Q, "");
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
      AlgElement a = randomSymbol(H, rng, 2), b = randomSymbol(H, rng, 2), c = randomSymbol(H, rng, 2);
      EXPECT_EQ(H.multiply(H.multiply(a, b), c), H.multiply(a, H.multiply(b, c))) << text;
    }
  }
}

TEST(IHallAlg, BarIsInvolutiveAntiHomomorphism) {
  for (const char* text : configurations()) {
    IQuiver Q = IQuiver::parse(text);
    IHallAlgebra H(Q, "");
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 15; ++trial) {
      AlgElement a = randomSymbol(H, rng, 2), b = randomSymbol(H, rng, 2);
      EXPECT_EQ(H.barInvolve(H.barInvolve(a)), a) << text;
      EXPECT_EQ(H.barInvolve(H.multiply(a, b)), H.multiply(H.barInvolve(b), H.barInvolve(a))) << text;
    }
  }
}

TEST(IHallAlg, BarCommutesWithDiamond) {
  for (const char* text : configurations()) {
    IQuiver Q = IQuiver::parse(text);
    IHallAlgebra H(Q, "");
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
      Symbol s = randomSymbol(H, rng, 3).terms().begin()->first;
      for (int& a : s.alpha) a = std::abs(a);
      AlgElement U = H.rescaledU(s.lambda);
      EXPECT_EQ(H.barInvolve(H.diamond(s.alpha, U)), H.diamond(s.alpha, H.barInvolve(U))) << text;
    }
  }
}

TEST(IHallAlg, HomogeneityAndJson) {
  IQuiver Q = IQuiver::parse("A3; arrows: 1>2, 3>2; inv: 1:3");
  IHallAlgebra H(Q, "");
  AlgElement x = H.multiply(H.generator(0), H.multiply(H.generator(1), H.generator(2)));
  EXPECT_EQ(H.gradeOf(x), (DimVector{1, 1, 1}));
  EXPECT_EQ(H.fromJson(H.toJson(x)), x);
  EXPECT_THROW(H.gradeOf(H.generator(0) + H.generator(1)), DimensionMismatch);
}
