#include <gtest/gtest.h>

#include <random>

#include "ihall/dcb.hpp"
#include "ihall/errors.hpp"
#include "ihall/nks.hpp"
#include "ihall/rank1.hpp"

using namespace ihall;
using nks::DominantPair;
using nks::OrbitQuiver;

namespace {

const std::vector<const char*>& configurations() {
  static const std::vector<const char*> c{"A1; inv:",
                                          "A2; arrows: 1>2",
                                          "A2; arrows: 2>1",
                                          "A1+A1; arrows:; inv: 1:2",
                                          "A3; arrows: 1>2, 3>2; inv: 1:3",
                                          "A3; arrows: 1>2, 2>3"};
  return c;
}

std::vector<int> randomVector(std::mt19937_64& rng, int n, int bound) {
  std::vector<int> v(n);
  for (int& x : v) x = static_cast<int>(rng() % (2 * bound + 1)) - bound;
  return v;
}

// Oracle for the dictionary: (alpha, lambda) with alpha + rho(alpha) + dim(lambda) = w.
int countSymbols(const IQuiver& Q, const std::vector<int>& w) {
  int count = 0;
  std::vector<int> alpha(Q.size(), 0);
  while (true) {
    DimVector rest = w;
    DimVector ra = Q.rhoDim(alpha);
    bool ok = true;
    for (int i = 0; i < Q.size(); ++i) ok = ok && (rest[i] -= alpha[i] + ra[i]) >= 0;
    if (ok) count += static_cast<int>(Q.partitions(rest).size());
    int i = 0;
    while (i < Q.size() && alpha[i] == w[i]) alpha[i++] = 0;
    if (i == Q.size()) break;
    ++alpha[i];
  }
  return count;
}

}  // namespace

TEST(NKS, Rank1OrbitQuiver) {
  OrbitQuiver R(IQuiver::parse("A1; inv:"));
  ASSERT_EQ(R.size(), 1);
  EXPECT_EQ(R.tau(0), 0);
  EXPECT_TRUE(R.arrows().empty());
  EXPECT_EQ(R.quantumCartan({3}), std::vector<int>{6});
  EXPECT_EQ(R.quantumCartan({0}), std::vector<int>{0});
  EXPECT_EQ(R.vi(0), std::vector<int>{1});
}

TEST(NKS, A2SplitOrbitQuiver) {
  IQuiver Q = IQuiver::parse("A2; arrows: 1>2");
  OrbitQuiver R(Q);
  int s1 = Q.rootIndex({1, 0}), s2 = Q.rootIndex({0, 1}), p1 = Q.rootIndex({1, 1});
  // tau: S2 -> P1 -> S1 -> S2 modulo the shift; arrows S1 -> S2 -> P1 -> S1.
  EXPECT_EQ(R.tau(s2), p1);
  EXPECT_EQ(R.tau(p1), s1);
  EXPECT_EQ(R.tau(s1), s2);
  std::vector<Arrow> expect{{s1, s2}, {s2, p1}, {p1, s1}};
  std::sort(expect.begin(), expect.end());
  EXPECT_EQ(R.arrows(), expect);
  EXPECT_FALSE(R.isInjective(s2));
  EXPECT_TRUE(R.isInjective(s1));
  EXPECT_TRUE(R.isInjective(p1));
  // Known strata: C_q of unit vectors.
  std::vector<int> e(3, 0);
  e[s2] = 1;
  std::vector<int> c = R.quantumCartan(e);
  EXPECT_EQ(c[s2], 1);
  EXPECT_EQ(c[p1], -1);
  EXPECT_EQ(c[s1], 1);
  EXPECT_EQ(R.toJson()["vertices"].size(), 3u);
}

TEST(NKS, KnittingMatchesModuleTheory) {
  for (const char* text : configurations()) {
    IQuiver Q = IQuiver::parse(text);
    OrbitQuiver R(Q);
    for (int i = 0; i < Q.size(); ++i) {
      // (i, 0) is projective; the step after an injective leaves the module category.
      nks::Label p = R.label(i, 0);
      for (int y = 0; y < Q.numRoots(); ++y) EXPECT_EQ(Q.extDim(Q.single(p.root), Q.single(y)), 0) << text;
      for (int q = 0; q < R.window(); ++q) {
        nks::Label l = R.label(i, q), next = R.label(i, q + 1);
        if (l.shift == 0) EXPECT_EQ(next.shift == 1, R.isInjective(l.root)) << text;
      }
    }
    // Mesh additivity of hom(X, -) in the module category: the AR sequence
    // tau x -> E -> x is exact on Hom(X, -) for x non-projective and X not x.
    for (int x = 0; x < R.size(); ++x) {
      bool projective = true;
      for (int y = 0; y < R.size(); ++y) projective = projective && Q.extDim(Q.single(x), Q.single(y)) == 0;
      if (projective || !Q.isSplit()) continue;
      for (int X = 0; X < R.size(); ++X) {
        int sum = Q.homRoots(X, x) + Q.homRoots(X, R.tau(x));
        for (const Arrow& a : R.arrows())
          if (a.target == x) sum -= Q.homRoots(X, a.source);
        EXPECT_EQ(sum, X == x ? 1 : 0) << text << " x=" << x << " X=" << X;
      }
    }
  }
}

TEST(NKS, FrozenBlocksAreBalanced) {
  for (const char* text : configurations()) {
    OrbitQuiver R(IQuiver::parse(text));
    for (int i = 0; i < R.frozenCount(); ++i)
      EXPECT_EQ(R.quantumCartan(R.vi(i)), R.sigmaStar(R.wi(i))) << text;
  }
}

TEST(NKS, CartanSymmetry) {
  std::mt19937_64 rng(5);
  for (const char* text : configurations()) {
    OrbitQuiver R(IQuiver::parse(text));
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<int> v1 = randomVector(rng, R.size(), 4), v2 = randomVector(rng, R.size(), 4);
      EXPECT_EQ(nks::dot(R.quantumCartan(v1), R.tauStar(v2)), nks::dot(v1, R.quantumCartan(v2))) << text;
    }
  }
}

TEST(NKS, Rank1Dictionary) {
  OrbitQuiver R(IQuiver::parse("A1; inv:"));
  auto [a0, l0] = nks::lambdaOf(R, {{1}, {2}});
  EXPECT_EQ(a0, DimVector{1});
  EXPECT_EQ(l0, KostantPartition{0});
  auto [a1, l1] = nks::lambdaOf(R, {{0}, {1}});
  EXPECT_EQ(a1, DimVector{0});
  EXPECT_EQ(l1, KostantPartition{1});
  auto [a2, l2] = nks::lambdaOf(R, {{0}, {0}});
  EXPECT_EQ(a2, DimVector{0});
  EXPECT_EQ(l2, KostantPartition{0});
  EXPECT_EQ(nks::pairOf(R, {0}, {5}), (DominantPair{{0}, {5}}));
  for (int a = 0; a <= 5; ++a)
    for (int b = 0; b <= 5; ++b) EXPECT_EQ(nks::pairOf(R, {b}, {a}), (DominantPair{{b}, {a + 2 * b}}));
  EXPECT_THROW(nks::lambdaOf(R, {{2}, {3}}), NotDominant);
  EXPECT_THROW(nks::pairOf(R, {-1}, {0}), NoSolution);
}

TEST(NKS, Rank1DominanceAndRoundTrip) {
  OrbitQuiver R(IQuiver::parse("A1; inv:"));
  for (int w = 0; w <= 10; ++w) {
    std::vector<DominantPair> ps = nks::dominantPairs(R, {w});
    ASSERT_EQ(static_cast<int>(ps.size()), w / 2 + 1);
    for (int v = 0; v <= w / 2; ++v) {
      EXPECT_EQ(ps[v], (DominantPair{{v}, {w}}));
      EXPECT_EQ(nks::isDominant(R, ps[v]), rank1::isDominant(v, w));
      auto [alpha, lambda] = nks::lambdaOf(R, ps[v]);
      EXPECT_EQ(nks::pairOf(R, alpha, lambda), ps[v]);
    }
    EXPECT_FALSE(nks::isDominant(R, {{w / 2 + 1}, {w}}));
  }
}

TEST(NKS, RoundTripAndCounts) {
  for (const char* text : configurations()) {
    IQuiver Q = IQuiver::parse(text);
    OrbitQuiver R(Q);
    for (const DimVector& w : gradesUpTo(Q.size(), Q.size() <= 2 ? 6 : 4)) {
      std::vector<DominantPair> ps = nks::dominantPairs(R, w);
      EXPECT_EQ(static_cast<int>(ps.size()), countSymbols(Q, w)) << text << " w=" << dimString(w);
      for (const DominantPair& p : ps) {
        auto [alpha, lambda] = nks::lambdaOf(R, p);
        EXPECT_EQ(nks::pairOf(R, alpha, lambda), p) << text;
        EXPECT_EQ(Q.grade(alpha, lambda), w) << text;
      }
    }
  }
}

TEST(NKS, DFormRank1) {
  OrbitQuiver R(IQuiver::parse("A1; inv:"));
  for (int w1 = 0; w1 <= 6; ++w1)
    for (int v1 = 0; 2 * v1 <= w1; ++v1)
      for (int w2 = 0; w2 <= 6; ++w2)
        for (int v2 = 0; 2 * v2 <= w2; ++v2) {
          DominantPair p1{{v1}, {w1}}, p2{{v2}, {w2}};
          EXPECT_EQ(nks::dForm(R, p1, p2), (w1 - 2 * v1) * v2 + v1 * w2);
          EXPECT_EQ(nks::leadingExponent(R, p1, p2), 0);
        }
  EXPECT_EQ(nks::dForm(R, {{1}, {3}}, {{0}, {0}}), 0);
}

TEST(NKS, LeadingExponentAntisymmetric) {
  std::mt19937_64 rng(11);
  for (const char* text : configurations()) {
    IQuiver Q = IQuiver::parse(text);
    OrbitQuiver R(Q);
    std::vector<DominantPair> ps;
    for (const DimVector& w : gradesUpTo(Q.size(), 3))
      for (const DominantPair& p : nks::dominantPairs(R, w)) ps.push_back(p);
    for (int trial = 0; trial < 40; ++trial) {
      const DominantPair& a = ps[rng() % ps.size()];
      const DominantPair& b = ps[rng() % ps.size()];
      EXPECT_EQ(nks::leadingExponent(R, a, b), -nks::leadingExponent(R, b, a));
      EXPECT_EQ(nks::leadingExponent(R, a, a), 0);
    }
  }
}

TEST(NKS, LeadingTermsMatchSolver) {
  bool nonzero = false;
  for (const char* text : {"A2; arrows: 1>2", "A1+A1; arrows:; inv: 1:2"}) {
    IQuiver Q = IQuiver::parse(text);
    OrbitQuiver R(Q);
    IHallAlgebra H(Q, "");
    DCBSolver S(H);
    nks::LeadingTermReport r = nks::compareLeadingTerms(R, S, 3);
    EXPECT_TRUE(r.ok()) << text << ": " << (r.ok() ? "" : r.mismatches[0]);
    EXPECT_GT(r.compared, 0);
    std::vector<DominantPair> ps;
    for (const DimVector& w : gradesUpTo(Q.size(), 2))
      for (const DominantPair& p : nks::dominantPairs(R, w)) ps.push_back(p);
    for (const DominantPair& a : ps)
      for (const DominantPair& b : ps) nonzero |= nks::leadingExponent(R, a, b) != 0;
  }
  EXPECT_TRUE(nonzero);
}
