#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include <unistd.h>

#include "ihall/errors.hpp"
#include "ihall/hallgen.hpp"

using namespace ihall;

namespace {

const char* kSplitA1 = "A1; inv:";
const char* kDiagA1 = "A1+A1; arrows:; inv: 1:2";
const char* kSplitA2 = "A2; arrows: 1>2";
const char* kQuasiA3 = "A3; arrows: 1>2, 3>2; inv: 1:3";

KostantPartition simplePart(const IQuiver& Q, int i) { return Q.single(Q.rootIndex(Q.simple(i))); }

HalfLaurent v(int e) { return HalfLaurent::vpow(e); }

KostantPartition sum(KostantPartition a, const KostantPartition& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

// Random partition of total height at most maxHeight.
KostantPartition randomPartition(const IQuiver& Q, std::mt19937_64& rng, int maxHeight) {
  KostantPartition p = Q.emptyPartition();
  int budget = static_cast<int>(rng() % (maxHeight + 1));
  for (int tries = 0; tries < 8 && budget > 0; ++tries) {
    int r = static_cast<int>(rng() % Q.numRoots());
    int h = height(Q.positiveRoots()[r]);
    if (h <= budget) {
      ++p[r];
      budget -= h;
    }
  }
  return p;
}

BigInt qpow(unsigned q, int e) {
  BigInt r = 1;
  for (int k = 0; k < e; ++k) r *= q;
  return r;
}

}  // namespace

TEST(HallGen, SamplePrimePowers) {
  const auto& qs = samplePrimePowers();
  std::vector<unsigned> head(qs.begin(), qs.begin() + 10);
  EXPECT_EQ(head, (std::vector<unsigned>{2, 3, 4, 5, 7, 8, 9, 11, 13, 16}));
  EXPECT_EQ(qs.back(), 256u);
}

TEST(HallGen, SplitA1Square) {
  IQuiver Q = IQuiver::parse(kSplitA1);
  HallEngine H(Q, "");
  KostantPartition u = simplePart(Q, 0);
  const StructureTable& t = H.genericProduct(u, u);
  std::map<EntryKey, HalfLaurent> expect{{{KostantPartition{2}, DimVector{0}}, v(-1)},
                                         {{KostantPartition{0}, DimVector{1}}, v(1) - v(-1)}};
  EXPECT_EQ(t.entries, expect);
  EXPECT_EQ(t.holdout, samplePrimePowers()[t.samplesUsed.size()]);
}

TEST(HallGen, ProductAtQSpecializesGenericTable) {
  for (const char* text : {kSplitA1, kSplitA2, kDiagA1, kQuasiA3}) {
    IQuiver Q = IQuiver::parse(text);
    HallEngine H(Q, "");
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 6; ++trial) {
      KostantPartition mu = randomPartition(Q, rng, 2), nu = randomPartition(Q, rng, 2);
      const StructureTable& t = H.genericProduct(mu, nu);
      for (unsigned q : {2u, 3u, 5u}) {
        auto at = H.productAtQ(mu, nu, q);
        std::size_t nonzero = 0;
        for (const auto& [k, val] : at) {
          auto it = t.entries.find(k);
          SqrtValue generic = it == t.entries.end() ? SqrtValue{} : evalAtPrimePower(it->second, q);
          EXPECT_EQ(generic.a, val.a) << text;
          EXPECT_EQ(generic.b, val.b) << text;
          if (val.a != 0 || val.b != 0) ++nonzero;
        }
        EXPECT_EQ(nonzero, t.entries.size());
      }
    }
  }
}

// Sum over iso classes from extMiddleTerms, each reduced separately.
TEST(HallGen, ProductAtQAgreesWithIsoclassSum) {
  for (const char* text : {kSplitA1, kSplitA2, kDiagA1}) {
    IQuiver Q = IQuiver::parse(text);
    HallEngine H(Q, "");
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      KostantPartition mu = randomPartition(Q, rng, 3), nu = randomPartition(Q, rng, 2);
      unsigned q = 2;
      LamIModule M = kqModule(Q, mu, q), N = kqModule(Q, nu, q);
      int hom = homDim(Q, M, N);
      std::map<EntryKey, BigInt> counts;
      for (const auto& t : extMiddleTerms(Q, M, N)) {
        NormalForm nf = reduceToNormalForm(Q, t.module);
        counts[{nf.partition, nf.gamma}] += t.count;
      }
      auto at = H.productAtQ(mu, nu, q);
      ASSERT_EQ(at.size(), counts.size());
      for (const auto& [k, c] : counts) {
        int e = Q.eulerForm(Q.dimVector(mu), Q.dimVector(nu)) - H.basisTwist(k.first, k.second);
        // value = 2^{e/2} c / 2^hom
        BigRat expect = BigRat(c) / BigRat(qpow(q, hom));
        for (int j = 0; j < std::abs(e) / 2; ++j) expect = e > 0 ? BigRat(expect * 2) : BigRat(expect / 2);
        const SqrtValue& got = at.at(k);
        if (e % 2 == 0) {
          EXPECT_EQ(got.a, expect);
          EXPECT_EQ(got.b, 0);
        } else {
          if (e < 0) expect /= 2;
          EXPECT_EQ(got.a, 0);
          EXPECT_EQ(got.b, expect);
        }
      }
    }
  }
}

TEST(HallGen, EmptyFactorIsUnit) {
  IQuiver Q = IQuiver::parse(kQuasiA3);
  HallEngine H(Q, "");
  KostantPartition mu = sum(simplePart(Q, 0), simplePart(Q, 1));
  const StructureTable& left = H.genericProduct(Q.emptyPartition(), mu);
  const StructureTable& right = H.genericProduct(mu, Q.emptyPartition());
  std::map<EntryKey, HalfLaurent> expect{{{mu, DimVector(3, 0)}, HalfLaurent(1)}};
  EXPECT_EQ(left.entries, expect);
  EXPECT_EQ(right.entries, expect);
}

TEST(HallGen, SplitA2Simples) {
  IQuiver Q = IQuiver::parse(kSplitA2);
  HallEngine H(Q, "");
  KostantPartition s1 = simplePart(Q, 0), s2 = simplePart(Q, 1);
  KostantPartition p12 = Q.single(Q.rootIndex({1, 1}));
  // Nonsplit extension 0 -> S2 -> P1 -> S1 -> 0 exists, the other order splits.
  const StructureTable& a = H.genericProduct(s1, s2);
  const StructureTable& b = H.genericProduct(s2, s1);
  EXPECT_EQ(a.entries.size(), 2u);
  EXPECT_TRUE(a.entries.count({p12, DimVector{0, 0}}));
  EXPECT_EQ(b.entries.size(), 1u);
  EXPECT_EQ(b.entries.at({sum(s1, s2), DimVector{0, 0}}), a.entries.at({sum(s1, s2), DimVector{0, 0}}) * v(1));
}

TEST(HallGen, DiagonalCommutator) {
  IQuiver Q = IQuiver::parse(kDiagA1);
  HallEngine H(Q, "");
  KostantPartition e = simplePart(Q, 0), f = simplePart(Q, 1);
  const StructureTable& ef = H.genericProduct(e, f);
  const StructureTable& fe = H.genericProduct(f, e);
  EntryKey both{sum(e, f), DimVector{0, 0}};
  EXPECT_EQ(ef.entries.at(both), fe.entries.at(both));
  ASSERT_EQ(ef.entries.size(), 2u);
  ASSERT_EQ(fe.entries.size(), 2u);
  HalfLaurent c1 = ef.entries.at({Q.emptyPartition(), DimVector{1, 0}});
  HalfLaurent c2 = fe.entries.at({Q.emptyPartition(), DimVector{0, 1}});
  EXPECT_EQ(c1, c2);
  EXPECT_FALSE(c1.isZero());
}

TEST(HallGen, KCommutation) {
  IQuiver split = IQuiver::parse(kSplitA1);
  HallEngine Hs(split, "");
  EXPECT_EQ(Hs.kCommutation(0, simplePart(split, 0)), 0);
  IQuiver diag = IQuiver::parse(kDiagA1);
  HallEngine Hd(diag, "");
  KostantPartition e = simplePart(diag, 0);
  EXPECT_EQ(Hd.kCommutation(0, e), -Hd.kCommutation(1, e));
  EXPECT_EQ(std::abs(Hd.kCommutation(0, e)), 2);
}

// All middle terms of [K_gamma] * [X] reduce to (X, gamma).
TEST(HallGen, KTimesModuleIsSingleTerm) {
  for (const char* text : {kSplitA1, kSplitA2, kDiagA1, kQuasiA3}) {
    IQuiver Q = IQuiver::parse(text);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
      KostantPartition lambda = randomPartition(Q, rng, 3);
      DimVector gamma(Q.size());
      for (int& g : gamma) g = static_cast<int>(rng() % 2);
      for (unsigned q : {2u, 3u}) {
        auto terms = extMiddleTerms(Q, kModule(Q, gamma, q), kqModule(Q, lambda, q));
        for (const auto& t : terms) EXPECT_EQ(reduceToNormalForm(Q, t.module), (NormalForm{lambda, gamma})) << text;
      }
    }
  }
}

TEST(HallGen, GradingAndRhoSymmetry) {
  IQuiver Q = IQuiver::parse(kQuasiA3);
  HallEngine H(Q, "");
  std::mt19937_64 rng(17);
  DimVector zero(3, 0);
  for (int trial = 0; trial < 12; ++trial) {
    KostantPartition mu = randomPartition(Q, rng, 2), nu = randomPartition(Q, rng, 2);
    DimVector g = Q.grade(zero, sum(mu, nu));
    const StructureTable& t = H.genericProduct(mu, nu);
    for (const auto& [k, c] : t.entries) EXPECT_EQ(Q.grade(k.second, k.first), g);
    const StructureTable& r = H.genericProduct(Q.rhoPartition(mu), Q.rhoPartition(nu));
    ASSERT_EQ(r.entries.size(), t.entries.size());
    for (const auto& [k, c] : t.entries) EXPECT_EQ(r.entries.at({Q.rhoPartition(k.first), Q.rhoDim(k.second)}), c);
  }
}

TEST(HallGen, CacheRoundTripAndConflict) {
  IQuiver Q = IQuiver::parse(kSplitA1);
  auto dir = std::filesystem::temp_directory_path() / ("ihall-cache-test-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  KostantPartition u = simplePart(Q, 0);
  StructureTable built;
  {
    HallEngine H(Q, dir.string());
    built = H.genericProduct(u, u);
    EXPECT_EQ(H.cache().size(), 1u);
  }
  long loadedBefore = hallStats().tablesLoaded;
  {
    HallEngine H(Q, dir.string());
    EXPECT_EQ(H.genericProduct(u, u), built);
    EXPECT_EQ(hallStats().tablesLoaded, loadedBefore + 1);
    H.cache().insert(built);
    StructureTable bad = built;
    bad.entries.begin()->second = bad.entries.begin()->second + HalfLaurent(1);
    EXPECT_THROW(H.cache().insert(bad), CacheConflict);
  }
  TableCache other(IQuiver::parse(kSplitA2), dir.string());
  EXPECT_EQ(other.size(), 0u);
  std::filesystem::remove_all(dir);
}

TEST(HallGen, BudgetExceeded) {
  IQuiver Q = IQuiver::parse(kSplitA1);
  HallEngine H(Q, "");
  H.setBudget(1);
  KostantPartition u = simplePart(Q, 0);
  EXPECT_THROW(H.productAtQ(u, u, 2), BudgetExceeded);
}
