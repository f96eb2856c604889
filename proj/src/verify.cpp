#include "ihall/verify.hpp"

#include <sstream>

#include "ihall/errors.hpp"
#include "ihall/hallgen.hpp"
#include "ihall/nks.hpp"
#include "ihall/rank1.hpp"

namespace ihall::verify {

namespace {

HalfLaurent v(int e) { return HalfLaurent::vpow(e); }

std::string show(const IHallAlgebra& H, const AlgElement& a) { return H.toJson(a).dump(); }

}  // namespace

void SuiteResult::check(bool cond, const std::string& what) {
  ++checks;
  if (cond) return;
  ++failureCount;
  if (failures.size() < kMaxFailures) failures.push_back(what);
}

void SuiteResult::merge(const SuiteResult& o) {
  checks += o.checks;
  failureCount += o.failureCount;
  for (const std::string& f : o.failures)
    if (failures.size() < kMaxFailures) failures.push_back(o.name + ": " + f);
  details[o.name] = o.details;
}

nlohmann::json SuiteResult::toJson() const {
  return {{"suite", name}, {"pass", ok()},       {"checks", checks},
          {"failures", failureCount}, {"failure_samples", failures}, {"details", details}};
}

AlgElement randomHallElement(IHallAlgebra& H, std::mt19937_64& rng, int maxHeight) {
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
  static const std::vector<HalfLaurent> coeffs{HalfLaurent(1), v(1), HalfLaurent::monomial(1, -1),
                                               HalfLaurent(2) - v(-2)};
  return AlgElement::symbol(s, coeffs[rng() % coeffs.size()]);
}

SuiteResult rank1Suite(int maxN, int maxW, int maxMonomial, int maxStrata) {
  using namespace rank1;
  SuiteResult r{"rank1"};
  long closed = 0, ring = 0, monomial = 0, strata = 0;
  for (int n = 0; n <= maxN; ++n)
    for (int k = 0; 2 * k <= n; ++k, ++closed)
      r.check(Lclosed(k, n) == Lrecurrence(k, n), "Lclosed != Lrecurrence at " + std::to_string(k) + "," +
                                                      std::to_string(n));
  for (int w1 = 0; w1 <= maxW; ++w1)
    for (int w2 = 0; w1 + w2 <= maxW; ++w2)
      for (int v1 = 0; 2 * v1 <= w1; ++v1)
        for (int v2 = 0; 2 * v2 <= w2; ++v2, ++ring) {
          BKPolynomial lhs = Lclosed(v1, w1) * Lclosed(v2, w2), rhs;
          for (auto [vv, ww] : multiplyL({v1, w1}, {v2, w2})) rhs += Lclosed(vv, ww);
          r.check(lhs == rhs, "multiplyL at (" + std::to_string(v1) + "," + std::to_string(w1) + ")(" +
                                  std::to_string(v2) + "," + std::to_string(w2) + ")");
        }
  for (int b = 0; 2 * b <= maxMonomial; ++b)
    for (int a = 0; a + 2 * b <= maxMonomial; ++a, ++monomial) {
      BKPolynomial sum;
      for (const MonomialTerm& t : expandMonomial(a, b))
        sum += Lclosed(t.index.first, t.index.second).scaled(HalfLaurent(t.coeff));
      r.check(sum == BKPolynomial::monomial(a, b), "expandMonomial at " + std::to_string(a) + "," + std::to_string(b));
    }
  for (int w = 0; w <= maxStrata; ++w)
    for (int vv = 0; 2 * vv <= w; ++vv)
      for (int vp = 0; vp <= vv; ++vp, ++strata) {
        StrataDims d = strataDims(vv, vp, w);
        r.check(2 * d.fiberDim + d.dimStratum == d.dimM && d.relevant, "semismall at " + std::to_string(vv) + "," +
                                                                             std::to_string(vp) + "," + std::to_string(w));
      }
  r.details = {{"closed_vs_recurrence", closed}, {"ring_products", ring}, {"monomials", monomial}, {"strata", strata}};
  return r;
}

SuiteResult rank1EngineSuite(int maxHeight, const std::string& cacheDir) {
  SuiteResult r{"rank1-engine"};
  IQuiver Q = IQuiver::parse("A1; inv:");
  IHallAlgebra H(Q, cacheDir);
  DCBSolver S(H);
  AlgElement u = H.generator(0);
  AlgElement square = H.u({2}).scaled(v(-1)) + H.k({1}).scaled(v(1) - v(-1));
  r.check(H.multiply(u, u) == square, "u * u = " + show(H, H.multiply(u, u)));
  AlgElement L2 = H.rescaledU({2}) - H.diamond({1}, H.one()).scaled(v(-2));
  r.check(S.element({{0}, {2}}) == L2, "L_2 = " + show(H, S.element({{0}, {2}})));
  long compared = 0;
  for (int n = 0; n <= maxHeight; ++n)
    for (int b = 0; 2 * b <= n; ++b, ++compared) {
      int a = n - 2 * b;
      AlgElement expect;
      rank1::BKPolynomial L = rank1::Lclosed(b, a + 2 * b);
      for (const auto& [key, c] : L.terms()) {
        auto [ea, eb] = key;
        expect += H.expandWord({{eb}, std::vector<int>(ea, 0)}).scaled(c.shifted(-ea));
      }
      r.check(S.element({{b}, {a}}) == expect, "L(" + std::to_string(b) + "," + std::to_string(a + 2 * b) + ")");
    }
  r.details = {{"max_height", maxHeight}, {"basis_elements", compared}};
  return r;
}

SuiteResult drinfeldDoubleSuite(const std::string& cacheDir) {
  SuiteResult r{"drinfeld-double"};
  IQuiver Q = IQuiver::parse("A1+A1; arrows:; inv: 1:2");
  IHallAlgebra H(Q, cacheDir);
  HalfLaurent h = HalfLaurent::monomial(1, -1);
  AlgElement E = H.generator(0).scaled(h), F = H.generator(1).scaled(h);
  AlgElement K = H.k({0, 1}), Kp = H.k({1, 0}), Kinv = H.k({0, -1}), Kpinv = H.k({-1, 0});
  auto mul = [&](const AlgElement& a, const AlgElement& b) { return H.multiply(a, b); };
  AlgElement comm = mul(E, F) - mul(F, E);
  r.check(comm == (K - Kp).scaled(v(-1) - v(1)), "[E,F] = " + show(H, comm));
  r.check(mul(K, E) == mul(E, K).scaled(v(2)), "K E");
  r.check(mul(K, F) == mul(F, K).scaled(v(-2)), "K F");
  r.check(mul(Kp, E) == mul(E, Kp).scaled(v(-2)), "K' E");
  r.check(mul(Kp, F) == mul(F, Kp).scaled(v(2)), "K' F");
  r.check(mul(K, Kp) == mul(Kp, K), "K K'");
  r.check(mul(K, Kinv) == H.one() && mul(Kp, Kpinv) == H.one(), "K invertible");
  r.details = {{"commutator", H.toJson(comm)}};
  return r;
}

SuiteResult barSuite(IHallAlgebra& H, int maxHeight, int randomPairs, std::uint64_t seed) {
  SuiteResult r{"bar"};
  const IQuiver& Q = H.quiver();
  std::mt19937_64 rng(seed);
  for (int t = 0; t < randomPairs; ++t) {
    AlgElement a = randomHallElement(H, rng, 2), b = randomHallElement(H, rng, 2);
    r.check(H.barInvolve(H.barInvolve(a)) == a, "bar not involutive on " + show(H, a));
    r.check(H.barInvolve(H.multiply(a, b)) == H.multiply(H.barInvolve(b), H.barInvolve(a)),
            "bar not anti-multiplicative on " + show(H, a) + " * " + show(H, b));
  }
  DCBSolver S(H);
  long pieces = 0;
  for (const DimVector& g : gradesUpTo(Q.size(), maxHeight)) {
    ++pieces;
    try {
      GradedPiece p = S.buildGradedPiece(g);
      for (std::size_t j = 0; j < p.basis.size(); ++j)
        for (std::size_t k = 0; k < p.basis.size(); ++k) {
          const HalfLaurent& e = p.barMatrix(k, j);
          if (k == j)
            r.check(e == HalfLaurent(1), "diagonal at " + symbolString(Q, p.basis[j]));
          else if (!e.isZero())
            r.check(Q.extendedOrderLess(p.basis[j].alpha, p.basis[j].lambda, p.basis[k].alpha, p.basis[k].lambda),
                    "bar of " + symbolString(Q, p.basis[j]) + " meets " + symbolString(Q, p.basis[k]));
        }
    } catch (const Error& e) {
      r.fail(dimString(g) + ": " + e.what());
    }
  }
  r.details = {{"random_pairs", randomPairs}, {"graded_pieces", pieces}, {"max_height", maxHeight}};
  return r;
}

SuiteResult assocSuite(IHallAlgebra& H, int trials, std::uint64_t seed, int maxTotalHeight) {
  SuiteResult r{"assoc"};
  std::mt19937_64 rng(seed);
  const IQuiver& Q = H.quiver();
  auto lambdaHeight = [&](const AlgElement& x) { return height(Q.dimVector(x.terms().begin()->first.lambda)); };
  long rejected = 0;
  for (int t = 0; t < trials; ++t) {
    AlgElement a, b, c;
    while (true) {
      a = randomHallElement(H, rng, 2);
      b = randomHallElement(H, rng, 2);
      c = randomHallElement(H, rng, 2);
      if (lambdaHeight(a) + lambdaHeight(b) + lambdaHeight(c) <= maxTotalHeight) break;
      ++rejected;
    }
    r.check(H.multiply(H.multiply(a, b), c) == H.multiply(a, H.multiply(b, c)),
            show(H, a) + " " + show(H, b) + " " + show(H, c));
  }
  r.details = {{"triples", trials}, {"seed", seed}, {"max_total_height", maxTotalHeight}, {"rejected", rejected}};
  return r;
}

SuiteResult integralitySuite(DCBSolver& S, int maxHeight) {
  SuiteResult r{"integrality"};
  IHallAlgebra& H = S.algebra();
  const IQuiver& Q = H.quiver();
  long elements = 0;
  for (const DimVector& g : gradesUpTo(Q.size(), maxHeight)) {
    try {
      const DCBasis& b = S.basis(g);
      DCBasis alt = S.solve(S.buildGradedPiece(g, TieBreak::Reverse));
      for (std::size_t j = 0; j < b.basis.size(); ++j, ++elements) {
        const Symbol& s = b.basis[j];
        std::string name = symbolString(Q, s);
        AlgElement L = S.element(s);
        r.check(H.barInvolve(L) == L, "not bar invariant: " + name);
        for (Eigen::Index k = 0; k < b.transition.rows(); ++k) {
          const HalfLaurent& t = b.transition(k, static_cast<Eigen::Index>(j));
          if (k == static_cast<Eigen::Index>(j)) {
            r.check(t == HalfLaurent(1), "diagonal " + name);
          } else if (!t.isZero()) {
            r.check(inVinvZVinv(t), "entry " + t.str() + " in " + name);
            r.check(Q.extendedOrderLess(s.alpha, s.lambda, b.basis[k].alpha, b.basis[k].lambda), "support " + name);
          }
        }
        int ja = alt.indexOf(s);
        AlgElement La;
        for (Eigen::Index k = 0; k < alt.transition.rows(); ++k)
          if (!alt.transition(k, ja).isZero()) La += S.standard(alt.basis[k]).scaled(alt.transition(k, ja));
        r.check(La == L, "tie-break dependence at " + name);
        Symbol base{DimVector(Q.size(), 0), s.lambda};
        r.check(L == H.diamond(s.alpha, S.element(base)), "factorization " + name);
      }
    } catch (const Error& e) {
      r.fail(dimString(g) + ": " + e.what());
    }
  }
  r.details = {{"max_height", maxHeight}, {"basis_elements", elements}};
  return r;
}

SuiteResult positivitySuite(DCBSolver& S, int maxHeight) {
  SuiteResult r{"positivity"};
  try {
    PositivityReport p = verifyPositivity(S, maxHeight);
    r.checks = p.inverseEntries + p.structureConstants;
    for (const Violation& x : p.violations) {
      ++r.failureCount;
      if (r.failures.size() < SuiteResult::kMaxFailures) r.failures.push_back(x.what + ": " + x.detail);
    }
    r.details = {{"max_height", maxHeight}, {"inverse_entries", p.inverseEntries},
                 {"structure_constants", p.structureConstants}};
  } catch (const Error& e) {
    r.fail(e.what());
  }
  return r;
}

SuiteResult orientationSuite(DCBSolver& S, DCBSolver& other, int maxHeight) {
  SuiteResult r{"orientation"};
  try {
    OrientationReport o = orientationCompare(S, other, maxHeight);
    r.checks = o.compared;
    for (const Violation& x : o.mismatches) {
      ++r.failureCount;
      if (r.failures.size() < SuiteResult::kMaxFailures) r.failures.push_back(x.what + ": " + x.detail);
    }
    r.details = {{"max_height", maxHeight},
                 {"compared", o.compared},
                 {"quiver", S.algebra().quiver().normalForm()},
                 {"other", other.algebra().quiver().normalForm()}};
  } catch (const Error& e) {
    r.fail(e.what());
  }
  return r;
}

SuiteResult nksSuite(DCBSolver& S, int maxW, int leadingHeight) {
  SuiteResult r{"nks"};
  const IQuiver& Q = S.algebra().quiver();
  nks::OrbitQuiver R(Q);
  bool rank1 = Q.size() == 1 && Q.isSplit();
  long pairs = 0;
  for (const DimVector& w : gradesUpTo(Q.size(), maxW)) {
    std::vector<nks::DominantPair> ps = nks::dominantPairs(R, w);
    std::size_t symbols = 0;
    for (const Symbol& s : S.algebra().symbolsOfGrade(w)) {
      ++symbols;
      try {
        nks::DominantPair p = nks::pairOf(R, s.alpha, s.lambda);
        r.check(std::binary_search(ps.begin(), ps.end(), p), "pairOf " + symbolString(Q, s) + " not dominant");
      } catch (const Error& e) {
        r.fail(e.what());
      }
    }
    r.check(ps.size() == symbols, "pair count " + std::to_string(ps.size()) + " != symbol count " +
                                      std::to_string(symbols) + " at w = " + dimString(w));
    for (const nks::DominantPair& p : ps) {
      ++pairs;
      try {
        auto [alpha, lambda] = nks::lambdaOf(R, p);
        r.check(nks::pairOf(R, alpha, lambda) == p, "round trip at " + nks::toJson(p).dump());
      } catch (const Error& e) {
        r.fail(e.what());
      }
      if (rank1) r.check(p.v[0] >= 0 && 2 * p.v[0] <= w[0], "rank-1 dominance " + nks::toJson(p).dump());
    }
    if (rank1) {
      for (int vv = 0; vv <= w[0] + 1; ++vv)
        r.check(nks::isDominant(R, {{vv}, w}) == (2 * vv <= w[0]), "rank-1 dominance at v = " + std::to_string(vv));
      for (const DimVector& w2 : gradesUpTo(1, maxW))
        for (const nks::DominantPair& p : ps)
          for (const nks::DominantPair& p2 : nks::dominantPairs(R, w2))
            r.check(nks::leadingExponent(R, p, p2) == 0, "rank-1 exponent");
    }
  }
  long leading = 0;
  if (leadingHeight > 0) {
    nks::LeadingTermReport lt = nks::compareLeadingTerms(R, S, leadingHeight);
    leading = lt.compared;
    r.checks += lt.compared;
    for (const std::string& m : lt.mismatches) r.fail(m);
    r.checks -= static_cast<long>(lt.mismatches.size());
  }
  r.details = {{"max_w", maxW}, {"pairs", pairs}, {"leading_height", leadingHeight}, {"leading_terms", leading}};
  return r;
}

SuiteResult holdoutSuite() {
  SuiteResult r{"holdout"};
  HallStats& s = hallStats();
  long checks = s.holdoutChecks.load(), passed = s.holdoutPassed.load();
  r.checks = checks;
  r.check(checks > 0, "no structure table was built");
  --r.checks;
  if (passed != checks) {
    r.failureCount += checks - passed;
    r.failures.push_back(std::to_string(checks - passed) + " holdout mismatches");
  }
  r.details = {{"tables_built", s.tablesBuilt.load()}, {"tables_loaded", s.tablesLoaded.load()},
               {"holdout_checks", checks}, {"holdout_passed", passed}};
  return r;
}

}  // namespace ihall::verify
