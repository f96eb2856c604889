#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "ihall/dcb.hpp"
#include "ihall/ihallalg.hpp"

namespace ihall::verify {

struct SuiteResult {
  SuiteResult() = default;
  explicit SuiteResult(std::string n) : name(std::move(n)) {}

  std::string name;
  long checks = 0;
  std::vector<std::string> failures;  // first kMaxFailures only
  long failureCount = 0;
  nlohmann::json details = nlohmann::json::object();

  static constexpr std::size_t kMaxFailures = 20;
  bool ok() const { return failureCount == 0; }
  void check(bool cond, const std::string& what);
  void fail(const std::string& what) { check(false, what); }
  void merge(const SuiteResult& o);
  nlohmann::json toJson() const;
};

// Hall basis symbol with alpha in {-1, 0, 1}^I and |lambda| <= maxHeight, times a small coefficient.
AlgElement randomHallElement(IHallAlgebra& H, std::mt19937_64& rng, int maxHeight);

// Lclosed = Lrecurrence for n <= maxN; multiplyL against BK arithmetic for
// w1 + w2 <= maxW; expandMonomial against Lclosed for a + 2b <= maxMonomial;
// semismall equality for w <= maxStrata.
SuiteResult rank1Suite(int maxN = 40, int maxW = 12, int maxMonomial = 24, int maxStrata = 50);

// Split A1 against the rank-1 oracle under B -> v^(-1/2) u, K -> K_1.
SuiteResult rank1EngineSuite(int maxHeight, const std::string& cacheDir);
// A1 + A1 with swap against the Drinfeld double relations, with
// E -> v^(-1/2) u_1, F -> v^(-1/2) u_2, K -> K_2, K' -> K_1.
SuiteResult drinfeldDoubleSuite(const std::string& cacheDir);

// Involution and anti-homomorphism on random pairs; bar matrices unitriangular.
SuiteResult barSuite(IHallAlgebra& H, int maxHeight, int randomPairs, std::uint64_t seed);
// Triples of Hall basis symbols with |lambda| <= 2 each and combined |lambda| <= maxTotalHeight.
SuiteResult assocSuite(IHallAlgebra& H, int trials, std::uint64_t seed, int maxTotalHeight = 4);
// Existence, uniqueness across tie-breaks, bar invariance, v^-1 Z[v^-1]
// off-diagonal entries, order support and K_alpha <> L_lambda factorization.
SuiteResult integralitySuite(DCBSolver& S, int maxHeight);
SuiteResult positivitySuite(DCBSolver& S, int maxHeight);
SuiteResult orientationSuite(DCBSolver& S, DCBSolver& other, int maxHeight);
// Dictionary round trip and counts for |w| <= maxW; rank-1 dominance and
// vanishing exponent when Q is split A1; leading terms against the solver for
// combined height <= leadingHeight (skipped when 0).
SuiteResult nksSuite(DCBSolver& S, int maxW, int leadingHeight);
// Every holdout check since process start passed, and at least one ran.
SuiteResult holdoutSuite();

}  // namespace ihall::verify
