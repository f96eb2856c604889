#pragma once

#include <utility>
#include <vector>

#include <json.hpp>

#include "ihall/laurent.hpp"
#include "ihall/quiver.hpp"

namespace ihall {
class DCBSolver;
}

namespace ihall::nks {

// Indecomposable of D_Q: shift^shift of the module at positiveRoots()[root].
struct Label {
  int root;
  int shift;
  friend bool operator==(const Label&, const Label&) = default;
};

// Repetition quiver ZQ modulo F = shift o rho, with frozen vertices for the
// simples. Non-frozen vertices are the indecomposable kQ-modules (shift 0 is a
// fundamental domain), indexed like positiveRoots(); frozen vertex i is
// sigma(S_i).
//
// ZQ is labeled with the projective P_i at (i, 0): arrows (j, p) -> (i, p) for
// each arrow i -> j of Q and (i, p - 1) -> (j, p), tau(i, p) = (i, p - 1).
class OrbitQuiver {
 public:
  explicit OrbitQuiver(IQuiver Q);

  const IQuiver& quiver() const { return Q_; }
  int size() const { return static_cast<int>(tau_.size()); }
  int frozenCount() const { return Q_.size(); }
  int tau(int x) const { return tau_[x]; }
  // Non-frozen arrows with multiplicity.
  const std::vector<Arrow>& arrows() const { return arrows_; }
  // Vertex of S_i, i.e. the target of the frozen arrow out of sigma(S_i).
  int simpleVertex(int i) const { return simple_[i]; }
  bool isInjective(int x) const { return injective_[x]; }
  // Label of (i, p) for p in [-1, window()].
  Label label(int i, int p) const;
  int window() const { return window_; }

  std::vector<int> quantumCartan(const std::vector<int>& v) const;
  std::vector<int> sigmaStar(const std::vector<int>& w) const;
  std::vector<int> tauStar(const std::vector<int>& v) const;
  // v^i(z) = sum_k dim Hom_D(S_i, F^k z) = hom(S_i, z) + ext^1(S_i, rho z).
  const std::vector<int>& vi(int i) const { return vi_[i]; }
  std::vector<int> wi(int i) const;

  nlohmann::json toJson() const;

 private:
  IQuiver Q_;
  int window_ = 0;
  std::vector<std::vector<Label>> labels_;  // [i][p + 1]
  std::vector<int> tau_;
  std::vector<Arrow> arrows_;
  std::vector<int> simple_;
  std::vector<bool> injective_;
  std::vector<std::vector<int>> vi_;
};

struct DominantPair {
  std::vector<int> v;  // per non-frozen vertex
  std::vector<int> w;  // per frozen vertex
  friend bool operator==(const DominantPair&, const DominantPair&) = default;
  friend auto operator<=>(const DominantPair&, const DominantPair&) = default;
};

DominantPair operator+(const DominantPair& a, const DominantPair& b);
int dot(const std::vector<int>& a, const std::vector<int>& b);

bool isDominant(const OrbitQuiver& R, const DominantPair& p);
// sigma* w - C_q v
std::vector<int> defect(const OrbitQuiver& R, const DominantPair& p);

// Every l-dominant pair with the given w, found by exhausting the box
// v(x) <= |w| * max_i v^i(x); sorted.
std::vector<DominantPair> dominantPairs(const OrbitQuiver& R, const std::vector<int>& w);

// Throws NotDominant, or NoDecomposition when the pair does not split as
// (v_lambda, w_lambda) + sum alpha_i (v^(rho i), w^i) with alpha >= 0.
std::pair<DimVector, KostantPartition> lambdaOf(const OrbitQuiver& R, const DominantPair& p);
// v_lambda is supported on non-injective vertices. Throws NoSolution.
DominantPair pairOf(const OrbitQuiver& R, const DimVector& alpha, const KostantPartition& lambda);

int dForm(const OrbitQuiver& R, const DominantPair& p1, const DominantPair& p2);
int leadingExponent(const OrbitQuiver& R, const DominantPair& p1, const DominantPair& p2);

nlohmann::json toJson(const DominantPair& p);

struct LeadingTermReport {
  long compared = 0;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};
// For dominant pairs p1, p2 with |w1| + |w2| <= maxHeight, the coefficient of
// L(p1 + p2) in L(p1) L(p2), computed in the dual canonical basis of `solver`,
// must be v^(leadingExponent(p1, p2)) up to the half-twist
// v^(<w1,w2> - <w2,w1>)/2 of the graded dual.
LeadingTermReport compareLeadingTerms(const OrbitQuiver& R, DCBSolver& solver, int maxHeight);

}  // namespace ihall::nks
