#pragma once

#include <functional>
#include <vector>

#include <json.hpp>

#include "ihall/laurent.hpp"
#include "ihall/quiver.hpp"

namespace ihall {

// Module over the iquiver algebra: arrow maps x_h plus eps_i : V_i -> V_{rho i}.
struct LamIModule {
  unsigned q = 2;
  DimVector dims;
  std::vector<FqMatrix> x;    // x[h] is dims[t] x dims[s]
  std::vector<FqMatrix> eps;  // eps[i] is dims[rho i] x dims[i]

  int totalDim() const;
};

struct NormalForm {
  KostantPartition partition;
  DimVector gamma;
  friend bool operator==(const NormalForm&, const NormalForm&) = default;
  friend auto operator<=>(const NormalForm&, const NormalForm&) = default;
};

// Q arrows followed by one arrow i -> rho(i) per vertex.
std::vector<Arrow> extendedArrows(const IQuiver& Q);
Representation asRepresentation(const LamIModule& M);

LamIModule zeroLamI(const IQuiver& Q, unsigned q);
LamIModule fromKQ(const IQuiver& Q, const Representation& X);
LamIModule kqModule(const IQuiver& Q, const KostantPartition& lambda, unsigned q);
// Generalized simple K_i: k[eps]/eps^2 at i when rho i = i, else S_i -> S_{rho i}.
LamIModule kModule(const IQuiver& Q, int i, unsigned q);
LamIModule kModule(const IQuiver& Q, const DimVector& gamma, unsigned q);
LamIModule directSum(const LamIModule& a, const LamIModule& b);
// Restriction dimension of K_gamma: sum of gamma_i (e_i + e_{rho i}).
DimVector kDim(const IQuiver& Q, const DimVector& gamma);

bool satisfiesRelations(const IQuiver& Q, const LamIModule& M);

FqMatrix homSpace(const IQuiver& Q, const LamIModule& M, const LamIModule& N);
int homDim(const IQuiver& Q, const LamIModule& M, const LamIModule& N);
bool isIsomorphic(const IQuiver& Q, const LamIModule& A, const LamIModule& B);
BigInt autOrder(const IQuiver& Q, const LamIModule& M);

// Submodule and quotient for subspaces spanned by the columns of bases[i].
LamIModule subModule(const IQuiver& Q, const LamIModule& M, const std::vector<FqMatrix>& bases);
LamIModule quotientModule(const IQuiver& Q, const LamIModule& M, const std::vector<FqMatrix>& bases);

KostantPartition partitionOf(const IQuiver& Q, const LamIModule& X);
// kQ-module ker(eps) / im(eps) with induced arrow maps.
LamIModule epsHomology(const IQuiver& Q, const LamIModule& L);
NormalForm reduceToNormalForm(const IQuiver& Q, const LamIModule& L);

// Cocycle model of Ext^1(M, N) for 0 -> N -> L -> M -> 0: D(M, N) is the space
// of (w_h : M_s -> N_t, eta_i : M_i -> N_{rho i}) keeping the block module a
// module; the coboundaries are the image of (s_i : M_i -> N_i).
class ExtensionSpace {
 public:
  // Keeps a reference to Q.
  ExtensionSpace(const IQuiver& Q, LamIModule M, LamIModule N);

  int dimD() const { return dimD_; }
  int rankCoboundary() const { return rankAlpha_; }
  int dimExt() const { return static_cast<int>(complement_.cols); }
  int dimHom() const { return homSource_ - rankAlpha_; }
  // Block middle term for complement coordinates c.
  LamIModule middleTerm(const std::vector<Fq>& c) const;
  // Only the eps matrices of the middle term; arrow maps left empty.
  void middleEps(const std::vector<Fq>& c, std::vector<FqMatrix>& eps) const;

 private:
  const IQuiver* Q_;
  LamIModule M_, N_;
  std::vector<int> wOffset_, etaOffset_;
  int vars_ = 0, dimD_ = 0, rankAlpha_ = 0, homSource_ = 0;
  FqMatrix complement_;
};

// Calls f(coords, weight) on representatives of nonzero lines plus the origin;
// weights sum to q^dim. Valid whenever the quantity of interest is invariant
// under scaling the cocycle.
void forEachProjectiveRep(int dim, unsigned q, const std::function<void(const std::vector<Fq>&, long)>& f);

struct MiddleTerm {
  LamIModule module;
  BigInt count;
};

// One entry per isoclass of middle terms; counts sum to q^dim Ext^1.
std::vector<MiddleTerm> extMiddleTerms(const IQuiver& Q, const LamIModule& M, const LamIModule& N,
                                       long budget = 1L << 16);

nlohmann::json moduleToJson(const LamIModule& M);

}  // namespace ihall
