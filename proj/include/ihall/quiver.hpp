#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "ihall/galois.hpp"

namespace ihall {

using DimVector = std::vector<int>;
// Multiplicity per positive root, indexed in positiveRoots() order.
using KostantPartition = std::vector<int>;

struct Arrow {
  int source;
  int target;
  friend bool operator==(const Arrow&, const Arrow&) = default;
  friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

// Matrices over GF(q) attached to an arrow list; maps[h] is dims[t] x dims[s].
struct Representation {
  unsigned q = 2;
  DimVector dims;
  std::vector<FqMatrix> maps;

  int totalDim() const;
};

// Basis of intertwiners M -> N for representations over the same arrow list.
// Each column is a flattened family (f_i), f_i stored row-major in vertex order.
FqMatrix homBasis(const GaloisField& F, const std::vector<Arrow>& arrows, const Representation& M,
                  const Representation& N);
// Block f_i of a flattened intertwiner column.
FqMatrix homComponent(const FqMatrix& basis, int column, const DimVector& dimsM, const DimVector& dimsN, int vertex);
Representation directSum(const Representation& a, const Representation& b);

class IQuiver {
 public:
  // Vertices 0..n-1. rho empty means identity.
  IQuiver(std::string type, int n, std::vector<Arrow> arrows, std::vector<int> rho = {});
  // "A3; arrows: 1>2, 3>2; inv: 1:3" with 1-based vertices.
  static IQuiver parse(const std::string& text);

  const std::string& type() const { return type_; }
  int size() const { return n_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::vector<int>& rho() const { return rho_; }
  // Index of the arrow rho(h).
  int arrowRho(int h) const { return arrowRho_[h]; }
  bool isSplit() const;

  std::string normalForm() const;
  std::uint64_t hash() const;
  std::string hashHex() const;
  // Same vertices and involution with the listed arrows reversed.
  IQuiver reversed(const std::vector<int>& arrowIndices) const;

  const Eigen::MatrixXi& euler() const { return euler_; }
  const Eigen::MatrixXi& sym() const { return sym_; }
  int eulerForm(const DimVector& a, const DimVector& b) const;
  int symForm(const DimVector& a, const DimVector& b) const;

  const std::vector<DimVector>& positiveRoots() const { return roots_; }
  int rootIndex(const DimVector& beta) const;
  int numRoots() const { return static_cast<int>(roots_.size()); }
  DimVector simple(int i) const;
  DimVector rhoDim(const DimVector& d) const;
  // Root permutation induced by rho.
  int rhoRoot(int r) const { return rhoRoot_[r]; }
  KostantPartition rhoPartition(const KostantPartition& lambda) const;
  KostantPartition emptyPartition() const { return KostantPartition(roots_.size(), 0); }
  KostantPartition single(int root, int mult = 1) const;
  DimVector dimVector(const KostantPartition& lambda) const;
  std::vector<KostantPartition> partitions(const DimVector& d) const;
  // Vertices ordered so that each is a sink after reflecting at its predecessors.
  const std::vector<int>& sinkOrder() const { return sinkOrder_; }

  Representation indecomposable(int root, unsigned q) const;
  Representation module(const KostantPartition& lambda, unsigned q) const;
  Representation zeroModule(unsigned q) const;

  // Tables over indecomposables, agreed at q = 2 and q = 3.
  int homRoots(int a, int b) const;
  int homDim(const KostantPartition& m, const KostantPartition& n) const;
  int extDim(const KostantPartition& m, const KostantPartition& n) const;
  int dimEnd(const KostantPartition& m) const { return homDim(m, m); }

  // Orbit of lambda strictly inside the closure of the orbit of mu:
  // hom(X, lambda) >= hom(X, mu) for all indecomposables X, strictly somewhere.
  bool degenerationLess(const KostantPartition& lambda, const KostantPartition& mu) const;
  DimVector grade(const DimVector& alpha, const KostantPartition& lambda) const;
  bool extendedOrderLess(const DimVector& alpha, const KostantPartition& lambda, const DimVector& beta,
                         const KostantPartition& mu) const;

  nlohmann::json partitionToJson(const KostantPartition& lambda) const;
  KostantPartition partitionFromJson(const nlohmann::json& j) const;

 private:
  struct Cache;

  void validate() const;
  Representation buildIndecomposable(int root, unsigned q) const;
  const std::vector<int>& homTable() const;

  std::string type_;
  int n_;
  std::vector<Arrow> arrows_;
  std::vector<int> rho_;
  std::vector<int> arrowRho_;
  Eigen::MatrixXi euler_, sym_;
  std::vector<DimVector> roots_;
  std::vector<int> rhoRoot_;
  std::vector<int> sinkOrder_;
  std::shared_ptr<Cache> cache_;
};

int height(const DimVector& d);
std::string dimString(const DimVector& d);

}  // namespace ihall
