#include "ihall/modfq.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "ihall/errors.hpp"

namespace ihall {

namespace {

// Sparse-free builder for linear maps between flattened block variables:
// out(a, b) += sign * sum_{p,q} A(a, p) In(p, q) B(q, b).
struct Block {
  int offset, rows, cols;
};

void addTerm(const GaloisField& F, FqMatrix& map, Block out, const FqMatrix* A, Block in, const FqMatrix* B,
             bool negate) {
  for (int a = 0; a < out.rows; ++a)
    for (int p = 0; p < in.rows; ++p) {
      Fq av = A ? (*A)(a, p) : static_cast<Fq>(a == p);
      if (!av) continue;
      for (int q = 0; q < in.cols; ++q)
        for (int b = 0; b < out.cols; ++b) {
          Fq bv = B ? (*B)(q, b) : static_cast<Fq>(q == b);
          if (!bv) continue;
          Fq c = F.mul(av, bv);
          if (negate) c = F.neg(c);
          Fq& cell = map(out.offset + a * out.cols + b, in.offset + p * in.cols + q);
          cell = F.add(cell, c);
        }
    }
}

FqMatrix power(const GaloisField& F, const FqMatrix& m, int e) {
  FqMatrix r = FqMatrix::identity(m.rows);
  for (int k = 0; k < e; ++k) r = multiply(F, r, m);
  return r;
}

// Endomorphism components (one matrix per vertex) of a flattened Hom column.
std::vector<FqMatrix> components(const FqMatrix& basis, const std::vector<Fq>& coeffs, const DimVector& dimsA,
                                 const DimVector& dimsB, const GaloisField& F) {
  std::vector<FqMatrix> f;
  int off = 0;
  for (std::size_t i = 0; i < dimsA.size(); ++i) {
    FqMatrix fi(dimsB[i], dimsA[i]);
    for (int a = 0; a < fi.rows; ++a)
      for (int b = 0; b < fi.cols; ++b) {
        Fq s = 0;
        int row = off + a * fi.cols + b;
        for (int k = 0; k < basis.cols; ++k)
          if (coeffs[k]) s = F.add(s, F.mul(coeffs[k], basis(row, k)));
        fi(a, b) = s;
      }
    off += fi.rows * fi.cols;
    f.push_back(std::move(fi));
  }
  return f;
}

bool allInvertible(const GaloisField& F, const std::vector<FqMatrix>& f) {
  for (const FqMatrix& m : f)
    if (!isInvertible(F, m)) return false;
  return true;
}

// Iterate all coefficient vectors in GF(q)^n; stop when f returns true.
bool forAllVectors(int n, unsigned q, const std::function<bool(const std::vector<Fq>&)>& f) {
  std::vector<Fq> c(n, 0);
  while (true) {
    if (f(c)) return true;
    int k = 0;
    while (k < n && ++c[k] == q) c[k++] = 0;
    if (k == n) return false;
  }
}

std::vector<Fq> randomVector(std::mt19937_64& rng, int n, unsigned q) {
  std::vector<Fq> c(n);
  for (auto& x : c) x = static_cast<Fq>(rng() % q);
  return c;
}

std::vector<LamIModule> decompose(const IQuiver& Q, const LamIModule& M) {
  const GaloisField& F = galoisField(M.q);
  if (M.totalDim() == 0) return {};
  FqMatrix end = homSpace(Q, M, M);
  std::mt19937_64 rng(0x5eed + M.totalDim());
  int n = M.totalDim();
  for (int trial = 0; trial < 96; ++trial) {
    std::vector<FqMatrix> f = components(end, randomVector(rng, end.cols, M.q), M.dims, M.dims, F);
    std::vector<FqMatrix> fn;
    bool nilpotent = true, invertible = true;
    for (const FqMatrix& fi : f) {
      FqMatrix p = power(F, fi, n);
      if (!p.isZero()) nilpotent = false;
      if (!isInvertible(F, p)) invertible = false;
      fn.push_back(std::move(p));
    }
    if (nilpotent || invertible) continue;
    // Fitting: M = im f^n (+) ker f^n.
    std::vector<FqMatrix> im, ker;
    for (const FqMatrix& p : fn) {
      im.push_back(columnSpaceBasis(F, p));
      ker.push_back(nullspace(F, p));
    }
    std::vector<LamIModule> out = decompose(Q, subModule(Q, M, im));
    std::vector<LamIModule> rest = decompose(Q, subModule(Q, M, ker));
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
  }
  return {M};
}

BigInt glOrder(unsigned long Q, int m) {
  BigInt order = 1, qm = 1;
  for (int k = 0; k < m; ++k) qm *= Q;
  BigInt qk = 1;
  for (int k = 0; k < m; ++k) {
    order *= qm - qk;
    qk *= Q;
  }
  return order;
}

// dim End / rad End for a local endomorphism ring, or 0 if undetermined.
int residueDegree(const IQuiver& Q, const LamIModule& Y) {
  const GaloisField& F = galoisField(Y.q);
  FqMatrix end = homSpace(Q, Y, Y);
  int n = Y.totalDim();
  // Every basis element must be scalar plus nilpotent when the residue field is k.
  for (int k = 0; k < end.cols; ++k) {
    std::vector<Fq> e(end.cols, 0);
    e[k] = 1;
    std::vector<FqMatrix> f = components(end, e, Y.dims, Y.dims, F);
    bool found = false;
    for (unsigned lambda = 0; lambda < Y.q && !found; ++lambda) {
      bool nil = true;
      for (const FqMatrix& fi : f) {
        FqMatrix shifted = fi;
        for (int d = 0; d < fi.rows; ++d) shifted(d, d) = F.sub(shifted(d, d), static_cast<Fq>(lambda));
        if (!power(F, shifted, n).isZero()) nil = false;
      }
      found = nil;
    }
    if (!found) return 0;
  }
  return 1;
}

}  // namespace

int LamIModule::totalDim() const { return std::accumulate(dims.begin(), dims.end(), 0); }

std::vector<Arrow> extendedArrows(const IQuiver& Q) {
  std::vector<Arrow> a = Q.arrows();
  for (int i = 0; i < Q.size(); ++i) a.push_back({i, Q.rho()[i]});
  return a;
}

Representation asRepresentation(const LamIModule& M) {
  Representation r;
  r.q = M.q;
  r.dims = M.dims;
  r.maps = M.x;
  r.maps.insert(r.maps.end(), M.eps.begin(), M.eps.end());
  return r;
}

LamIModule zeroLamI(const IQuiver& Q, unsigned q) {
  LamIModule z;
  z.q = q;
  z.dims.assign(Q.size(), 0);
  z.x.assign(Q.arrows().size(), FqMatrix(0, 0));
  z.eps.assign(Q.size(), FqMatrix(0, 0));
  return z;
}

LamIModule fromKQ(const IQuiver& Q, const Representation& X) {
  LamIModule m;
  m.q = X.q;
  m.dims = X.dims;
  m.x = X.maps;
  for (int i = 0; i < Q.size(); ++i) m.eps.emplace_back(X.dims[Q.rho()[i]], X.dims[i]);
  return m;
}

LamIModule kqModule(const IQuiver& Q, const KostantPartition& lambda, unsigned q) {
  return fromKQ(Q, Q.module(lambda, q));
}

LamIModule kModule(const IQuiver& Q, int i, unsigned q) {
  LamIModule k = zeroLamI(Q, q);
  int r = Q.rho()[i];
  if (r == i) {
    k.dims[i] = 2;
    k.eps[i] = FqMatrix(2, 2);
    k.eps[i](1, 0) = 1;
  } else {
    k.dims[i] = 1;
    k.dims[r] = 1;
    k.eps[i] = FqMatrix::identity(1);
    k.eps[r] = FqMatrix(1, 1);
  }
  for (std::size_t h = 0; h < Q.arrows().size(); ++h)
    k.x[h] = FqMatrix(k.dims[Q.arrows()[h].target], k.dims[Q.arrows()[h].source]);
  for (int j = 0; j < Q.size(); ++j)
    if (j != i && j != r) k.eps[j] = FqMatrix(k.dims[Q.rho()[j]], k.dims[j]);
  return k;
}

LamIModule kModule(const IQuiver& Q, const DimVector& gamma, unsigned q) {
  LamIModule m = zeroLamI(Q, q);
  for (int i = 0; i < Q.size(); ++i)
    for (int c = 0; c < gamma[i]; ++c) m = directSum(m, kModule(Q, i, q));
  return m;
}

DimVector kDim(const IQuiver& Q, const DimVector& gamma) {
  DimVector d(Q.size(), 0);
  for (int i = 0; i < Q.size(); ++i) {
    d[i] += gamma[i];
    d[Q.rho()[i]] += gamma[i];
  }
  return d;
}

LamIModule directSum(const LamIModule& a, const LamIModule& b) {
  Representation r = directSum(asRepresentation(a), asRepresentation(b));
  LamIModule s;
  s.q = a.q;
  s.dims = r.dims;
  s.x.assign(r.maps.begin(), r.maps.begin() + a.x.size());
  s.eps.assign(r.maps.begin() + a.x.size(), r.maps.end());
  return s;
}

bool satisfiesRelations(const IQuiver& Q, const LamIModule& M) {
  const GaloisField& F = galoisField(M.q);
  const auto& rho = Q.rho();
  for (int i = 0; i < Q.size(); ++i) {
    if (M.eps[i].rows != M.dims[rho[i]] || M.eps[i].cols != M.dims[i]) return false;
    if (!multiply(F, M.eps[rho[i]], M.eps[i]).isZero()) return false;
  }
  for (std::size_t h = 0; h < Q.arrows().size(); ++h) {
    auto [s, t] = Q.arrows()[h];
    if (M.x[h].rows != M.dims[t] || M.x[h].cols != M.dims[s]) return false;
    FqMatrix lhs = multiply(F, M.eps[t], M.x[h]);
    FqMatrix rhs = multiply(F, M.x[Q.arrowRho(static_cast<int>(h))], M.eps[s]);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

FqMatrix homSpace(const IQuiver& Q, const LamIModule& M, const LamIModule& N) {
  return homBasis(galoisField(M.q), extendedArrows(Q), asRepresentation(M), asRepresentation(N));
}

int homDim(const IQuiver& Q, const LamIModule& M, const LamIModule& N) { return homSpace(Q, M, N).cols; }

bool isIsomorphic(const IQuiver& Q, const LamIModule& A, const LamIModule& B) {
  if (A.dims != B.dims) return false;
  const GaloisField& F = galoisField(A.q);
  FqMatrix hom = homSpace(Q, A, B);
  int e = hom.cols;
  if (e != homDim(Q, A, A) || e != homDim(Q, B, B)) return false;
  if (A.totalDim() == 0) return true;
  auto test = [&](const std::vector<Fq>& c) { return allInvertible(F, components(hom, c, A.dims, B.dims, F)); };
  double space = std::pow(static_cast<double>(A.q), e);
  if (space <= 65536) return forAllVectors(e, A.q, test);
  // Invertible maps are a positive-density subset of Hom when A and B are isomorphic.
  std::mt19937_64 rng(0x150 + e);
  for (int trial = 0; trial < 512; ++trial)
    if (test(randomVector(rng, e, A.q))) return true;
  return false;
}

BigInt autOrder(const IQuiver& Q, const LamIModule& M) {
  const GaloisField& F = galoisField(M.q);
  FqMatrix end = homSpace(Q, M, M);
  int e = end.cols;
  if (M.totalDim() == 0) return 1;
  if (std::pow(static_cast<double>(M.q), e) <= (1 << 20)) {
    BigInt count = 0;
    forAllVectors(e, M.q, [&](const std::vector<Fq>& c) {
      if (allInvertible(F, components(end, c, M.dims, M.dims, F))) ++count;
      return false;
    });
    return count;
  }
  // Krull-Schmidt: |Aut| = q^(dim rad End) * prod |GL_m(q)| over summand classes.
  std::vector<LamIModule> parts = decompose(Q, M);
  std::vector<std::pair<LamIModule, int>> classes;
  for (const LamIModule& p : parts) {
    auto it = std::find_if(classes.begin(), classes.end(),
                           [&](const auto& c) { return isIsomorphic(Q, c.first, p); });
    if (it == classes.end())
      classes.emplace_back(p, 1);
    else
      ++it->second;
  }
  int semisimpleDim = 0;
  BigInt order = 1;
  for (const auto& [Y, m] : classes) {
    if (residueDegree(Q, Y) != 1) throw std::logic_error("autOrder: residue field larger than base field");
    semisimpleDim += m * m;
    order *= glOrder(M.q, m);
  }
  for (int k = 0; k < e - semisimpleDim; ++k) order *= M.q;
  return order;
}

LamIModule subModule(const IQuiver& Q, const LamIModule& M, const std::vector<FqMatrix>& bases) {
  const GaloisField& F = galoisField(M.q);
  LamIModule S;
  S.q = M.q;
  for (const FqMatrix& b : bases) S.dims.push_back(b.cols);
  auto restrict = [&](const FqMatrix& map, int s, int t) {
    FqMatrix y;
    if (!solveInSpan(F, bases[t], multiply(F, map, bases[s]), y))
      throw std::logic_error("subModule: subspace not stable");
    return y;
  };
  for (std::size_t h = 0; h < Q.arrows().size(); ++h)
    S.x.push_back(restrict(M.x[h], Q.arrows()[h].source, Q.arrows()[h].target));
  for (int i = 0; i < Q.size(); ++i) S.eps.push_back(restrict(M.eps[i], i, Q.rho()[i]));
  return S;
}


LamIModule quotientModule(const IQuiver& Q, const LamIModule& M, const std::vector<FqMatrix>& bases) {
  const GaloisField& F = galoisField(M.q);
  int n = Q.size();
  std::vector<FqMatrix> full(n);
  std::vector<int> subDim(n);
  LamIModule R;
  R.q = M.q;
  for (int i = 0; i < n; ++i) {
    FqMatrix both(M.dims[i], bases[i].cols + M.dims[i]);
    for (int a = 0; a < M.dims[i]; ++a) {
      for (int c = 0; c < bases[i].cols; ++c) both(a, c) = bases[i](a, c);
      both(a, bases[i].cols + a) = 1;
    }
    full[i] = columnSpaceBasis(F, both);
    subDim[i] = columnSpaceBasis(F, bases[i]).cols;
    if (subDim[i] != bases[i].cols) throw std::logic_error("quotientModule: dependent basis");
    R.dims.push_back(M.dims[i] - subDim[i]);
  }
  auto induced = [&](const FqMatrix& map, int s, int t) {
    FqMatrix comp(M.dims[s], R.dims[s]);
    for (int a = 0; a < M.dims[s]; ++a)
      for (int c = 0; c < R.dims[s]; ++c) comp(a, c) = full[s](a, subDim[s] + c);
    FqMatrix coords;
    solveInSpan(F, full[t], multiply(F, map, comp), coords);
    FqMatrix y(R.dims[t], R.dims[s]);
    for (int a = 0; a < y.rows; ++a)
      for (int c = 0; c < y.cols; ++c) y(a, c) = coords(subDim[t] + a, c);
    return y;
  };
  for (std::size_t h = 0; h < Q.arrows().size(); ++h)
    R.x.push_back(induced(M.x[h], Q.arrows()[h].source, Q.arrows()[h].target));
  for (int i = 0; i < n; ++i) R.eps.push_back(induced(M.eps[i], i, Q.rho()[i]));
  return R;
}

KostantPartition partitionOf(const IQuiver& Q, const LamIModule& X) {
  for (const FqMatrix& e : X.eps)
    if (!e.isZero()) throw NotAModuleOfQ("partitionOf: eps is nonzero");
  if (!satisfiesRelations(Q, X)) throw NotAModuleOfQ("partitionOf: relations fail");
  int r = Q.numRoots();
  KostantPartition lambda = Q.emptyPartition();
  if (X.totalDim() == 0) return lambda;
  std::vector<KostantPartition> only = Q.partitions(X.dims);
  if (only.size() == 1) return only[0];
  const GaloisField& F = galoisField(X.q);
  Representation xr;
  xr.q = X.q;
  xr.dims = X.dims;
  xr.maps = X.x;
  std::vector<int> h(r);
  for (int b = 0; b < r; ++b) h[b] = homBasis(F, Q.arrows(), Q.indecomposable(b, X.q), xr).cols;
  // Order roots so that Hom(M_a, M_b) != 0 with a != b puts a first.
  std::vector<int> order, indeg(r, 0);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      if (a != b && Q.homRoots(a, b)) ++indeg[b];
  std::vector<bool> used(r, false);
  while (static_cast<int>(order.size()) < r) {
    int pick = -1;
    for (int a = 0; a < r && pick < 0; ++a)
      if (!used[a] && indeg[a] == 0) pick = a;
    if (pick < 0) throw std::logic_error("partitionOf: Hom relation has a cycle");
    used[pick] = true;
    order.push_back(pick);
    for (int b = 0; b < r; ++b)
      if (b != pick && Q.homRoots(pick, b)) --indeg[b];
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int a = *it;
    int rest = h[a];
    for (int b = 0; b < r; ++b)
      if (b != a) rest -= Q.homRoots(a, b) * lambda[b];
    if (rest < 0) throw std::logic_error("partitionOf: negative multiplicity");
    lambda[a] = rest;
  }
  if (Q.dimVector(lambda) != X.dims) throw std::logic_error("partitionOf: dimension mismatch");
  return lambda;
}

LamIModule epsHomology(const IQuiver& Q, const LamIModule& L) {
  const GaloisField& F = galoisField(L.q);
  int n = Q.size();
  std::vector<FqMatrix> basis(n);  // [image | complement] columns
  std::vector<int> imDim(n);
  LamIModule X;
  X.q = L.q;
  X.dims.resize(n);
  for (int i = 0; i < n; ++i) {
    int r = Q.rho()[i];
    FqMatrix ker = nullspace(F, L.eps[i]);
    FqMatrix im = columnSpaceBasis(F, L.eps[r]);
    FqMatrix both(L.dims[i], im.cols + ker.cols);
    for (int a = 0; a < L.dims[i]; ++a) {
      for (int c = 0; c < im.cols; ++c) both(a, c) = im(a, c);
      for (int c = 0; c < ker.cols; ++c) both(a, im.cols + c) = ker(a, c);
    }
    basis[i] = columnSpaceBasis(F, both);
    imDim[i] = im.cols;
    X.dims[i] = basis[i].cols - im.cols;
  }
  for (std::size_t h = 0; h < Q.arrows().size(); ++h) {
    auto [s, t] = Q.arrows()[h];
    FqMatrix comp(L.dims[s], X.dims[s]);
    for (int a = 0; a < L.dims[s]; ++a)
      for (int c = 0; c < X.dims[s]; ++c) comp(a, c) = basis[s](a, imDim[s] + c);
    FqMatrix coords;
    if (!solveInSpan(F, basis[t], multiply(F, L.x[h], comp), coords))
      throw std::logic_error("epsHomology: arrow does not preserve ker eps");
    FqMatrix y(X.dims[t], X.dims[s]);
    for (int a = 0; a < y.rows; ++a)
      for (int c = 0; c < y.cols; ++c) y(a, c) = coords(imDim[t] + a, c);
    X.x.push_back(std::move(y));
  }
  for (int i = 0; i < n; ++i) X.eps.emplace_back(X.dims[Q.rho()[i]], X.dims[i]);
  return X;
}

NormalForm reduceToNormalForm(const IQuiver& Q, const LamIModule& L) {
  const GaloisField& F = galoisField(L.q);
  NormalForm nf;
  nf.gamma.resize(Q.size());
  for (int i = 0; i < Q.size(); ++i) nf.gamma[i] = rank(F, L.eps[i]);
  nf.partition = partitionOf(Q, epsHomology(Q, L));
  return nf;
}

ExtensionSpace::ExtensionSpace(const IQuiver& Q, LamIModule M, LamIModule N)
    : Q_(&Q), M_(std::move(M)), N_(std::move(N)) {
  const GaloisField& F = galoisField(M_.q);
  const auto& arrows = Q.arrows();
  const auto& rho = Q.rho();
  int n = Q.size();
  const auto& m = M_.dims;
  const auto& nn = N_.dims;

  for (const Arrow& a : arrows) {
    wOffset_.push_back(vars_);
    vars_ += nn[a.target] * m[a.source];
  }
  for (int i = 0; i < n; ++i) {
    etaOffset_.push_back(vars_);
    vars_ += nn[rho[i]] * m[i];
  }
  auto w = [&](int h) { return Block{wOffset_[h], nn[arrows[h].target], m[arrows[h].source]}; };
  auto eta = [&](int i) { return Block{etaOffset_[i], nn[rho[i]], m[i]}; };

  int rows = 0;
  std::vector<int> nilRow, comRow;
  for (int i = 0; i < n; ++i) {
    nilRow.push_back(rows);
    rows += nn[i] * m[i];
  }
  for (const Arrow& a : arrows) {
    comRow.push_back(rows);
    rows += nn[rho[a.target]] * m[a.source];
  }
  FqMatrix cst(rows, vars_);
  for (int i = 0; i < n; ++i) {
    Block out{nilRow[i], nn[i], m[i]};
    addTerm(F, cst, out, &N_.eps[rho[i]], eta(i), nullptr, false);
    addTerm(F, cst, out, nullptr, eta(rho[i]), &M_.eps[i], false);
  }
  for (std::size_t h = 0; h < arrows.size(); ++h) {
    int s = arrows[h].source, t = arrows[h].target, rh = Q.arrowRho(static_cast<int>(h));
    Block out{comRow[h], nn[rho[t]], m[s]};
    addTerm(F, cst, out, &N_.eps[t], w(static_cast<int>(h)), nullptr, false);
    addTerm(F, cst, out, nullptr, eta(t), &M_.x[h], false);
    addTerm(F, cst, out, &N_.x[rh], eta(s), nullptr, true);
    addTerm(F, cst, out, nullptr, w(rh), &M_.eps[s], true);
  }
  FqMatrix D = nullspace(F, cst);
  dimD_ = D.cols;

  std::vector<int> sOffset;
  for (int i = 0; i < n; ++i) {
    sOffset.push_back(homSource_);
    homSource_ += nn[i] * m[i];
  }
  auto sblk = [&](int i) { return Block{sOffset[i], nn[i], m[i]}; };
  FqMatrix alpha(vars_, homSource_);
  for (std::size_t h = 0; h < arrows.size(); ++h) {
    int s = arrows[h].source, t = arrows[h].target;
    addTerm(F, alpha, w(static_cast<int>(h)), &N_.x[h], sblk(s), nullptr, false);
    addTerm(F, alpha, w(static_cast<int>(h)), nullptr, sblk(t), &M_.x[h], true);
  }
  for (int i = 0; i < n; ++i) {
    addTerm(F, alpha, eta(i), &N_.eps[i], sblk(i), nullptr, false);
    addTerm(F, alpha, eta(i), nullptr, sblk(rho[i]), &M_.eps[i], true);
  }
  if (!multiply(F, cst, alpha).isZero()) throw std::logic_error("coboundaries violate the cocycle relations");
  FqMatrix im = columnSpaceBasis(F, alpha);
  rankAlpha_ = im.cols;

  FqMatrix both(vars_, im.cols + D.cols);
  for (int r = 0; r < vars_; ++r) {
    for (int c = 0; c < im.cols; ++c) both(r, c) = im(r, c);
    for (int c = 0; c < D.cols; ++c) both(r, im.cols + c) = D(r, c);
  }
  FqMatrix reduced = both;
  std::vector<int> piv = rowReduce(F, reduced);
  std::vector<int> extra;
  for (int c : piv)
    if (c >= im.cols) extra.push_back(c);
  complement_ = FqMatrix(vars_, static_cast<int>(extra.size()));
  for (std::size_t k = 0; k < extra.size(); ++k)
    for (int r = 0; r < vars_; ++r) complement_(r, static_cast<int>(k)) = both(r, extra[k]);
}

namespace {

std::vector<Fq> cocycle(const GaloisField& F, const FqMatrix& complement, const std::vector<Fq>& c) {
  std::vector<Fq> v(complement.rows, 0);
  for (int k = 0; k < complement.cols; ++k) {
    if (!c[k]) continue;
    for (int r = 0; r < complement.rows; ++r)
      if (complement(r, k)) v[r] = F.add(v[r], F.mul(c[k], complement(r, k)));
  }
  return v;
}

// [[top, off], [0, bottom]] with off read from v at offset.
FqMatrix blockUpper(const FqMatrix& top, const FqMatrix& bottom, const std::vector<Fq>& v, int offset) {
  FqMatrix z(top.rows + bottom.rows, top.cols + bottom.cols);
  for (int r = 0; r < top.rows; ++r)
    for (int c = 0; c < top.cols; ++c) z(r, c) = top(r, c);
  for (int r = 0; r < bottom.rows; ++r)
    for (int c = 0; c < bottom.cols; ++c) z(top.rows + r, top.cols + c) = bottom(r, c);
  for (int r = 0; r < top.rows; ++r)
    for (int c = 0; c < bottom.cols; ++c) z(r, top.cols + c) = v[offset + r * bottom.cols + c];
  return z;
}

}  // namespace

void ExtensionSpace::middleEps(const std::vector<Fq>& c, std::vector<FqMatrix>& eps) const {
  const GaloisField& F = galoisField(M_.q);
  std::vector<Fq> v = cocycle(F, complement_, c);
  eps.resize(Q_->size());
  for (int i = 0; i < Q_->size(); ++i) eps[i] = blockUpper(N_.eps[i], M_.eps[i], v, etaOffset_[i]);
}

LamIModule ExtensionSpace::middleTerm(const std::vector<Fq>& c) const {
  const GaloisField& F = galoisField(M_.q);
  std::vector<Fq> v = cocycle(F, complement_, c);
  LamIModule L;
  L.q = M_.q;
  for (std::size_t i = 0; i < M_.dims.size(); ++i) L.dims.push_back(M_.dims[i] + N_.dims[i]);
  for (std::size_t h = 0; h < Q_->arrows().size(); ++h) L.x.push_back(blockUpper(N_.x[h], M_.x[h], v, wOffset_[h]));
  for (int i = 0; i < Q_->size(); ++i) L.eps.push_back(blockUpper(N_.eps[i], M_.eps[i], v, etaOffset_[i]));
  return L;
}

void forEachProjectiveRep(int dim, unsigned q, const std::function<void(const std::vector<Fq>&, long)>& f) {
  std::vector<Fq> c(dim, 0);
  f(c, 1);
  for (int lead = 0; lead < dim; ++lead) {
    std::fill(c.begin(), c.end(), 0);
    c[lead] = 1;
    while (true) {
      f(c, static_cast<long>(q) - 1);
      int k = lead + 1;
      while (k < dim && ++c[k] == q) c[k++] = 0;
      if (k == dim) break;
    }
  }
}

std::vector<MiddleTerm> extMiddleTerms(const IQuiver& Q, const LamIModule& M, const LamIModule& N, long budget) {
  ExtensionSpace ext(Q, M, N);
  double size = std::pow(static_cast<double>(M.q), ext.dimExt());
  if (size > static_cast<double>(budget))
    throw BudgetExceeded("q^dim Ext^1 = " + std::to_string(M.q) + "^" + std::to_string(ext.dimExt()));
  const GaloisField& F = galoisField(M.q);
  struct Entry {
    MiddleTerm term;
    std::vector<int> invariant;
  };
  std::vector<Entry> classes;
  forEachProjectiveRep(ext.dimExt(), M.q, [&](const std::vector<Fq>& c, long weight) {
    LamIModule L = ext.middleTerm(c);
    std::vector<int> inv;
    for (const FqMatrix& e : L.eps) inv.push_back(rank(F, e));
    for (const FqMatrix& x : L.x) inv.push_back(rank(F, x));
    inv.push_back(homDim(Q, L, L));
    for (Entry& e : classes)
      if (e.invariant == inv && isIsomorphic(Q, e.term.module, L)) {
        e.term.count += weight;
        return;
      }
    classes.push_back({{std::move(L), BigInt(weight)}, inv});
  });
  std::vector<MiddleTerm> out;
  for (Entry& e : classes) out.push_back(std::move(e.term));
  return out;
}

nlohmann::json moduleToJson(const LamIModule& M) {
  auto mat = [](const FqMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < m.rows; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < m.cols; ++c) row.push_back(static_cast<int>(m(r, c)));
      rows.push_back(row);
    }
    return rows;
  };
  nlohmann::json j;
  j["q"] = M.q;
  j["dims"] = M.dims;
  j["x"] = nlohmann::json::array();
  for (const FqMatrix& x : M.x) j["x"].push_back(mat(x));
  j["eps"] = nlohmann::json::array();
  for (const FqMatrix& e : M.eps) j["eps"].push_back(mat(e));
  return j;
}

}  // namespace ihall
