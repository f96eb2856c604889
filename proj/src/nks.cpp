#include "ihall/nks.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "ihall/dcb.hpp"
#include "ihall/errors.hpp"

namespace ihall::nks {

namespace {

// Vertices of Q such that every arrow i -> j has j before i.
std::vector<int> targetsFirst(const IQuiver& Q) {
  std::vector<int> order, out(Q.size(), 0);
  for (const Arrow& a : Q.arrows()) ++out[a.source];
  std::vector<bool> done(Q.size(), false);
  while (static_cast<int>(order.size()) < Q.size()) {
    for (int i = 0; i < Q.size(); ++i) {
      if (done[i] || out[i] != 0) continue;
      done[i] = true;
      order.push_back(i);
      for (const Arrow& a : Q.arrows())
        if (a.target == i) --out[a.source];
    }
  }
  return order;
}

// Exact integer solution of A x = b, if any.
std::optional<std::vector<int>> solveIntegral(const Eigen::MatrixXi& A, const Eigen::VectorXi& b) {
  Eigen::VectorXd xd = A.cast<double>().fullPivLu().solve(b.cast<double>());
  Eigen::VectorXi x(xd.size());
  for (Eigen::Index k = 0; k < xd.size(); ++k) {
    if (!std::isfinite(xd[k])) return std::nullopt;
    x[k] = static_cast<int>(std::lround(xd[k]));
  }
  if (A * x != b) return std::nullopt;
  return std::vector<int>(x.data(), x.data() + x.size());
}

std::string vecString(const std::vector<int>& x) {
  std::string s = "(";
  for (std::size_t k = 0; k < x.size(); ++k) s += (k ? "," : "") + std::to_string(x[k]);
  return s + ")";
}

}  // namespace

OrbitQuiver::OrbitQuiver(IQuiver Q) : Q_(std::move(Q)) {
  const int n = Q_.size();
  const int roots = Q_.numRoots();
  window_ = roots + 1;
  std::vector<std::vector<DimVector>> cls(n, std::vector<DimVector>(window_ + 2));
  labels_.assign(n, std::vector<Label>(window_ + 2, Label{-1, 0}));

  // Projectives: (P_i)_j counts paths i -> j.
  for (int i = 0; i < n; ++i) {
    DimVector d(n, 0);
    std::vector<int> stack{i};
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      ++d[x];
      for (const Arrow& a : Q_.arrows())
        if (a.source == x) stack.push_back(a.target);
    }
    cls[i][1] = d;
  }

  std::vector<int> up = targetsFirst(Q_);
  std::vector<int> down(up.rbegin(), up.rend());
  auto meshSum = [&](int i, int p) {
    // Classes of the middle term of the mesh ending at (i, p).
    DimVector s(n, 0);
    for (const Arrow& a : Q_.arrows()) {
      const DimVector* c = nullptr;
      if (a.source == i) c = &cls[a.target][p + 1];
      if (a.target == i) c = &cls[a.source][p];
      if (c)
        for (int k = 0; k < n; ++k) s[k] += (*c)[k];
    }
    return s;
  };
  for (int p = 1; p <= window_; ++p)
    for (int i : up) {
      DimVector s = meshSum(i, p);
      for (int k = 0; k < n; ++k) s[k] -= cls[i][p][k];
      cls[i][p + 1] = s;
    }
  for (int i : down) {
    // (i, -1): the mesh ending at (i, 0) read backwards.
    DimVector s = meshSum(i, 0);
    for (int k = 0; k < n; ++k) s[k] -= cls[i][1][k];
    cls[i][0] = s;
  }

  auto sign = [&](const DimVector& c) {
    bool pos = std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; });
    bool neg = std::all_of(c.begin(), c.end(), [](int x) { return x <= 0; });
    if (pos == neg) throw InvalidQuiver("knitting produced class " + dimString(c));
    return pos ? 1 : -1;
  };
  auto rootOf = [&](const DimVector& c) {
    DimVector a(c);
    for (int& x : a) x = std::abs(x);
    return Q_.rootIndex(a);
  };
  for (int i = 0; i < n; ++i) {
    labels_[i][1] = Label{rootOf(cls[i][1]), 0};
    for (int p = 1; p <= window_; ++p) {
      int s = labels_[i][p].shift + (sign(cls[i][p + 1]) != sign(cls[i][p]) ? 1 : 0);
      labels_[i][p + 1] = Label{rootOf(cls[i][p + 1]), s};
    }
    labels_[i][0] = Label{rootOf(cls[i][0]), sign(cls[i][0]) != sign(cls[i][1]) ? -1 : 0};
  }

  auto orbit = [&](const Label& l) { return l.shift % 2 == 0 ? l.root : Q_.rhoRoot(l.root); };
  tau_.assign(roots, -1);
  for (int i = 0; i < n; ++i)
    for (int p = 0; p <= window_; ++p) {
      const Label& l = labels_[i][p + 1];
      if (l.shift != 0) continue;
      if (tau_[l.root] != -1) throw InvalidQuiver("module repeated in the knitting window");
      tau_[l.root] = orbit(labels_[i][p]);
      for (const Arrow& a : Q_.arrows()) {
        if (a.source == i) arrows_.push_back({orbit(labels_[a.target][p + 1]), l.root});
        if (a.target == i) arrows_.push_back({orbit(labels_[a.source][p]), l.root});
      }
    }
  if (std::count(tau_.begin(), tau_.end(), -1) != 0) throw InvalidQuiver("knitting window too small");
  std::sort(arrows_.begin(), arrows_.end());

  for (int i = 0; i < n; ++i) simple_.push_back(Q_.rootIndex(Q_.simple(i)));
  for (int x = 0; x < roots; ++x) {
    bool inj = true;
    for (int y = 0; y < roots && inj; ++y) inj = Q_.extDim(Q_.single(y), Q_.single(x)) == 0;
    injective_.push_back(inj);
  }
  for (int i = 0; i < n; ++i) {
    KostantPartition S = Q_.single(simple_[i]);
    std::vector<int> v(roots);
    for (int z = 0; z < roots; ++z)
      v[z] = Q_.homDim(S, Q_.single(z)) + Q_.extDim(S, Q_.single(Q_.rhoRoot(z)));
    vi_.push_back(v);
  }
}

Label OrbitQuiver::label(int i, int p) const { return labels_.at(i).at(p + 1); }

std::vector<int> OrbitQuiver::quantumCartan(const std::vector<int>& v) const {
  std::vector<int> c(size());
  for (int x = 0; x < size(); ++x) c[x] = v[x] + v[tau_[x]];
  for (const Arrow& a : arrows_) c[a.target] -= v[a.source];
  return c;
}

std::vector<int> OrbitQuiver::sigmaStar(const std::vector<int>& w) const {
  std::vector<int> s(size(), 0);
  for (int i = 0; i < frozenCount(); ++i) s[simple_[i]] += w[i];
  return s;
}

std::vector<int> OrbitQuiver::tauStar(const std::vector<int>& v) const {
  std::vector<int> t(size());
  for (int x = 0; x < size(); ++x) t[x] = v[tau_[x]];
  return t;
}

std::vector<int> OrbitQuiver::wi(int i) const {
  std::vector<int> w(frozenCount(), 0);
  ++w[i];
  ++w[Q_.rho()[i]];
  return w;
}

nlohmann::json OrbitQuiver::toJson() const {
  nlohmann::json j;
  j["quiver"] = Q_.normalForm();
  j["convention"] = "P_i at (i,0); tau(i,p) = (i,p-1); F = shift o rho";
  nlohmann::json vs = nlohmann::json::array();
  for (int x = 0; x < size(); ++x)
    vs.push_back({{"id", x}, {"dim", Q_.positiveRoots()[x]}, {"tau", tau_[x]}, {"injective", bool(injective_[x])}});
  j["vertices"] = vs;
  nlohmann::json fr = nlohmann::json::array();
  for (int i = 0; i < frozenCount(); ++i) fr.push_back({{"id", i}, {"simple", i + 1}, {"vertex", simple_[i]}});
  j["frozen"] = fr;
  nlohmann::json as = nlohmann::json::array();
  for (const Arrow& a : arrows_) as.push_back({a.source, a.target});
  j["arrows"] = as;
  nlohmann::json fa = nlohmann::json::array();
  for (int i = 0; i < frozenCount(); ++i) {
    fa.push_back({{"from", tau_[simple_[i]]}, {"to_frozen", i}});
    fa.push_back({{"from_frozen", i}, {"to", simple_[i]}});
  }
  j["frozen_arrows"] = fa;
  nlohmann::json win = nlohmann::json::array();
  for (int i = 0; i < frozenCount(); ++i)
    for (int p = -1; p <= window_; ++p) {
      Label l = label(i, p);
      win.push_back({{"vertex", {i + 1, p}}, {"dim", Q_.positiveRoots()[l.root]}, {"shift", l.shift}});
    }
  j["window"] = win;
  return j;
}

DominantPair operator+(const DominantPair& a, const DominantPair& b) {
  DominantPair s = a;
  for (std::size_t k = 0; k < s.v.size(); ++k) s.v[k] += b.v[k];
  for (std::size_t k = 0; k < s.w.size(); ++k) s.w[k] += b.w[k];
  return s;
}

int dot(const std::vector<int>& a, const std::vector<int>& b) {
  int s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

std::vector<int> defect(const OrbitQuiver& R, const DominantPair& p) {
  if (static_cast<int>(p.v.size()) != R.size() || static_cast<int>(p.w.size()) != R.frozenCount())
    throw DimensionMismatch("pair " + vecString(p.v) + vecString(p.w));
  std::vector<int> d = R.sigmaStar(p.w), c = R.quantumCartan(p.v);
  for (int x = 0; x < R.size(); ++x) d[x] -= c[x];
  return d;
}

bool isDominant(const OrbitQuiver& R, const DominantPair& p) {
  if (std::any_of(p.v.begin(), p.v.end(), [](int x) { return x < 0; })) return false;
  if (std::any_of(p.w.begin(), p.w.end(), [](int x) { return x < 0; })) return false;
  std::vector<int> d = defect(R, p);
  return std::all_of(d.begin(), d.end(), [](int x) { return x >= 0; });
}

std::vector<DominantPair> dominantPairs(const OrbitQuiver& R, const std::vector<int>& w) {
  int total = 0;
  for (int x : w) total += x;
  std::vector<int> bound(R.size(), 0);
  for (int x = 0; x < R.size(); ++x)
    for (int i = 0; i < R.frozenCount(); ++i) bound[x] = std::max(bound[x], total * R.vi(i)[x]);
  std::vector<DominantPair> out;
  DominantPair p{std::vector<int>(R.size(), 0), w};
  while (true) {
    if (isDominant(R, p)) out.push_back(p);
    int x = 0;
    while (x < R.size() && p.v[x] == bound[x]) p.v[x++] = 0;
    if (x == R.size()) break;
    ++p.v[x];
  }
  std::sort(out.begin(), out.end());
  return out;
}

DominantPair pairOf(const OrbitQuiver& R, const DimVector& alpha, const KostantPartition& lambda) {
  const IQuiver& Q = R.quiver();
  if (static_cast<int>(alpha.size()) != Q.size() || static_cast<int>(lambda.size()) != R.size())
    throw DimensionMismatch("pairOf arguments");
  if (std::any_of(alpha.begin(), alpha.end(), [](int a) { return a < 0; }) ||
      std::any_of(lambda.begin(), lambda.end(), [](int a) { return a < 0; }))
    throw NoSolution("negative alpha or lambda");
  // Unknowns: v at non-injective vertices, then w.
  std::vector<int> free;
  for (int x = 0; x < R.size(); ++x)
    if (!R.isInjective(x)) free.push_back(x);
  const int m = static_cast<int>(free.size()), n = R.frozenCount();
  Eigen::MatrixXi A = Eigen::MatrixXi::Zero(R.size(), m + n);
  for (int c = 0; c < m; ++c) {
    std::vector<int> e(R.size(), 0);
    e[free[c]] = 1;
    std::vector<int> col = R.quantumCartan(e);
    for (int x = 0; x < R.size(); ++x) A(x, c) = -col[x];
  }
  for (int i = 0; i < n; ++i) A(R.simpleVertex(i), m + i) += 1;
  Eigen::VectorXi b = Eigen::Map<const Eigen::VectorXi>(lambda.data(), R.size());
  auto sol = solveIntegral(A, b);
  if (!sol) throw NoSolution("no integral pair for lambda " + vecString(lambda));
  DominantPair p{std::vector<int>(R.size(), 0), std::vector<int>(n, 0)};
  for (int c = 0; c < m; ++c) p.v[free[c]] = (*sol)[c];
  for (int i = 0; i < n; ++i) p.w[i] = (*sol)[m + i];
  for (int i = 0; i < n; ++i)
    if (alpha[i] != 0) {
      DominantPair k{R.vi(Q.rho()[i]), R.wi(i)};
      for (int& x : k.v) x *= alpha[i];
      for (int& x : k.w) x *= alpha[i];
      p = p + k;
    }
  if (std::any_of(p.v.begin(), p.v.end(), [](int x) { return x < 0; }) ||
      std::any_of(p.w.begin(), p.w.end(), [](int x) { return x < 0; }))
    throw NoSolution("negative pair for lambda " + vecString(lambda));
  return p;
}

std::pair<DimVector, KostantPartition> lambdaOf(const OrbitQuiver& R, const DominantPair& p) {
  if (!isDominant(R, p)) throw NotDominant(vecString(p.v) + vecString(p.w));
  const IQuiver& Q = R.quiver();
  KostantPartition lambda = defect(R, p);
  DominantPair base;
  try {
    base = pairOf(R, DimVector(Q.size(), 0), lambda);
  } catch (const NoSolution& e) {
    throw NoDecomposition(e.what());
  }
  const int n = Q.size(), rows = R.size() + n;
  Eigen::MatrixXi A(rows, n);
  Eigen::VectorXi b(rows);
  for (int i = 0; i < n; ++i) {
    std::vector<int> w = R.wi(i);
    for (int x = 0; x < R.size(); ++x) A(x, i) = R.vi(Q.rho()[i])[x];
    for (int k = 0; k < n; ++k) A(R.size() + k, i) = w[k];
  }
  for (int x = 0; x < R.size(); ++x) b[x] = p.v[x] - base.v[x];
  for (int k = 0; k < n; ++k) b[R.size() + k] = p.w[k] - base.w[k];
  auto alpha = solveIntegral(A, b);
  if (!alpha || std::any_of(alpha->begin(), alpha->end(), [](int a) { return a < 0; }))
    throw NoDecomposition(vecString(p.v) + vecString(p.w));
  return {*alpha, lambda};
}

int dForm(const OrbitQuiver& R, const DominantPair& p1, const DominantPair& p2) {
  return dot(defect(R, p1), R.tauStar(p2.v)) + dot(p1.v, R.sigmaStar(p2.w));
}

int leadingExponent(const OrbitQuiver& R, const DominantPair& p1, const DominantPair& p2) {
  return dForm(R, p1, p2) - dForm(R, p2, p1);
}

nlohmann::json toJson(const DominantPair& p) { return {{"v", p.v}, {"w", p.w}}; }

LeadingTermReport compareLeadingTerms(const OrbitQuiver& R, DCBSolver& solver, int maxHeight) {
  LeadingTermReport rep;
  const IQuiver& Q = R.quiver();
  std::vector<DominantPair> pairs;
  for (const DimVector& w : gradesUpTo(Q.size(), maxHeight))
    if (height(w) > 0)
      for (const DominantPair& p : dominantPairs(R, w)) pairs.push_back(p);
  auto symbolOf = [&](const DominantPair& p) {
    auto [alpha, lambda] = lambdaOf(R, p);
    return Symbol{alpha, lambda};
  };
  for (const DominantPair& p1 : pairs)
    for (const DominantPair& p2 : pairs) {
      if (height(p1.w) + height(p2.w) > maxHeight) continue;
      Symbol s1 = symbolOf(p1), s2 = symbolOf(p2), s = symbolOf(p1 + p2);
      auto coeffs = solver.inBasis(solver.algebra().multiply(solver.element(s1), solver.element(s2)));
      auto it = coeffs.find(s);
      HalfLaurent got = it == coeffs.end() ? HalfLaurent() : it->second;
      int twist2 = Q.eulerForm(p1.w, p2.w) - Q.eulerForm(p2.w, p1.w);
      HalfLaurent expect = HalfLaurent::monomial(1, 2 * leadingExponent(R, p1, p2) + twist2);
      ++rep.compared;
      if (got != expect) {
        std::ostringstream os;
        os << "L" << vecString(p1.v) << vecString(p1.w) << " * L" << vecString(p2.v) << vecString(p2.w)
           << ": coefficient " << got << ", expected " << expect;
        rep.mismatches.push_back(os.str());
      }
    }
  return rep;
}

}  // namespace ihall::nks
