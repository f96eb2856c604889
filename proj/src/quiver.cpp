#include "ihall/quiver.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "ihall/errors.hpp"

namespace ihall {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

int parseInt(const std::string& s, const std::string& context) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw ParseError("bad integer '" + s + "' in " + context);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad integer '" + s + "' in " + context);
  }
}

// Component labels like "A3" of a type string "A3+D4".
std::vector<std::string> typeComponents(const std::string& type) {
  std::vector<std::string> parts = split(type, '+');
  for (const auto& p : parts) {
    if (p.size() < 2 || (p[0] != 'A' && p[0] != 'D' && p[0] != 'E')) throw ParseError("bad Dynkin label '" + p + "'");
    int r = parseInt(p.substr(1), "Dynkin label");
    if (r < 1 || (p[0] == 'D' && r < 4) || (p[0] == 'E' && (r < 6 || r > 8)))
      throw ParseError("bad Dynkin label '" + p + "'");
  }
  return parts;
}

int typeRank(const std::string& type) {
  int n = 0;
  for (const auto& p : typeComponents(type)) n += std::stoi(p.substr(1));
  return n;
}

// Dynkin label of a connected simply laced graph, or "" if not ADE.
std::string classify(const std::vector<int>& verts, const std::vector<std::vector<int>>& adj) {
  int n = static_cast<int>(verts.size());
  int edges = 0;
  for (int v : verts) edges += static_cast<int>(adj[v].size());
  edges /= 2;
  if (edges != n - 1) return "";
  int branch = -1;
  for (int v : verts) {
    int deg = static_cast<int>(adj[v].size());
    if (deg > 3) return "";
    if (deg == 3) {
      if (branch >= 0) return "";
      branch = v;
    }
  }
  if (branch < 0) return "A" + std::to_string(n);
  std::vector<int> legs;
  for (int start : adj[branch]) {
    int len = 1, prev = branch, cur = start;
    while (adj[cur].size() == 2) {
      int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = next;
      ++len;
    }
    legs.push_back(len);
  }
  std::sort(legs.begin(), legs.end());
  if (legs[0] == 1 && legs[1] == 1) return "D" + std::to_string(n);
  if (legs[0] == 1 && legs[1] == 2 && legs[2] >= 2 && legs[2] <= 4) return "E" + std::to_string(n);
  return "";
}

}  // namespace

int height(const DimVector& d) { return std::accumulate(d.begin(), d.end(), 0); }

std::string dimString(const DimVector& d) {
  std::string s = "(";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + ")";
}

int Representation::totalDim() const { return std::accumulate(dims.begin(), dims.end(), 0); }

FqMatrix homBasis(const GaloisField& F, const std::vector<Arrow>& arrows, const Representation& M,
                  const Representation& N) {
  int n = static_cast<int>(M.dims.size());
  std::vector<int> offset(n + 1, 0);
  for (int i = 0; i < n; ++i) offset[i + 1] = offset[i] + M.dims[i] * N.dims[i];
  int rows = 0;
  for (const Arrow& a : arrows) rows += N.dims[a.target] * M.dims[a.source];
  FqMatrix eq(rows, offset[n]);
  int row = 0;
  for (std::size_t h = 0; h < arrows.size(); ++h) {
    int s = arrows[h].source, t = arrows[h].target;
    const FqMatrix& xm = M.maps[h];
    const FqMatrix& xn = N.maps[h];
    int ms = M.dims[s], mt = M.dims[t], ns = N.dims[s], nt = N.dims[t];
    // (xn f_s - f_t xm)(a, b) = 0
    for (int a = 0; a < nt; ++a)
      for (int b = 0; b < ms; ++b, ++row) {
        for (int c = 0; c < ns; ++c) {
          Fq coeff = xn(a, c);
          if (coeff) {
            int col = offset[s] + c * ms + b;
            eq(row, col) = F.add(eq(row, col), coeff);
          }
        }
        for (int c = 0; c < mt; ++c) {
          Fq coeff = xm(c, b);
          if (coeff) {
            int col = offset[t] + a * mt + c;
            eq(row, col) = F.sub(eq(row, col), coeff);
          }
        }
      }
  }
  return nullspace(F, eq);
}

FqMatrix homComponent(const FqMatrix& basis, int column, const DimVector& dimsM, const DimVector& dimsN, int vertex) {
  int off = 0;
  for (int i = 0; i < vertex; ++i) off += dimsM[i] * dimsN[i];
  FqMatrix f(dimsN[vertex], dimsM[vertex]);
  for (int a = 0; a < f.rows; ++a)
    for (int b = 0; b < f.cols; ++b) f(a, b) = basis(off + a * f.cols + b, column);
  return f;
}

Representation directSum(const Representation& a, const Representation& b) {
  Representation s;
  s.q = a.q;
  s.dims.resize(a.dims.size());
  for (std::size_t i = 0; i < a.dims.size(); ++i) s.dims[i] = a.dims[i] + b.dims[i];
  for (std::size_t h = 0; h < a.maps.size(); ++h) {
    const FqMatrix& x = a.maps[h];
    const FqMatrix& y = b.maps[h];
    FqMatrix z(x.rows + y.rows, x.cols + y.cols);
    for (int r = 0; r < x.rows; ++r)
      for (int c = 0; c < x.cols; ++c) z(r, c) = x(r, c);
    for (int r = 0; r < y.rows; ++r)
      for (int c = 0; c < y.cols; ++c) z(x.rows + r, x.cols + c) = y(r, c);
    s.maps.push_back(std::move(z));
  }
  return s;
}

struct IQuiver::Cache {
  std::once_flag homOnce;
  std::vector<int> hom;
  std::mutex lock;
  std::map<std::pair<int, unsigned>, Representation> indecomposables;
};

IQuiver::IQuiver(std::string type, int n, std::vector<Arrow> arrows, std::vector<int> rho)
    : type_(std::move(type)), n_(n), arrows_(std::move(arrows)), rho_(std::move(rho)),
      cache_(std::make_shared<Cache>()) {
  if (rho_.empty()) {
    rho_.resize(n_);
    std::iota(rho_.begin(), rho_.end(), 0);
  }
  validate();

  arrowRho_.resize(arrows_.size());
  for (std::size_t h = 0; h < arrows_.size(); ++h) {
    Arrow image{rho_[arrows_[h].source], rho_[arrows_[h].target]};
    arrowRho_[h] = static_cast<int>(std::find(arrows_.begin(), arrows_.end(), image) - arrows_.begin());
  }

  euler_ = Eigen::MatrixXi::Identity(n_, n_);
  for (const Arrow& a : arrows_) euler_(a.source, a.target) -= 1;
  sym_ = euler_ + euler_.transpose();

  // Reflection closure of the simple roots.
  std::set<DimVector> seen;
  std::vector<DimVector> frontier;
  for (int i = 0; i < n_; ++i) {
    seen.insert(simple(i));
    frontier.push_back(simple(i));
  }
  while (!frontier.empty()) {
    DimVector b = frontier.back();
    frontier.pop_back();
    for (int i = 0; i < n_; ++i) {
      DimVector r = b;
      r[i] -= symForm(b, simple(i));
      if (r[i] < 0 || r == b) continue;
      if (seen.insert(r).second) frontier.push_back(r);
    }
  }
  roots_.assign(seen.begin(), seen.end());
  std::sort(roots_.begin(), roots_.end(), [](const DimVector& a, const DimVector& b) {
    int ha = height(a), hb = height(b);
    return ha != hb ? ha < hb : a > b;
  });
  for (const DimVector& r : roots_) rhoRoot_.push_back(rootIndex(rhoDim(r)));

  // Sinks first: reverse topological order.
  std::vector<int> indeg(n_, 0);
  for (const Arrow& a : arrows_) ++indeg[a.target];
  std::vector<int> topo;
  std::vector<bool> done(n_, false);
  while (static_cast<int>(topo.size()) < n_) {
    for (int v = 0; v < n_; ++v) {
      if (done[v] || indeg[v] != 0) continue;
      done[v] = true;
      topo.push_back(v);
      for (const Arrow& a : arrows_)
        if (a.source == v) --indeg[a.target];
      break;
    }
  }
  sinkOrder_.assign(topo.rbegin(), topo.rend());
}

void IQuiver::validate() const {
  if (n_ <= 0) throw InvalidQuiver("empty vertex set");
  if (typeRank(type_) != n_) throw InvalidQuiver("type " + type_ + " does not have " + std::to_string(n_) + " vertices");
  std::vector<std::vector<int>> adj(n_);
  std::set<std::pair<int, int>> edges;
  for (const Arrow& a : arrows_) {
    if (a.source < 0 || a.source >= n_ || a.target < 0 || a.target >= n_) throw InvalidQuiver("arrow out of range");
    if (a.source == a.target) throw InvalidQuiver("loop at vertex " + std::to_string(a.source + 1));
    auto e = std::minmax(a.source, a.target);
    if (!edges.insert(e).second) throw InvalidQuiver("multiple edge between vertices");
    adj[a.source].push_back(a.target);
    adj[a.target].push_back(a.source);
  }
  std::vector<bool> visited(n_, false);
  std::vector<std::string> labels;
  for (int v = 0; v < n_; ++v) {
    if (visited[v]) continue;
    std::vector<int> comp{v};
    visited[v] = true;
    for (std::size_t k = 0; k < comp.size(); ++k)
      for (int w : adj[comp[k]])
        if (!visited[w]) {
          visited[w] = true;
          comp.push_back(w);
        }
    std::string label = classify(comp, adj);
    if (label.empty()) throw InvalidQuiver("component containing vertex " + std::to_string(v + 1) + " is not ADE");
    labels.push_back(label);
  }
  std::vector<std::string> declared = typeComponents(type_);
  std::sort(labels.begin(), labels.end());
  std::sort(declared.begin(), declared.end());
  if (labels != declared) throw InvalidQuiver("underlying graph does not have type " + type_);

  if (static_cast<int>(rho_.size()) != n_) throw InvalidQuiver("involution has wrong size");
  for (int i = 0; i < n_; ++i) {
    if (rho_[i] < 0 || rho_[i] >= n_ || rho_[rho_[i]] != i) throw InvalidQuiver("rho is not an involution");
  }
  for (const Arrow& a : arrows_) {
    Arrow image{rho_[a.source], rho_[a.target]};
    if (std::find(arrows_.begin(), arrows_.end(), image) == arrows_.end())
      throw InvalidQuiver("rho does not preserve the arrow set");
  }
}

IQuiver IQuiver::parse(const std::string& text) {
  std::vector<std::string> parts = split(text, ';');
  if (parts.empty() || parts[0].empty()) throw ParseError("missing Dynkin type");
  std::string type = parts[0];
  int n = typeRank(type);
  std::vector<Arrow> arrows;
  std::vector<int> rho(n);
  std::iota(rho.begin(), rho.end(), 0);
  bool sawArrows = false, sawInv = false;
  auto vertex = [&](const std::string& s) {
    int v = parseInt(s, "vertex");
    if (v < 1 || v > n) throw ParseError("vertex " + s + " out of range 1.." + std::to_string(n));
    return v - 1;
  };
  for (std::size_t k = 1; k < parts.size(); ++k) {
    const std::string& part = parts[k];
    if (part.empty()) continue;
    std::size_t colon = part.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'arrows:' or 'inv:' in '" + part + "'");
    std::string key = trim(part.substr(0, colon));
    std::string body = trim(part.substr(colon + 1));
    if (key == "arrows") {
      if (sawArrows) throw ParseError("duplicate arrows section");
      sawArrows = true;
      if (body.empty()) continue;
      for (const std::string& tok : split(body, ',')) {
        std::size_t gt = tok.find('>');
        if (gt == std::string::npos) throw ParseError("bad arrow '" + tok + "'");
        arrows.push_back({vertex(trim(tok.substr(0, gt))), vertex(trim(tok.substr(gt + 1)))});
      }
    } else if (key == "inv") {
      if (sawInv) throw ParseError("duplicate inv section");
      sawInv = true;
      if (body.empty()) continue;
      std::vector<bool> assigned(n, false);
      for (const std::string& tok : split(body, ',')) {
        std::size_t c = tok.find(':');
        if (c == std::string::npos) throw ParseError("bad involution pair '" + tok + "'");
        int i = vertex(trim(tok.substr(0, c))), j = vertex(trim(tok.substr(c + 1)));
        if (assigned[i] || assigned[j]) throw InvalidQuiver("vertex appears in two involution pairs");
        assigned[i] = assigned[j] = true;
        rho[i] = j;
        rho[j] = i;
      }
    } else {
      throw ParseError("unknown section '" + key + "'");
    }
  }
  return IQuiver(type, n, arrows, rho);
}

bool IQuiver::isSplit() const {
  for (int i = 0; i < n_; ++i)
    if (rho_[i] != i) return false;
  return true;
}

std::string IQuiver::normalForm() const {
  std::vector<Arrow> sorted = arrows_;
  std::sort(sorted.begin(), sorted.end());
  std::string s = type_ + "; arrows:";
  for (std::size_t k = 0; k < sorted.size(); ++k)
    s += (k ? ", " : " ") + std::to_string(sorted[k].source + 1) + ">" + std::to_string(sorted[k].target + 1);
  s += "; inv:";
  bool first = true;
  for (int i = 0; i < n_; ++i)
    if (rho_[i] > i) {
      s += (first ? " " : ", ") + std::to_string(i + 1) + ":" + std::to_string(rho_[i] + 1);
      first = false;
    }
  return s;
}

std::uint64_t IQuiver::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : normalForm()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string IQuiver::hashHex() const {
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << hash();
  return out.str();
}

IQuiver IQuiver::reversed(const std::vector<int>& arrowIndices) const {
  std::vector<Arrow> arrows = arrows_;
  for (int h : arrowIndices) std::swap(arrows.at(h).source, arrows.at(h).target);
  return IQuiver(type_, n_, arrows, rho_);
}

int IQuiver::eulerForm(const DimVector& a, const DimVector& b) const {
  int s = 0;
  for (int i = 0; i < n_; ++i) s += a[i] * b[i];
  for (const Arrow& h : arrows_) s -= a[h.source] * b[h.target];
  return s;
}

int IQuiver::symForm(const DimVector& a, const DimVector& b) const { return eulerForm(a, b) + eulerForm(b, a); }

int IQuiver::rootIndex(const DimVector& beta) const {
  auto it = std::find(roots_.begin(), roots_.end(), beta);
  return it == roots_.end() ? -1 : static_cast<int>(it - roots_.begin());
}

DimVector IQuiver::simple(int i) const {
  DimVector e(n_, 0);
  e[i] = 1;
  return e;
}

DimVector IQuiver::rhoDim(const DimVector& d) const {
  DimVector r(n_);
  for (int i = 0; i < n_; ++i) r[rho_[i]] = d[i];
  return r;
}

KostantPartition IQuiver::rhoPartition(const KostantPartition& lambda) const {
  KostantPartition r(lambda.size(), 0);
  for (std::size_t k = 0; k < lambda.size(); ++k) r[rhoRoot_[k]] = lambda[k];
  return r;
}

KostantPartition IQuiver::single(int root, int mult) const {
  KostantPartition l = emptyPartition();
  l[root] = mult;
  return l;
}

DimVector IQuiver::dimVector(const KostantPartition& lambda) const {
  DimVector d(n_, 0);
  for (std::size_t k = 0; k < lambda.size(); ++k)
    for (int i = 0; i < n_; ++i) d[i] += lambda[k] * roots_[k][i];
  return d;
}

std::vector<KostantPartition> IQuiver::partitions(const DimVector& d) const {
  std::vector<KostantPartition> out;
  KostantPartition cur = emptyPartition();
  std::function<void(std::size_t, DimVector&)> rec = [&](std::size_t k, DimVector& rest) {
    if (k == roots_.size()) {
      if (std::all_of(rest.begin(), rest.end(), [](int x) { return x == 0; })) out.push_back(cur);
      return;
    }
    const DimVector& r = roots_[k];
    int m = 0;
    while (true) {
      cur[k] = m;
      rec(k + 1, rest);
      bool fits = true;
      for (int i = 0; i < n_; ++i)
        if (rest[i] < r[i]) fits = false;
      if (!fits) break;
      for (int i = 0; i < n_; ++i) rest[i] -= r[i];
      ++m;
    }
    for (int i = 0; i < n_; ++i) rest[i] += m * r[i];
    cur[k] = 0;
  };
  DimVector rest = d;
  if (std::any_of(rest.begin(), rest.end(), [](int x) { return x < 0; })) return out;
  rec(0, rest);
  return out;
}

Representation IQuiver::buildIndecomposable(int root, unsigned q) const {
  const GaloisField& F = galoisField(q);
  std::vector<Arrow> cur = arrows_;
  DimVector beta = roots_.at(root);
  std::vector<int> steps;
  int sink = -1;
  for (int guard = 0; sink < 0; ++guard) {
    if (guard > 4 * n_ * (numRoots() + 1)) throw std::logic_error("reflection sequence did not terminate");
    for (int k : sinkOrder_) {
      if (beta == simple(k)) {
        sink = k;
        break;
      }
      beta[k] -= symForm(beta, simple(k));
      for (Arrow& a : cur)
        if (a.target == k) std::swap(a.source, a.target);
      steps.push_back(k);
    }
  }
  Representation rep;
  rep.q = q;
  rep.dims = simple(sink);
  for (const Arrow& a : cur) rep.maps.emplace_back(rep.dims[a.target], rep.dims[a.source]);
  // Undo the reflections; vertex k is a source of the current orientation.
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    int k = *it;
    std::vector<int> out;
    int total = 0;
    for (std::size_t h = 0; h < cur.size(); ++h)
      if (cur[h].source == k) {
        out.push_back(static_cast<int>(h));
        total += rep.dims[cur[h].target];
      }
    FqMatrix psi(total, rep.dims[k]);
    int off = 0;
    for (int h : out) {
      const FqMatrix& x = rep.maps[h];
      for (int r = 0; r < x.rows; ++r)
        for (int c = 0; c < x.cols; ++c) psi(off + r, c) = x(r, c);
      off += x.rows;
    }
    FqMatrix pi = leftNullspace(F, psi);
    off = 0;
    for (int h : out) {
      int j = cur[h].target;
      FqMatrix y(pi.rows, rep.dims[j]);
      for (int r = 0; r < pi.rows; ++r)
        for (int c = 0; c < rep.dims[j]; ++c) y(r, c) = pi(r, off + c);
      off += rep.dims[j];
      rep.maps[h] = std::move(y);
      std::swap(cur[h].source, cur[h].target);
    }
    rep.dims[k] = pi.rows;
  }
  if (rep.dims != roots_[root] || cur != arrows_) throw std::logic_error("reflection functors produced wrong module");
  return rep;
}

Representation IQuiver::indecomposable(int root, unsigned q) const {
  std::lock_guard<std::mutex> guard(cache_->lock);
  auto key = std::make_pair(root, q);
  auto it = cache_->indecomposables.find(key);
  if (it != cache_->indecomposables.end()) return it->second;
  Representation rep = buildIndecomposable(root, q);
  cache_->indecomposables.emplace(key, rep);
  return rep;
}

Representation IQuiver::zeroModule(unsigned q) const {
  Representation z;
  z.q = q;
  z.dims.assign(n_, 0);
  z.maps.assign(arrows_.size(), FqMatrix(0, 0));
  return z;
}

Representation IQuiver::module(const KostantPartition& lambda, unsigned q) const {
  Representation m = zeroModule(q);
  for (std::size_t k = 0; k < lambda.size(); ++k)
    for (int c = 0; c < lambda[k]; ++c) m = directSum(m, indecomposable(static_cast<int>(k), q));
  return m;
}

const std::vector<int>& IQuiver::homTable() const {
  std::call_once(cache_->homOnce, [this] {
    int r = numRoots();
    std::vector<int> table(r * r);
    for (unsigned q : {2u, 3u}) {
      const GaloisField& F = galoisField(q);
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
          int d = homBasis(F, arrows_, indecomposable(a, q), indecomposable(b, q)).cols;
          if (q == 2)
            table[a * r + b] = d;
          else if (table[a * r + b] != d)
            throw std::logic_error("Hom dimension depends on the field");
        }
    }
    for (int a = 0; a < r; ++a)
      if (table[a * r + a] != 1) throw std::logic_error("indecomposable with non-local endomorphism ring");
    cache_->hom = std::move(table);
  });
  return cache_->hom;
}

int IQuiver::homRoots(int a, int b) const { return homTable()[a * numRoots() + b]; }

int IQuiver::homDim(const KostantPartition& m, const KostantPartition& n) const {
  const std::vector<int>& t = homTable();
  int r = numRoots(), s = 0;
  for (int a = 0; a < r; ++a) {
    if (!m[a]) continue;
    for (int b = 0; b < r; ++b)
      if (n[b]) s += m[a] * n[b] * t[a * r + b];
  }
  return s;
}

int IQuiver::extDim(const KostantPartition& m, const KostantPartition& n) const {
  return homDim(m, n) - eulerForm(dimVector(m), dimVector(n));
}

bool IQuiver::degenerationLess(const KostantPartition& lambda, const KostantPartition& mu) const {
  if (dimVector(lambda) != dimVector(mu)) throw DimensionMismatch("degenerationLess: dimension vectors differ");
  bool strict = false;
  for (int x = 0; x < numRoots(); ++x) {
    KostantPartition X = single(x);
    int hl = homDim(X, lambda), hm = homDim(X, mu);
    if (hl < hm) return false;
    if (hl > hm) strict = true;
  }
  return strict;
}

DimVector IQuiver::grade(const DimVector& alpha, const KostantPartition& lambda) const {
  DimVector g = dimVector(lambda);
  DimVector ra = rhoDim(alpha);
  for (int i = 0; i < n_; ++i) g[i] += alpha[i] + ra[i];
  return g;
}

bool IQuiver::extendedOrderLess(const DimVector& alpha, const KostantPartition& lambda, const DimVector& beta,
                                const KostantPartition& mu) const {
  if (grade(alpha, lambda) != grade(beta, mu)) return false;
  if (alpha == beta) return degenerationLess(lambda, mu);
  for (int i = 0; i < n_; ++i)
    if (alpha[i] > beta[i]) return false;
  return true;
}

nlohmann::json IQuiver::partitionToJson(const KostantPartition& lambda) const {
  nlohmann::json j = nlohmann::json::object();
  for (std::size_t k = 0; k < lambda.size(); ++k)
    if (lambda[k]) j[std::to_string(k)] = lambda[k];
  return j;
}

KostantPartition IQuiver::partitionFromJson(const nlohmann::json& j) const {
  KostantPartition l = emptyPartition();
  for (const auto& [key, val] : j.items()) {
    int k = parseInt(key, "partition key");
    if (k < 0 || k >= numRoots()) throw ParseError("root index out of range: " + key);
    l[k] = val.get<int>();
  }
  return l;
}

}  // namespace ihall
