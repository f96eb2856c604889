#include "ihall/hallgen.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include "ihall/errors.hpp"

namespace ihall {

namespace {

int dot(const DimVector& a, const DimVector& b) {
  int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

BigRat qPower(unsigned q, int e) {
  BigRat r = 1;
  for (int k = 0; k < std::abs(e); ++k) r *= q;
  return e >= 0 ? r : BigRat(1) / r;
}

BigRat evalQ(const QLaurent& h, unsigned q) {
  BigRat s = 0;
  for (const auto& [e, c] : h) s += BigRat(c) * qPower(q, e);
  return s;
}

int floorDiv2(int e) { return e >= 0 ? e / 2 : -((-e + 1) / 2); }

}  // namespace

const std::vector<unsigned>& samplePrimePowers() {
  static const std::vector<unsigned> qs = [] {
    std::vector<unsigned> out;
    for (unsigned q = 2; q <= 256; ++q)
      if (isPrimePower(q)) out.push_back(q);
    return out;
  }();
  return qs;
}

HallStats& hallStats() {
  static HallStats stats;
  return stats;
}

TableCache::TableCache(const IQuiver& Q, std::string directory) : Q_(Q) {
  if (directory.empty()) return;
  std::filesystem::create_directories(directory);
  path_ = (std::filesystem::path(directory) / (Q.hashHex() + ".jsonl")).string();
  std::ifstream in(path_);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    if (j.value("schema", 0) != kSchema || j.value("quiver", "") != Q.normalForm()) continue;
    StructureTable t = fromJson(j);
    auto key = std::make_pair(t.mu, t.nu);
    auto it = tables_.find(key);
    if (it != tables_.end() && !(it->second == t)) throw CacheConflict("conflicting records in " + path_);
    tables_.emplace(key, std::move(t));
  }
}

std::string TableCache::defaultDirectory() {
  const char* dir = std::getenv("IHALL_CACHE_DIR");
  return dir ? dir : "";
}

std::optional<StructureTable> TableCache::find(const KostantPartition& mu, const KostantPartition& nu) const {
  std::lock_guard<std::mutex> guard(lock_);
  auto it = tables_.find({mu, nu});
  if (it == tables_.end()) return std::nullopt;
  return it->second;
}

void TableCache::insert(const StructureTable& table) {
  std::lock_guard<std::mutex> guard(lock_);
  auto key = std::make_pair(table.mu, table.nu);
  auto it = tables_.find(key);
  if (it != tables_.end()) {
    if (!(it->second == table)) throw CacheConflict("conflicting table for existing key");
    return;
  }
  tables_.emplace(key, table);
  if (path_.empty()) return;
  std::ofstream out(path_, std::ios::app);
  out << toJson(table).dump() << "\n";
}

std::size_t TableCache::size() const {
  std::lock_guard<std::mutex> guard(lock_);
  return tables_.size();
}

nlohmann::json TableCache::toJson(const StructureTable& t) const {
  nlohmann::json j;
  j["schema"] = kSchema;
  j["quiver"] = Q_.normalForm();
  j["key"] = {{"mu", Q_.partitionToJson(t.mu)}, {"nu", Q_.partitionToJson(t.nu)}};
  j["entries"] = nlohmann::json::array();
  for (const auto& [k, c] : t.entries)
    j["entries"].push_back({{"lambda", Q_.partitionToJson(k.first)}, {"gamma", k.second}, {"coeff", ihall::toJson(c)}});
  j["samples_used"] = t.samplesUsed;
  j["holdout"] = t.holdout;
  return j;
}

StructureTable TableCache::fromJson(const nlohmann::json& j) const {
  StructureTable t;
  t.mu = Q_.partitionFromJson(j.at("key").at("mu"));
  t.nu = Q_.partitionFromJson(j.at("key").at("nu"));
  for (const auto& e : j.at("entries"))
    t.entries.emplace(EntryKey{Q_.partitionFromJson(e.at("lambda")), e.at("gamma").get<DimVector>()},
                      halfLaurentFromJson(e.at("coeff")));
  t.samplesUsed = j.at("samples_used").get<std::vector<unsigned>>();
  t.holdout = j.at("holdout").get<unsigned>();
  return t;
}

HallEngine::HallEngine(const IQuiver& Q, std::string cacheDirectory) : Q_(Q), cache_(Q, std::move(cacheDirectory)) {}

HallEngine::Count HallEngine::countAtQ(const KostantPartition& mu, const KostantPartition& nu, unsigned q) const {
  LamIModule M = kqModule(Q_, mu, q), N = kqModule(Q_, nu, q);
  ExtensionSpace ext(Q_, M, N);
  if (std::pow(static_cast<double>(q), ext.dimExt()) > budget_)
    throw BudgetExceeded("q^dim Ext^1 = " + std::to_string(q) + "^" + std::to_string(ext.dimExt()));
  const GaloisField& F = galoisField(q);
  Count count;
  count.rankAlpha = ext.rankCoboundary();
  count.dimExt = ext.dimExt();
  int n = Q_.size();
  DimVector total(n);
  for (int i = 0; i < n; ++i) total[i] = M.dims[i] + N.dims[i];
  std::map<DimVector, std::optional<KostantPartition>> unique;
  std::vector<FqMatrix> eps;
  NormalForm nf;
  nf.gamma.resize(n);
  DimVector x(n);
  forEachProjectiveRep(ext.dimExt(), q, [&](const std::vector<Fq>& c, long w) {
    ext.middleEps(c, eps);
    for (int i = 0; i < n; ++i) nf.gamma[i] = rank(F, eps[i]);
    for (int i = 0; i < n; ++i) x[i] = total[i] - nf.gamma[i] - nf.gamma[Q_.rho()[i]];
    auto it = unique.find(x);
    if (it == unique.end()) {
      std::vector<KostantPartition> parts = Q_.partitions(x);
      it = unique.emplace(x, parts.size() == 1 ? std::optional<KostantPartition>(parts[0]) : std::nullopt).first;
    }
    if (it->second) {
      nf.partition = *it->second;
      count.weights[nf] += w;
    } else {
      count.weights[reduceToNormalForm(Q_, ext.middleTerm(c))] += w;
    }
  });
  return count;
}

int HallEngine::dimDForTwist(const KostantPartition& lambda, const DimVector& gamma, unsigned q) const {
  ExtensionSpace ext(Q_, kModule(Q_, gamma, q), kqModule(Q_, lambda, q));
  return ext.dimD();
}

int HallEngine::basisTwist(const KostantPartition& lambda, const DimVector& gamma) {
  std::lock_guard<std::recursive_mutex> guard(lock_);
  EntryKey key{lambda, gamma};
  auto it = twist_.find(key);
  if (it != twist_.end()) return it->second;
  int d2 = dimDForTwist(lambda, gamma, 2), d3 = dimDForTwist(lambda, gamma, 3);
  if (d2 != d3) throw InconsistentSamples("dim D(K_gamma, X) depends on q");
  DimVector k = kDim(Q_, gamma), x = Q_.dimVector(lambda);
  int t = Q_.eulerForm(k, x) + 2 * (d2 - dot(k, x));
  twist_.emplace(key, t);
  return t;
}

std::map<EntryKey, SqrtValue> HallEngine::productAtQ(const KostantPartition& mu, const KostantPartition& nu,
                                                     unsigned q) const {
  Count count = countAtQ(mu, nu, q);
  DimVector m = Q_.dimVector(mu), n = Q_.dimVector(nu);
  int euler = Q_.eulerForm(m, n), mn = dot(m, n);
  std::map<EntryKey, SqrtValue> out;
  for (const auto& [nf, w] : count.weights) {
    DimVector k = kDim(Q_, nf.gamma), x = Q_.dimVector(nf.partition);
    int t = Q_.eulerForm(k, x) + 2 * (dimDForTwist(nf.partition, nf.gamma, q) - dot(k, x));
    int e = euler - t;
    int parity = ((e % 2) + 2) % 2;
    BigRat value = BigRat(w) * qPower(q, (e - parity) / 2 + count.rankAlpha - mn);
    SqrtValue sv;
    if (parity == 0)
      sv.a = value;
    else
      sv.b = value;
    out[{nf.partition, nf.gamma}] = sv;
  }
  return out;
}

const StructureTable& HallEngine::genericProduct(const KostantPartition& mu, const KostantPartition& nu) {
  std::lock_guard<std::recursive_mutex> guard(lock_);
  auto key = std::make_pair(mu, nu);
  auto it = tables_.find(key);
  if (it != tables_.end()) return *it->second;
  if (auto cached = cache_.find(mu, nu)) {
    ++hallStats().tablesLoaded;
    return *tables_.emplace(key, std::make_unique<StructureTable>(*cached)).first->second;
  }

  DimVector m = Q_.dimVector(mu), n = Q_.dimVector(nu);
  int euler = Q_.eulerForm(m, n), mn = dot(m, n);
  const std::vector<unsigned>& qs = samplePrimePowers();
  std::vector<Count> counts;
  int maxExt = 0, rankAlpha = 0;
  while (true) {
    unsigned q = qs.at(counts.size());
    counts.push_back(countAtQ(mu, nu, q));
    maxExt = std::max(maxExt, counts.back().dimExt);
    if (counts.back().rankAlpha != counts.front().rankAlpha)
      throw InconsistentSamples("coboundary rank depends on q");
    rankAlpha = counts.front().rankAlpha;
    if (static_cast<int>(counts.size()) >= maxExt + 2) break;
  }
  std::size_t used = counts.size() - 1;

  std::set<EntryKey> keys;
  for (const Count& c : counts)
    for (const auto& [nf, w] : c.weights) keys.insert({nf.partition, nf.gamma});

  auto table = std::make_unique<StructureTable>();
  table->mu = mu;
  table->nu = nu;
  table->samplesUsed.assign(qs.begin(), qs.begin() + used);
  table->holdout = qs[used];
  DimVector grade;
  {
    DimVector zero(Q_.size(), 0);
    grade = Q_.grade(zero, mu);
    DimVector gn = Q_.grade(zero, nu);
    for (int i = 0; i < Q_.size(); ++i) grade[i] += gn[i];
  }
  for (const EntryKey& k : keys) {
    if (Q_.grade(k.second, k.first) != grade) throw std::logic_error("structure constant violates the grading");
    int e = euler - basisTwist(k.first, k.second);
    int parity = ((e % 2) + 2) % 2;
    int s = floorDiv2(e - parity) + rankAlpha - mn;
    // h(q) = q^s W(q) with deg W <= dim Ext^1.
    std::vector<Sample> samples;
    BigRat holdoutValue;
    for (std::size_t j = 0; j < counts.size(); ++j) {
      NormalForm nf{k.first, k.second};
      auto w = counts[j].weights.find(nf);
      BigRat value = w == counts[j].weights.end() ? BigRat(0) : BigRat(w->second) * qPower(qs[j], s);
      if (j < used)
        samples.push_back({qs[j], value});
      else
        holdoutValue = value;
    }
    QLaurent h = interpolateWindow(samples, s, s + maxExt);
    ++hallStats().holdoutChecks;
    if (evalQ(h, table->holdout) != holdoutValue)
      throw HoldoutMismatch("entry of u_mu * u_nu disagrees at q = " + std::to_string(table->holdout));
    ++hallStats().holdoutPassed;
    HalfLaurent coeff = fromQLaurent(h, parity);
    if (!coeff.isZero()) table->entries.emplace(k, coeff);
  }
  ++hallStats().tablesBuilt;
  cache_.insert(*table);
  return *tables_.emplace(key, std::move(table)).first->second;
}

int HallEngine::kCommutation(int i, const KostantPartition& mu) {
  std::lock_guard<std::recursive_mutex> guard(lock_);
  auto key = std::make_pair(i, mu);
  auto it = kComm_.find(key);
  if (it != kComm_.end()) return it->second;
  DimVector ei(Q_.size(), 0);
  ei[i] = 1;
  DimVector k = kDim(Q_, ei), m = Q_.dimVector(mu);
  // v-exponent of a product that must be a single monomial term.
  auto exponent = [&](const LamIModule& A, const LamIModule& B, const DimVector& a, const DimVector& b, unsigned q) {
    ExtensionSpace ext(Q_, A, B);
    std::map<NormalForm, long long> classes;
    forEachProjectiveRep(ext.dimExt(), q, [&](const std::vector<Fq>& c, long w) {
      classes[reduceToNormalForm(Q_, ext.middleTerm(c))] += w;
    });
    if (classes.size() != 1) throw NotMonomial("product of K_i and u_mu has several terms");
    NormalForm expect{mu, ei};
    if (classes.begin()->first != expect) throw NotMonomial("product of K_i and u_mu has the wrong normal form");
    // total count is q^dim Ext^1
    return Q_.eulerForm(a, b) + 2 * (ext.rankCoboundary() - dot(a, b) + ext.dimExt());
  };
  int c = 0;
  for (unsigned q : {2u, 3u}) {
    LamIModule K = kModule(Q_, ei, q), M = kqModule(Q_, mu, q);
    int left = exponent(K, M, k, m, q), right = exponent(M, K, m, k, q);
    if (q == 2)
      c = left - right;
    else if (c != left - right)
      throw NotMonomial("K-commutation exponent depends on q");
  }
  kComm_.emplace(key, c);
  return c;
}

}  // namespace ihall
