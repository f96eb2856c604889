#pragma once

#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ihall/laurent.hpp"
#include "ihall/modfq.hpp"

namespace ihall {

// (lambda, gamma) indexes the Hall basis symbol K_gamma * u_lambda.
using EntryKey = std::pair<KostantPartition, DimVector>;

struct StructureTable {
  KostantPartition mu, nu;
  std::map<EntryKey, HalfLaurent> entries;
  std::vector<unsigned> samplesUsed;
  unsigned holdout = 0;

  friend bool operator==(const StructureTable&, const StructureTable&) = default;
};

// Prime powers 2, 3, 4, 5, 7, 8, 9, 11, ... up to 256.
const std::vector<unsigned>& samplePrimePowers();

struct HallStats {
  std::atomic<long> tablesBuilt{0};
  std::atomic<long> tablesLoaded{0};
  std::atomic<long> holdoutChecks{0};
  std::atomic<long> holdoutPassed{0};
};
HallStats& hallStats();

// Append-only JSON-lines store of structure tables, one file per quiver.
class TableCache {
 public:
  static constexpr int kSchema = 1;
  // An empty directory keeps the cache in memory only.
  TableCache(const IQuiver& Q, std::string directory);
  // Reads IHALL_CACHE_DIR.
  static std::string defaultDirectory();

  std::optional<StructureTable> find(const KostantPartition& mu, const KostantPartition& nu) const;
  // Insert-if-absent; identical records are accepted, conflicting ones throw CacheConflict.
  void insert(const StructureTable& table);
  std::string path() const { return path_; }
  std::size_t size() const;

  nlohmann::json toJson(const StructureTable& t) const;
  StructureTable fromJson(const nlohmann::json& j) const;

 private:
  IQuiver Q_;
  std::string path_;
  mutable std::mutex lock_;
  std::map<std::pair<KostantPartition, KostantPartition>, StructureTable> tables_;
};

// Generic structure constants of u_mu * u_nu = sum phi K_gamma * u_lambda.
class HallEngine {
 public:
  explicit HallEngine(const IQuiver& Q, std::string cacheDirectory = TableCache::defaultDirectory());

  const IQuiver& quiver() const { return Q_; }
  TableCache& cache() { return cache_; }

  // Exact coefficients of K_gamma * u_lambda in u_mu * u_nu at v = sqrt(q).
  std::map<EntryKey, SqrtValue> productAtQ(const KostantPartition& mu, const KostantPartition& nu, unsigned q) const;
  const StructureTable& genericProduct(const KostantPartition& mu, const KostantPartition& nu);
  // c with [K_i] * u_mu = v^c u_mu * [K_i].
  int kCommutation(int i, const KostantPartition& mu);
  // [K_gamma] * [X] = v^t [X (+) K_gamma] for X = M(lambda).
  int basisTwist(const KostantPartition& lambda, const DimVector& gamma);

  void setBudget(double b) { budget_ = b; }

 private:
  struct Count {
    std::map<NormalForm, long long> weights;
    int rankAlpha = 0;
    int dimExt = 0;
  };
  Count countAtQ(const KostantPartition& mu, const KostantPartition& nu, unsigned q) const;
  int dimDForTwist(const KostantPartition& lambda, const DimVector& gamma, unsigned q) const;

  IQuiver Q_;
  TableCache cache_;
  double budget_ = 2147483648.0;
  std::recursive_mutex lock_;
  std::map<std::pair<KostantPartition, KostantPartition>, std::unique_ptr<StructureTable>> tables_;
  std::map<std::pair<int, KostantPartition>, int> kComm_;
  std::map<EntryKey, int> twist_;
};

}  // namespace ihall
