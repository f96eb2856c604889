#include "ihall/rank1.hpp"

#include <mutex>
#include <string>

#include "ihall/errors.hpp"

namespace ihall::rank1 {

BKPolynomial BKPolynomial::monomial(int a, int b, const HalfLaurent& c) {
  BKPolynomial p;
  p.addTerm(a, b, c);
  return p;
}

void BKPolynomial::addTerm(int a, int b, const HalfLaurent& c) {
  if (c.isZero()) return;
  auto [it, inserted] = terms_.emplace(Key{a, b}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.isZero()) terms_.erase(it);
  }
}

BKPolynomial& BKPolynomial::operator+=(const BKPolynomial& o) {
  for (const auto& [k, c] : o.terms_) addTerm(k.first, k.second, c);
  return *this;
}

BKPolynomial operator*(const BKPolynomial& x, const BKPolynomial& y) {
  BKPolynomial r;
  for (const auto& [kx, cx] : x.terms_)
    for (const auto& [ky, cy] : y.terms_) r.addTerm(kx.first + ky.first, kx.second + ky.second, cx * cy);
  return r;
}

BKPolynomial BKPolynomial::scaled(const HalfLaurent& c) const {
  BKPolynomial r;
  for (const auto& [k, x] : terms_) r.addTerm(k.first, k.second, x * c);
  return r;
}

nlohmann::json BKPolynomial::toJson() const {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, c] : terms_) {
    std::string key;
    if (k.first != 0) key = "B^" + std::to_string(k.first);
    if (k.second != 0) key += (key.empty() ? "" : " ") + std::string("K^") + std::to_string(k.second);
    if (key.empty()) key = "1";
    j[key] = c.str();
  }
  return j;
}

BigInt binom(long n, long k) {
  if (k < 0) return 0;
  if (n < 0) {
    BigInt r = binom(k - n - 1, k);
    return k % 2 == 0 ? r : BigInt(-r);
  }
  if (k > n) return 0;
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

BigInt cCoef(long i, long m) { return binom(m, i) - binom(m, i - 2); }

bool isDominant(int v, int w) { return v >= 0 && w >= 0 && 2 * v <= w; }

namespace {

void requireDominant(int v, int w) {
  if (!isDominant(v, w))
    throw NotDominant("(" + std::to_string(v) + ", " + std::to_string(w) + ") violates 0 <= v <= w/2");
}

// Tables grown on demand; rows indexed by m, entries by k.
struct RecurrenceTable {
  explicit RecurrenceTable(int s) : shift(s) {}
  int shift;  // X uses C_{i, 2m-1}, Y uses C_{i, 2m}
  std::vector<std::vector<BigInt>> rows{{BigInt(1)}};
  std::mutex lock;

  BigInt get(int k, int m) {
    std::lock_guard<std::mutex> guard(lock);
    while (static_cast<int>(rows.size()) <= m) extend();
    return rows[m][k];
  }

  void extend() {
    const int m = static_cast<int>(rows.size());
    const long top = 2L * m - 1 + shift;
    std::vector<BigInt> row(m + 1);
    row[m] = 1;
    row[m - 1] = -cCoef(1, top);
    for (int k = 0; k <= m - 2; ++k) {
      BigInt acc = -cCoef(1, top) * rows[m - 1][k];
      for (int i = 2; i <= m - k; ++i) acc -= cCoef(i, top) * rows[m - i][k];
      row[k] = acc;
    }
    rows.push_back(std::move(row));
  }
};

RecurrenceTable& xTable() {
  static RecurrenceTable t{0};
  return t;
}

RecurrenceTable& yTable() {
  static RecurrenceTable t{1};
  return t;
}

}  // namespace

BigInt xCoef(int k, int m) { return xTable().get(k, m); }
BigInt yCoef(int k, int m) { return yTable().get(k, m); }

BKPolynomial Lclosed(int k, int n) {
  requireDominant(k, n);
  BKPolynomial p;
  for (int j = k; j <= n / 2; ++j) {
    BigInt c = binom(n - k - j, n - 2 * j);
    if ((j - k) % 2 != 0) c = -c;
    p.addTerm(n - 2 * j, j, HalfLaurent(c));
  }
  return p;
}

BKPolynomial Lrecurrence(int k, int n) {
  requireDominant(k, n);
  BKPolynomial p;
  const int half = n / 2;
  for (int i = 0; i <= half - k; ++i) {
    if (n % 2 == 0)
      p.addTerm(2 * i, half - i, HalfLaurent(xCoef(i, half - k)));
    else
      p.addTerm(2 * i + 1, half - i, HalfLaurent(yCoef(i, half - k)));
  }
  return p;
}

std::vector<Index> multiplyL(Index p1, Index p2) {
  auto [v1, w1] = p1;
  auto [v2, w2] = p2;
  requireDominant(v1, w1);
  requireDominant(v2, w2);
  const int hi = std::min({w1 - v1 + v2, w2 - v2 + v1, (w1 + w2) / 2});
  std::vector<Index> out;
  for (int v = v1 + v2; v <= hi; ++v) out.emplace_back(v, w1 + w2);
  return out;
}

std::vector<MonomialTerm> expandMonomial(int a, int b) {
  if (a < 0) throw std::invalid_argument("expandMonomial: negative power of B");
  std::vector<MonomialTerm> out;
  for (int i = 0; i <= a / 2; ++i) {
    BigInt c = cCoef(i, a - 1);
    if (c != 0) out.push_back({c, {i + b, a + 2 * b}});
  }
  return out;
}

StrataDims strataDims(long v, long vPrime, long w) {
  if (!(0 <= vPrime && vPrime <= v && 2 * v <= w))
    throw NotDominant("strataDims needs 0 <= v' <= v <= w/2");
  StrataDims d;
  d.dimM = 2 * v * (w - v);
  d.dimStratum = 2 * vPrime * (w - vPrime);
  d.fiberDim = (v - vPrime) * (w - v - vPrime);
  d.semismall = 2 * d.fiberDim + d.dimStratum <= d.dimM;
  d.relevant = 2 * d.fiberDim + d.dimStratum == d.dimM;
  return d;
}

}  // namespace ihall::rank1
