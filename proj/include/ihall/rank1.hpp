#pragma once

#include <map>
#include <utility>
#include <vector>

#include "ihall/laurent.hpp"

namespace ihall::rank1 {

// Element of the commutative ring Q(v^(1/2))[B, K^(+-1)], keyed by
// (exponent of B, exponent of K).
class BKPolynomial {
 public:
  using Key = std::pair<int, int>;
  using Terms = std::map<Key, HalfLaurent>;

  BKPolynomial() = default;
  static BKPolynomial monomial(int a, int b, const HalfLaurent& c = HalfLaurent(1));

  const Terms& terms() const { return terms_; }
  void addTerm(int a, int b, const HalfLaurent& c);
  BKPolynomial& operator+=(const BKPolynomial& o);
  friend BKPolynomial operator+(BKPolynomial x, const BKPolynomial& y) { return x += y; }
  friend BKPolynomial operator*(const BKPolynomial& x, const BKPolynomial& y);
  BKPolynomial scaled(const HalfLaurent& c) const;
  friend bool operator==(const BKPolynomial& x, const BKPolynomial& y) { return x.terms_ == y.terms_; }

  // {"B^3": "1", "B^1 K^1": "-2"}
  nlohmann::json toJson() const;

 private:
  Terms terms_;
};

// binom(n, k) with binom(n, k) = 0 for k < 0 and the usual extension to n < 0.
BigInt binom(long n, long k);
// C_{i,m} = binom(m, i) - binom(m, i - 2)
BigInt cCoef(long i, long m);

using Index = std::pair<int, int>;  // (v, w)

bool isDominant(int v, int w);

BKPolynomial Lclosed(int k, int n);
BKPolynomial Lrecurrence(int k, int n);

// Recurrence tables: X(k, m) and Y(k, m) for 0 <= k <= m.
BigInt xCoef(int k, int m);
BigInt yCoef(int k, int m);

// Indices (v, w1 + w2) of L(v1,w1) * L(v2,w2); all coefficients are 1.
std::vector<Index> multiplyL(Index p1, Index p2);

struct MonomialTerm {
  BigInt coeff;
  Index index;
};
// B^a K^b as a combination of L(v, w).
std::vector<MonomialTerm> expandMonomial(int a, int b);

struct StrataDims {
  long dimM;
  long dimStratum;
  long fiberDim;
  bool semismall;  // 2 fiberDim + dimStratum <= dimM
  bool relevant;   // equality
};
StrataDims strataDims(long v, long vPrime, long w);

}  // namespace ihall::rank1
