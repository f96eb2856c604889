#pragma once

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace ihall {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Finite sum of c_n v^(n/2) keyed by the doubled exponent n. Zero
// coefficients are never stored.
class HalfLaurent {
 public:
  using Terms = std::map<int, BigInt>;

  HalfLaurent() = default;
  HalfLaurent(int c) : HalfLaurent(BigInt(c)) {}
  HalfLaurent(long c) : HalfLaurent(BigInt(c)) {}
  HalfLaurent(const BigInt& c) {
    if (c != 0) terms_.emplace(0, c);
  }

  // c * v^(n/2)
  static HalfLaurent monomial(const BigInt& c, int n);
  // v^e for integer e
  static HalfLaurent vpow(int e) { return monomial(1, 2 * e); }

  const Terms& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  bool isMonomial() const { return terms_.size() == 1; }
  int minExp2() const { return terms_.begin()->first; }
  int maxExp2() const { return terms_.rbegin()->first; }
  BigInt coeff(int n) const;
  void addTerm(int n, const BigInt& c);

  // multiply by v^(n/2)
  HalfLaurent shifted(int n) const;
  HalfLaurent scaled(const BigInt& c) const;

  HalfLaurent& operator+=(const HalfLaurent& o);
  HalfLaurent& operator-=(const HalfLaurent& o);
  HalfLaurent& operator*=(const HalfLaurent& o);
  friend HalfLaurent operator+(HalfLaurent a, const HalfLaurent& b) { return a += b; }
  friend HalfLaurent operator-(HalfLaurent a, const HalfLaurent& b) { return a -= b; }
  friend HalfLaurent operator*(const HalfLaurent& a, const HalfLaurent& b);
  HalfLaurent operator-() const;
  friend bool operator==(const HalfLaurent& a, const HalfLaurent& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const HalfLaurent& a, const HalfLaurent& b) { return !(a == b); }
  // Total order used only for deterministic container keys.
  friend bool operator<(const HalfLaurent& a, const HalfLaurent& b) { return a.terms_ < b.terms_; }

  // Human-readable form, e.g. "v^(-2) - 1 + v^(1/2)".
  std::string str() const;

 private:
  Terms terms_;
};

HalfLaurent bar(const HalfLaurent& p);
inline std::ostream& operator<<(std::ostream& os, const HalfLaurent& p) { return os << p.str(); }

// Exact value a + b*sqrt(q).
struct SqrtValue {
  BigRat a;
  BigRat b;
  friend bool operator==(const SqrtValue& x, const SqrtValue& y) { return x.a == y.a && x.b == y.b; }
};

// Evaluate at v = sqrt(q). Only integer powers of v are accepted, all of one
// parity. Throws MixedParity otherwise.
SqrtValue evalAtPrimePower(const HalfLaurent& p, unsigned q);

struct Sample {
  unsigned q;
  BigRat value;
};

// Laurent polynomial in q with exponents in [lo, hi], as exponent -> coeff.
using QLaurent = std::map<int, BigInt>;

// The unique h in Z[q, q^-1] with exponents in [lo, hi] matching every
// sample. Extra samples beyond hi - lo + 1 are checked for consistency.
QLaurent interpolateWindow(const std::vector<Sample>& samples, int lo, int hi);
QLaurent interpolate(const std::vector<Sample>& samples, int negDegreeBound, int degreeBound);

// h(q) with q = v^2, times v^(parity).
HalfLaurent fromQLaurent(const QLaurent& h, int vShift = 0);

struct Positivity {
  bool inN_v_half = false;  // all coefficients nonnegative
  bool inN_vinv = false;    // N-span of 1, v^-1, v^-2, ...
  bool barSymmetric = false;
};
Positivity positivityClass(const HalfLaurent& p);

// True iff p lies in v^-1 Z[v^-1].
bool inVinvZVinv(const HalfLaurent& p);

nlohmann::json toJson(const HalfLaurent& p);
HalfLaurent halfLaurentFromJson(const nlohmann::json& j);

// Fraction of two HalfLaurents, reduced: the denominator is a polynomial in
// v^(1/2) with nonzero constant term and positive leading coefficient, and
// numerator and denominator share no common factor or integer content.
class RationalFunction {
 public:
  RationalFunction() = default;
  RationalFunction(int c) : num_(c), den_(1) {}
  RationalFunction(const HalfLaurent& p) : num_(p), den_(1) {}
  RationalFunction(const HalfLaurent& n, const HalfLaurent& d);

  const HalfLaurent& num() const { return num_; }
  const HalfLaurent& den() const { return den_; }
  bool isZero() const { return num_.isZero(); }
  bool isLaurent() const { return den_ == HalfLaurent(1); }
  // Throws NonIntegral unless isLaurent().
  HalfLaurent toLaurent() const;
  // Total degree used for pivot choice.
  int degree() const;

  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction operator-() const { return RationalFunction(-num_, den_, Reduced{}); }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  std::string str() const;

 private:
  struct Reduced {};
  RationalFunction(HalfLaurent n, HalfLaurent d, Reduced) : num_(std::move(n)), den_(std::move(d)) {}
  void reduce();

  HalfLaurent num_;
  HalfLaurent den_{1};
};

RationalFunction bar(const RationalFunction& r);

// Polynomial helpers in t = v^(1/2); dense coefficient vectors, lowest first.
namespace poly {
using Poly = std::vector<BigInt>;
BigInt content(const Poly& p);
Poly primitivePart(const Poly& p);
Poly gcd(Poly a, Poly b);
// Exact division; throws NonIntegral if b does not divide a over Z.
Poly divExact(const Poly& a, const Poly& b);
}  // namespace poly

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Reduced row echelon form over Q(v^(1/2)), pivoting on the entry of lowest
// degree in each column. Returns the pivot columns.
std::vector<int> rowReduce(Mat<RationalFunction>& m);

}  // namespace ihall

namespace Eigen {

template <>
struct NumTraits<ihall::HalfLaurent> : GenericNumTraits<ihall::HalfLaurent> {
  using Real = ihall::HalfLaurent;
  using NonInteger = ihall::HalfLaurent;
  using Nested = ihall::HalfLaurent;
  using Literal = ihall::HalfLaurent;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 64
  };
};

template <>
struct NumTraits<ihall::RationalFunction> : GenericNumTraits<ihall::RationalFunction> {
  using Real = ihall::RationalFunction;
  using NonInteger = ihall::RationalFunction;
  using Nested = ihall::RationalFunction;
  using Literal = ihall::RationalFunction;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 128,
    MulCost = 256
  };
};

}  // namespace Eigen
