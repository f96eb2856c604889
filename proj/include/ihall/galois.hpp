#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ihall {

using Fq = std::uint8_t;

// GF(q) for prime powers q <= 256. Elements are codes 0..q-1; for q = p^k the
// code is the base-p digit vector of a polynomial modulo a fixed irreducible,
// so 0 and 1 are the field's zero and one and n mod p embeds the prime field.
class GaloisField {
 public:
  explicit GaloisField(unsigned q);

  unsigned q() const { return q_; }
  unsigned p() const { return p_; }
  unsigned degree() const { return k_; }

  Fq add(Fq a, Fq b) const { return add_[a * q_ + b]; }
  Fq sub(Fq a, Fq b) const { return add_[a * q_ + neg_[b]]; }
  Fq mul(Fq a, Fq b) const { return mul_[a * q_ + b]; }
  Fq neg(Fq a) const { return neg_[a]; }
  Fq inv(Fq a) const { return inv_[a]; }
  Fq fromInt(long n) const;

 private:
  unsigned q_, p_, k_;
  std::vector<Fq> add_, mul_, neg_, inv_;
};

// Shared instance per q.
const GaloisField& galoisField(unsigned q);

bool isPrimePower(unsigned q);

// Dense row-major matrix of field codes.
struct FqMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Fq> data;

  FqMatrix() = default;
  FqMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0) {}
  static FqMatrix identity(int n);

  Fq& operator()(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
  Fq operator()(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
  bool isZero() const;
  friend bool operator==(const FqMatrix& a, const FqMatrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.data == b.data;
  }
};

FqMatrix multiply(const GaloisField& F, const FqMatrix& a, const FqMatrix& b);
FqMatrix add(const GaloisField& F, const FqMatrix& a, const FqMatrix& b);
FqMatrix subtract(const GaloisField& F, const FqMatrix& a, const FqMatrix& b);
FqMatrix transpose(const FqMatrix& a);

// In-place reduced row echelon form; returns pivot columns.
std::vector<int> rowReduce(const GaloisField& F, FqMatrix& m);
int rank(const GaloisField& F, FqMatrix m);
// Columns form a basis of {x : m x = 0}.
FqMatrix nullspace(const GaloisField& F, const FqMatrix& m);
// Rows form a basis of {y : y m = 0}.
FqMatrix leftNullspace(const GaloisField& F, const FqMatrix& m);
bool isInvertible(const GaloisField& F, const FqMatrix& m);
// Solve basis * x = target for x, for basis with independent columns; returns
// false if target is outside the column span.
bool solveInSpan(const GaloisField& F, const FqMatrix& basis, const FqMatrix& target, FqMatrix& x);
// Columns of a matrix whose column span is the span of the given columns.
FqMatrix columnSpaceBasis(const GaloisField& F, const FqMatrix& m);

std::string str(const FqMatrix& m);

}  // namespace ihall
