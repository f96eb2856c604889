#include "ihall/galois.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace ihall {

namespace {

bool isPrime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Polynomials over F_p as digit vectors (lowest first), length k.
std::vector<unsigned> digits(unsigned code, unsigned p, unsigned k) {
  std::vector<unsigned> d(k);
  for (unsigned i = 0; i < k; ++i) {
    d[i] = code % p;
    code /= p;
  }
  return d;
}

unsigned encode(const std::vector<unsigned>& d, unsigned p) {
  unsigned code = 0;
  for (std::size_t i = d.size(); i-- > 0;) code = code * p + d[i];
  return code;
}

// Product of a and b modulo the monic polynomial x^k + f(x), f given by k digits.
unsigned mulMod(unsigned a, unsigned b, const std::vector<unsigned>& f, unsigned p, unsigned k) {
  std::vector<unsigned> da = digits(a, p, k), db = digits(b, p, k);
  std::vector<unsigned> prod(2 * k, 0);
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  for (unsigned d = 2 * k - 1; d >= k; --d) {
    unsigned c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    // x^k = -f(x)
    for (unsigned i = 0; i < k; ++i) prod[d - k + i] = (prod[d - k + i] + (p - c) * f[i]) % p;
  }
  prod.resize(k);
  return encode(prod, p);
}

}  // namespace

bool isPrimePower(unsigned q) {
  if (q < 2) return false;
  unsigned p = 2;
  while (q % p != 0) ++p;
  while (q % p == 0) q /= p;
  return q == 1 && isPrime(p);
}

GaloisField::GaloisField(unsigned q) : q_(q) {
  if (!isPrimePower(q) || q > 256) throw std::invalid_argument("GaloisField: unsupported order " + std::to_string(q));
  p_ = 2;
  while (q % p_ != 0) ++p_;
  k_ = 0;
  for (unsigned r = q; r > 1; r /= p_) ++k_;
  add_.resize(q * q);
  mul_.resize(q * q);
  neg_.resize(q);
  inv_.resize(q);
  for (unsigned a = 0; a < q; ++a) {
    std::vector<unsigned> da = digits(a, p_, k_);
    std::vector<unsigned> dn(k_);
    for (unsigned i = 0; i < k_; ++i) dn[i] = (p_ - da[i]) % p_;
    neg_[a] = static_cast<Fq>(encode(dn, p_));
    for (unsigned b = 0; b < q; ++b) {
      std::vector<unsigned> db = digits(b, p_, k_), ds(k_);
      for (unsigned i = 0; i < k_; ++i) ds[i] = (da[i] + db[i]) % p_;
      add_[a * q + b] = static_cast<Fq>(encode(ds, p_));
    }
  }
  // Search monic x^k + f(x) until the multiplication has no zero divisors.
  for (unsigned fcode = 0; fcode < q; ++fcode) {
    std::vector<unsigned> f = digits(fcode, p_, k_);
    bool field = true;
    for (unsigned a = 1; a < q && field; ++a) {
      bool hasInverse = false;
      for (unsigned b = 0; b < q; ++b) {
        unsigned c = mulMod(a, b, f, p_, k_);
        mul_[a * q + b] = static_cast<Fq>(c);
        if (c == 0 && b != 0) {
          field = false;
          break;
        }
        if (c == 1) {
          hasInverse = true;
          inv_[a] = static_cast<Fq>(b);
        }
      }
      if (!hasInverse) field = false;
    }
    if (field) {
      for (unsigned b = 0; b < q; ++b) mul_[b] = 0;
      inv_[0] = 0;
      return;
    }
  }
  throw std::logic_error("GaloisField: no irreducible polynomial found");
}

Fq GaloisField::fromInt(long n) const {
  long r = n % static_cast<long>(p_);
  if (r < 0) r += p_;
  return static_cast<Fq>(r);
}

const GaloisField& galoisField(unsigned q) {
  static std::mutex lock;
  static std::map<unsigned, std::unique_ptr<GaloisField>> fields;
  std::lock_guard<std::mutex> guard(lock);
  auto& slot = fields[q];
  if (!slot) slot = std::make_unique<GaloisField>(q);
  return *slot;
}

FqMatrix FqMatrix::identity(int n) {
  FqMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool FqMatrix::isZero() const {
  for (Fq x : data)
    if (x != 0) return false;
  return true;
}

FqMatrix multiply(const GaloisField& F, const FqMatrix& a, const FqMatrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("multiply: shape mismatch");
  FqMatrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int k = 0; k < a.cols; ++k) {
      Fq x = a(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.cols; ++j) {
        Fq y = b(k, j);
        if (y != 0) c(i, j) = F.add(c(i, j), F.mul(x, y));
      }
    }
  return c;
}

FqMatrix add(const GaloisField& F, const FqMatrix& a, const FqMatrix& b) {
  FqMatrix c = a;
  for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] = F.add(a.data[i], b.data[i]);
  return c;
}

FqMatrix subtract(const GaloisField& F, const FqMatrix& a, const FqMatrix& b) {
  FqMatrix c = a;
  for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] = F.sub(a.data[i], b.data[i]);
  return c;
}

FqMatrix transpose(const FqMatrix& a) {
  FqMatrix t(a.cols, a.rows);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
  return t;
}

std::vector<int> rowReduce(const GaloisField& F, FqMatrix& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int piv = -1;
    for (int r = row; r < m.rows; ++r)
      if (m(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int c = 0; c < m.cols; ++c) std::swap(m(piv, c), m(row, c));
    Fq s = F.inv(m(row, col));
    if (s != 1)
      for (int c = col; c < m.cols; ++c) m(row, c) = F.mul(m(row, c), s);
    for (int r = 0; r < m.rows; ++r) {
      if (r == row) continue;
      Fq f = m(r, col);
      if (f == 0) continue;
      Fq nf = F.neg(f);
      for (int c = col; c < m.cols; ++c)
        if (m(row, c) != 0) m(r, c) = F.add(m(r, c), F.mul(nf, m(row, c)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(const GaloisField& F, FqMatrix m) {
  // Forward elimination only.
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int piv = -1;
    for (int r = row; r < m.rows; ++r)
      if (m(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int c = col; c < m.cols; ++c) std::swap(m(piv, c), m(row, c));
    Fq s = F.inv(m(row, col));
    for (int r = row + 1; r < m.rows; ++r) {
      Fq f = m(r, col);
      if (f == 0) continue;
      Fq nf = F.neg(F.mul(f, s));
      for (int c = col; c < m.cols; ++c)
        if (m(row, c) != 0) m(r, c) = F.add(m(r, c), F.mul(nf, m(row, c)));
    }
    ++row;
  }
  return row;
}

FqMatrix nullspace(const GaloisField& F, const FqMatrix& m) {
  FqMatrix r = m;
  std::vector<int> pivots = rowReduce(F, r);
  std::vector<bool> isPivot(m.cols, false);
  for (int c : pivots) isPivot[c] = true;
  FqMatrix basis(m.cols, m.cols - static_cast<int>(pivots.size()));
  int k = 0;
  for (int free = 0; free < m.cols; ++free) {
    if (isPivot[free]) continue;
    basis(free, k) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], k) = F.neg(r(static_cast<int>(i), free));
    ++k;
  }
  return basis;
}

FqMatrix leftNullspace(const GaloisField& F, const FqMatrix& m) { return transpose(nullspace(F, transpose(m))); }

bool isInvertible(const GaloisField& F, const FqMatrix& m) { return m.rows == m.cols && rank(F, m) == m.rows; }

bool solveInSpan(const GaloisField& F, const FqMatrix& basis, const FqMatrix& target, FqMatrix& x) {
  // Augment and reduce.
  FqMatrix aug(basis.rows, basis.cols + target.cols);
  for (int i = 0; i < basis.rows; ++i) {
    for (int j = 0; j < basis.cols; ++j) aug(i, j) = basis(i, j);
    for (int j = 0; j < target.cols; ++j) aug(i, basis.cols + j) = target(i, j);
  }
  std::vector<int> pivots = rowReduce(F, aug);
  for (int c : pivots)
    if (c >= basis.cols) return false;
  if (static_cast<int>(pivots.size()) != basis.cols) throw std::invalid_argument("solveInSpan: dependent basis");
  x = FqMatrix(basis.cols, target.cols);
  for (int i = 0; i < basis.cols; ++i)
    for (int j = 0; j < target.cols; ++j) x(i, j) = aug(i, basis.cols + j);
  return true;
}

FqMatrix columnSpaceBasis(const GaloisField& F, const FqMatrix& m) {
  FqMatrix r = m;
  std::vector<int> pivots = rowReduce(F, r);
  FqMatrix out(m.rows, static_cast<int>(pivots.size()));
  for (std::size_t k = 0; k < pivots.size(); ++k)
    for (int i = 0; i < m.rows; ++i) out(i, static_cast<int>(k)) = m(i, pivots[k]);
  return out;
}

std::string str(const FqMatrix& m) {
  std::ostringstream out;
  out << "[";
  for (int i = 0; i < m.rows; ++i) {
    out << (i ? "; " : "");
    for (int j = 0; j < m.cols; ++j) out << (j ? " " : "") << static_cast<int>(m(i, j));
  }
  out << "]";
  return out.str();
}

}  // namespace ihall
