#include "ihall/laurent.hpp"

#include <sstream>

#include "ihall/errors.hpp"

namespace ihall {

HalfLaurent HalfLaurent::monomial(const BigInt& c, int n) {
  HalfLaurent p;
  if (c != 0) p.terms_.emplace(n, c);
  return p;
}

BigInt HalfLaurent::coeff(int n) const {
  auto it = terms_.find(n);
  return it == terms_.end() ? BigInt(0) : it->second;
}

void HalfLaurent::addTerm(int n, const BigInt& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(n, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

HalfLaurent HalfLaurent::shifted(int n) const {
  HalfLaurent r;
  for (const auto& [e, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), e + n, c);
  return r;
}

HalfLaurent HalfLaurent::scaled(const BigInt& c) const {
  if (c == 0) return {};
  HalfLaurent r = *this;
  for (auto& [e, x] : r.terms_) x *= c;
  return r;
}

HalfLaurent& HalfLaurent::operator+=(const HalfLaurent& o) {
  for (const auto& [e, c] : o.terms_) addTerm(e, c);
  return *this;
}

HalfLaurent& HalfLaurent::operator-=(const HalfLaurent& o) {
  for (const auto& [e, c] : o.terms_) addTerm(e, -c);
  return *this;
}

HalfLaurent operator*(const HalfLaurent& a, const HalfLaurent& b) {
  HalfLaurent r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) r.addTerm(ea + eb, ca * cb);
  return r;
}

HalfLaurent& HalfLaurent::operator*=(const HalfLaurent& o) { return *this = *this * o; }

HalfLaurent HalfLaurent::operator-() const { return scaled(-1); }

namespace {

std::string exponentText(int n) {
  if (n % 2 == 0) {
    int e = n / 2;
    if (e == 1) return "v";
    if (e < 0) return "v^(" + std::to_string(e) + ")";
    return "v^" + std::to_string(e);
  }
  return "v^(" + std::to_string(n) + "/2)";
}

}  // namespace

std::string HalfLaurent::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      out << mag;
    } else {
      if (mag != 1) out << mag << "*";
      out << exponentText(e);
    }
  }
  return out.str();
}

HalfLaurent bar(const HalfLaurent& p) {
  HalfLaurent r;
  for (const auto& [e, c] : p.terms()) r.addTerm(-e, c);
  return r;
}

namespace {

// Integer square root of q if q is a perfect square, else 0.
unsigned exactSqrt(unsigned q) {
  unsigned r = 0;
  while ((r + 1) * (r + 1) <= q) ++r;
  return r * r == q ? r : 0;
}

BigRat ratPow(const BigRat& x, int e) {
  BigRat r = 1;
  BigRat base = e >= 0 ? x : BigRat(1) / x;
  for (int i = 0; i < std::abs(e); ++i) r *= base;
  return r;
}

}  // namespace

SqrtValue evalAtPrimePower(const HalfLaurent& p, unsigned q) {
  SqrtValue out{0, 0};
  int parity = -1;
  bool mixed = false;
  for (const auto& [n, c] : p.terms()) {
    if (n % 2 != 0) throw MixedParity("half-integer power of v in " + p.str());
    int e = n / 2;
    int par = ((e % 2) + 2) % 2;
    if (parity >= 0 && par != parity) mixed = true;
    parity = par;
    // v^e = q^((e - par)/2) * sqrt(q)^par
    BigRat val = ratPow(BigRat(q), (e - par) / 2) * BigRat(c);
    (par == 0 ? out.a : out.b) += val;
  }
  unsigned root = exactSqrt(q);
  if (root != 0) {
    out.a += out.b * root;
    out.b = 0;
    return out;
  }
  if (mixed) throw MixedParity("support of " + p.str() + " mixes even and odd powers of v");
  return out;
}

QLaurent interpolateWindow(const std::vector<Sample>& samples, int lo, int hi) {
  if (hi < lo) {
    for (const auto& s : samples)
      if (s.value != 0) throw InconsistentSamples("empty window but nonzero sample");
    return {};
  }
  const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
  if (samples.size() < n) throw InconsistentSamples("not enough samples for the degree window");
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (samples[i].q == samples[j].q) throw InconsistentSamples("repeated sample point");

  // P(q) = q^(-lo) h(q) has degree < n; Newton divided differences.
  std::vector<BigRat> xs(n), dd(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = samples[i].q;
    dd[i] = samples[i].value * ratPow(xs[i], -lo);
  }
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t i = n - 1; i >= k; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
      if (i == k) break;
    }
  // Expand the Newton form into monomial coefficients.
  std::vector<BigRat> coef(n, 0);
  for (std::size_t k = n; k-- > 0;) {
    // coef <- coef * (q - xs[k]) + dd[k]
    std::vector<BigRat> next(n, 0);
    for (std::size_t d = 0; d < n; ++d) {
      if (coef[d] == 0) continue;
      if (d + 1 < n) next[d + 1] += coef[d];
      next[d] -= coef[d] * xs[k];
    }
    next[0] += dd[k];
    coef = std::move(next);
  }
  QLaurent h;
  for (std::size_t d = 0; d < n; ++d) {
    if (coef[d] == 0) continue;
    if (denominator(coef[d]) != 1)
      throw NonIntegralCoefficient("interpolated coefficient " + coef[d].str() + " of q^" +
                                   std::to_string(lo + static_cast<int>(d)));
    h[lo + static_cast<int>(d)] = numerator(coef[d]);
  }
  for (std::size_t i = n; i < samples.size(); ++i) {
    BigRat val = 0;
    for (const auto& [e, c] : h) val += BigRat(c) * ratPow(BigRat(samples[i].q), e);
    if (val != samples[i].value)
      throw InconsistentSamples("sample at q=" + std::to_string(samples[i].q) + " disagrees");
  }
  return h;
}

QLaurent interpolate(const std::vector<Sample>& samples, int negDegreeBound, int degreeBound) {
  return interpolateWindow(samples, -negDegreeBound, degreeBound);
}

HalfLaurent fromQLaurent(const QLaurent& h, int vShift) {
  HalfLaurent p;
  for (const auto& [e, c] : h) p.addTerm(4 * e + 2 * vShift, c);
  return p;
}

Positivity positivityClass(const HalfLaurent& p) {
  Positivity r;
  r.inN_v_half = true;
  r.inN_vinv = true;
  for (const auto& [n, c] : p.terms()) {
    if (c < 0) r.inN_v_half = false;
    if (c < 0 || n > 0 || n % 2 != 0) r.inN_vinv = false;
  }
  r.barSymmetric = bar(p) == p;
  return r;
}

bool inVinvZVinv(const HalfLaurent& p) {
  for (const auto& [n, c] : p.terms())
    if (n >= 0 || n % 2 != 0) return false;
  return true;
}

nlohmann::json toJson(const HalfLaurent& p) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [n, c] : p.terms()) j[std::to_string(n)] = c.str();
  return j;
}

HalfLaurent halfLaurentFromJson(const nlohmann::json& j) {
  HalfLaurent p;
  for (const auto& [k, c] : j.items()) p.addTerm(std::stoi(k), BigInt(c.get<std::string>()));
  return p;
}

namespace poly {

namespace {

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const Poly& p) { return static_cast<int>(p.size()) - 1; }

// lc(b)^(deg a - deg b + 1) * a mod b
Poly pseudoRemainder(Poly a, const Poly& b) {
  const BigInt& lb = b.back();
  while (!a.empty() && deg(a) >= deg(b)) {
    BigInt la = a.back();
    int shift = deg(a) - deg(b);
    for (auto& c : a) c *= lb;
    for (int i = 0; i <= deg(b); ++i) a[i + shift] -= la * b[i];
    trim(a);
  }
  return a;
}

}  // namespace

BigInt content(const Poly& p) {
  BigInt g = 0;
  for (const auto& c : p) g = boost::multiprecision::gcd(g, c);
  return g < 0 ? BigInt(-g) : g;
}

Poly primitivePart(const Poly& p) {
  BigInt g = content(p);
  if (g == 0) return {};
  Poly r = p;
  for (auto& c : r) c /= g;
  trim(r);
  if (!r.empty() && r.back() < 0)
    for (auto& c : r) c = -c;
  return r;
}

Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  if (a.empty()) return primitivePart(b);
  if (b.empty()) return primitivePart(a);
  a = primitivePart(a);
  b = primitivePart(b);
  if (deg(a) < deg(b)) std::swap(a, b);
  while (!b.empty()) {
    Poly r = pseudoRemainder(a, b);
    a = std::move(b);
    b = primitivePart(r);
  }
  return primitivePart(a);
}

Poly divExact(const Poly& a0, const Poly& b) {
  Poly a = a0;
  trim(a);
  if (a.empty()) return {};
  if (deg(a) < deg(b)) throw NonIntegral("polynomial division not exact");
  Poly q(static_cast<std::size_t>(deg(a) - deg(b) + 1), 0);
  while (!a.empty() && deg(a) >= deg(b)) {
    if (a.back() % b.back() != 0) throw NonIntegral("polynomial division not exact");
    BigInt c = a.back() / b.back();
    int shift = deg(a) - deg(b);
    q[shift] = c;
    for (int i = 0; i <= deg(b); ++i) a[i + shift] -= c * b[i];
    trim(a);
  }
  if (!a.empty()) throw NonIntegral("polynomial division not exact");
  return q;
}

}  // namespace poly

namespace {

poly::Poly toPoly(const HalfLaurent& p, int shift) {
  poly::Poly r(static_cast<std::size_t>(p.maxExp2() - shift + 1), 0);
  for (const auto& [n, c] : p.terms()) r[n - shift] = c;
  return r;
}

HalfLaurent fromPoly(const poly::Poly& p, int shift) {
  HalfLaurent r;
  for (std::size_t i = 0; i < p.size(); ++i) r.addTerm(static_cast<int>(i) + shift, p[i]);
  return r;
}

}  // namespace

RationalFunction::RationalFunction(const HalfLaurent& n, const HalfLaurent& d) : num_(n), den_(d) {
  if (d.isZero()) throw std::domain_error("RationalFunction: zero denominator");
  reduce();
}

void RationalFunction::reduce() {
  if (num_.isZero()) {
    den_ = HalfLaurent(1);
    return;
  }
  int a = num_.minExp2();
  int b = den_.minExp2();
  poly::Poly N = toPoly(num_, a);
  poly::Poly D = toPoly(den_, b);
  if (D.size() > 1) {
    poly::Poly g = poly::gcd(N, D);
    if (g.size() > 1) {
      N = poly::divExact(N, g);
      D = poly::divExact(D, g);
    }
  }
  BigInt c = boost::multiprecision::gcd(poly::content(N), poly::content(D));
  if (D.back() < 0) c = -c;
  for (auto& x : N) x /= c;
  for (auto& x : D) x /= c;
  num_ = fromPoly(N, a - b);
  den_ = fromPoly(D, 0);
}

HalfLaurent RationalFunction::toLaurent() const {
  if (!isLaurent()) throw NonIntegral("not a Laurent polynomial: " + str());
  return num_;
}

int RationalFunction::degree() const {
  int d = den_.maxExp2() - den_.minExp2();
  if (!num_.isZero()) d += num_.maxExp2() - num_.minExp2();
  return d;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.isZero()) return b;
  if (b.isZero()) return a;
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.isZero() || b.isZero()) return {};
  if (a.isLaurent() && b.isLaurent()) return RationalFunction(a.num_ * b.num_, HalfLaurent(1), RationalFunction::Reduced{});
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.isZero()) throw std::domain_error("RationalFunction: division by zero");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RationalFunction::str() const {
  if (isLaurent()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RationalFunction bar(const RationalFunction& r) { return RationalFunction(bar(r.num()), bar(r.den())); }

std::vector<int> rowReduce(Mat<RationalFunction>& m) {
  std::vector<int> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index best = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r)
      if (!m(r, col).isZero() && (best < 0 || m(r, col).degree() < m(best, col).degree())) best = r;
    if (best < 0) continue;
    m.row(row).swap(m.row(best));
    RationalFunction inv = RationalFunction(1) / m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c)
      if (!m(row, c).isZero()) m(row, c) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col).isZero()) continue;
      RationalFunction f = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c)
        if (!m(row, c).isZero()) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(static_cast<int>(col));
    ++row;
  }
  return pivots;
}

}  // namespace ihall
