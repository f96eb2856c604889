#include "ihall/ihallalg.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "ihall/errors.hpp"

namespace ihall {

namespace {

DimVector addDims(DimVector a, const DimVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

using RationalTerms = std::map<Symbol, RationalFunction>;

void accumulate(RationalTerms& acc, const AlgElement& a, const RationalFunction& c) {
  for (const auto& [s, x] : a.terms()) {
    RationalFunction& slot = acc[s];
    slot += c * RationalFunction(x);
  }
}

AlgElement toElement(const RationalTerms& acc) {
  AlgElement out;
  for (const auto& [s, r] : acc)
    if (!r.isZero()) out.addTerm(s, r.toLaurent());
  return out;
}

}  // namespace

AlgElement AlgElement::symbol(const Symbol& s, const HalfLaurent& c) {
  AlgElement a;
  a.addTerm(s, c);
  return a;
}

HalfLaurent AlgElement::coeff(const Symbol& s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? HalfLaurent() : it->second;
}

void AlgElement::addTerm(const Symbol& s, const HalfLaurent& c) {
  if (c.isZero()) return;
  auto [it, inserted] = terms_.emplace(s, c);
  if (inserted) return;
  it->second += c;
  if (it->second.isZero()) terms_.erase(it);
}

AlgElement& AlgElement::operator+=(const AlgElement& o) {
  for (const auto& [s, c] : o.terms_) addTerm(s, c);
  return *this;
}

AlgElement& AlgElement::operator-=(const AlgElement& o) {
  for (const auto& [s, c] : o.terms_) addTerm(s, -c);
  return *this;
}

AlgElement AlgElement::scaled(const HalfLaurent& c) const {
  AlgElement out;
  if (c.isZero()) return out;
  for (const auto& [s, x] : terms_) out.terms_.emplace(s, x * c);
  return out;
}

std::string wordString(const Word& w) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < w.k.size(); ++i) {
    if (w.k[i] == 0) continue;
    os << (first ? "" : " ") << "K" << i + 1;
    if (w.k[i] != 1) os << "^" << w.k[i];
    first = false;
  }
  for (int i : w.u) {
    os << (first ? "" : " ") << "u" << i + 1;
    first = false;
  }
  return first ? "1" : os.str();
}

IHallAlgebra::IHallAlgebra(const IQuiver& Q, std::string cacheDirectory)
    : Q_(Q), engine_(Q, std::move(cacheDirectory)) {}

AlgElement IHallAlgebra::one() const { return u(Q_.emptyPartition()); }

AlgElement IHallAlgebra::u(const KostantPartition& lambda) const {
  return AlgElement::symbol({DimVector(Q_.size(), 0), lambda});
}

AlgElement IHallAlgebra::generator(int i) const { return u(Q_.single(Q_.rootIndex(Q_.simple(i)))); }

AlgElement IHallAlgebra::k(const DimVector& alpha) const { return AlgElement::symbol({alpha, Q_.emptyPartition()}); }

DimVector IHallAlgebra::grade(const Symbol& s) const {
  DimVector g = Q_.dimVector(s.lambda);
  DimVector r = Q_.rhoDim(s.alpha);
  for (int i = 0; i < Q_.size(); ++i) g[i] += s.alpha[i] + r[i];
  return g;
}

DimVector IHallAlgebra::gradeOf(const AlgElement& a) const {
  if (a.isZero()) throw DimensionMismatch("zero element has no grade");
  DimVector g = grade(a.terms().begin()->first);
  for (const auto& [s, c] : a.terms())
    if (grade(s) != g) throw DimensionMismatch("element is not homogeneous");
  return g;
}

std::vector<Symbol> IHallAlgebra::symbolsOfGrade(const DimVector& nu) const {
  int n = Q_.size();
  std::vector<Symbol> out;
  DimVector alpha(n, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      DimVector rest = nu, r = Q_.rhoDim(alpha);
      for (int j = 0; j < n; ++j) {
        rest[j] -= alpha[j] + r[j];
        if (rest[j] < 0) return;
      }
      for (const auto& lambda : Q_.partitions(rest)) out.push_back({alpha, lambda});
      return;
    }
    for (alpha[i] = 0; alpha[i] <= nu[i]; ++alpha[i]) rec(i + 1);
    alpha[i] = 0;
  };
  rec(0);
  return out;
}

int IHallAlgebra::kTwist2(const KostantPartition& lambda, const DimVector& beta) {
  if (std::all_of(lambda.begin(), lambda.end(), [](int m) { return m == 0; })) return 0;
  int e = 0;
  for (int i = 0; i < Q_.size(); ++i)
    if (beta[i] != 0) e -= beta[i] * engine_.kCommutation(i, lambda);
  return 2 * e;
}

AlgElement IHallAlgebra::multiply(const AlgElement& a, const AlgElement& b) {
  AlgElement out;
  for (const auto& [s1, c1] : a.terms())
    for (const auto& [s2, c2] : b.terms()) {
      // u_lambda K_beta = v^(-sum beta_i c_i(lambda)) K_beta u_lambda
      HalfLaurent c = (c1 * c2).shifted(kTwist2(s1.lambda, s2.alpha));
      DimVector alpha = addDims(s1.alpha, s2.alpha);
      for (const auto& [key, phi] : engine_.genericProduct(s1.lambda, s2.lambda).entries)
        out.addTerm({addDims(alpha, key.second), key.first}, c * phi);
    }
  return out;
}

int IHallAlgebra::rescaleExp2(const KostantPartition& lambda) const {
  DimVector d = Q_.dimVector(lambda);
  return -2 * Q_.dimEnd(lambda) + Q_.eulerForm(d, d);
}

int IHallAlgebra::diamondExp2(const DimVector& alpha, const KostantPartition& lambda) const {
  DimVector diff = alpha, r = Q_.rhoDim(alpha);
  for (int i = 0; i < Q_.size(); ++i) diff[i] -= r[i];
  return Q_.symForm(diff, Q_.dimVector(lambda));
}

AlgElement IHallAlgebra::rescaledU(const KostantPartition& lambda) const {
  return u(lambda).scaled(HalfLaurent::monomial(1, rescaleExp2(lambda)));
}

AlgElement IHallAlgebra::diamond(const DimVector& alpha, const AlgElement& a) const {
  AlgElement out;
  for (const auto& [s, c] : a.terms())
    out.addTerm({addDims(s.alpha, alpha), s.lambda}, c.shifted(diamondExp2(alpha, s.lambda)));
  return out;
}

AlgElement IHallAlgebra::timesK(const AlgElement& a, const DimVector& alpha) {
  AlgElement out;
  for (const auto& [s, c] : a.terms()) out.addTerm({addDims(s.alpha, alpha), s.lambda}, c.shifted(kTwist2(s.lambda, alpha)));
  return out;
}

const AlgElement& IHallAlgebra::expandU(const std::vector<int>& word) {
  auto it = uWords_.find(word);
  if (it != uWords_.end()) return it->second;
  AlgElement value;
  if (word.empty()) {
    value = one();
  } else {
    std::vector<int> prefix(word.begin(), word.end() - 1);
    AlgElement head = expandU(prefix);
    value = multiply(head, generator(word.back()));
  }
  return uWords_.emplace(word, std::move(value)).first->second;
}

AlgElement IHallAlgebra::expandWord(const Word& w) {
  AlgElement out;
  for (const auto& [s, c] : expandU(w.u).terms()) out.addTerm({addDims(s.alpha, w.k), s.lambda}, c);
  return out;
}

const IHallAlgebra::WordBasis& IHallAlgebra::wordBasis(const DimVector& g) {
  auto it = wordBases_.find(g);
  if (it != wordBases_.end()) return *it->second;
  int n = Q_.size();
  auto basis = std::make_unique<WordBasis>();
  basis->symbols = symbolsOfGrade(g);
  std::map<Symbol, int> index;
  for (std::size_t s = 0; s < basis->symbols.size(); ++s) index[basis->symbols[s]] = static_cast<int>(s);
  int size = static_cast<int>(basis->symbols.size());

  // Adapted words first: K-prefix, then the vertices in sink-first order.
  std::set<DimVector> prefixes;
  for (const Symbol& s : basis->symbols) prefixes.insert(s.alpha);
  std::vector<Word> candidates;
  std::vector<Word> permutations;
  for (const DimVector& beta : prefixes) {
    DimVector content = g, r = Q_.rhoDim(beta);
    for (int i = 0; i < n; ++i) content[i] -= beta[i] + r[i];
    Word adapted{beta, {}};
    for (int v : Q_.sinkOrder())
      for (int m = 0; m < content[v]; ++m) adapted.u.push_back(v);
    candidates.push_back(adapted);
    std::vector<int> perm = adapted.u;
    std::sort(perm.begin(), perm.end());
    do {
      if (perm != adapted.u) permutations.push_back({beta, perm});
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  auto expansionMatrix = [&](const std::vector<Word>& words) {
    Mat<RationalFunction> m = Mat<RationalFunction>::Constant(size, static_cast<Eigen::Index>(words.size()), RationalFunction(0));
    for (std::size_t w = 0; w < words.size(); ++w) {
      AlgElement e = expandWord(words[w]);
      for (const auto& [s, c] : e.terms()) {
        auto found = index.find(s);
        if (found == index.end()) throw std::logic_error("word " + wordString(words[w]) + " left the grade " + dimString(g));
        m(found->second, static_cast<Eigen::Index>(w)) = RationalFunction(c);
      }
    }
    return m;
  };

  std::vector<int> pivots;
  for (int pass = 0; pass < 2; ++pass) {
    if (pass == 1) candidates.insert(candidates.end(), permutations.begin(), permutations.end());
    Mat<RationalFunction> m = expansionMatrix(candidates);
    pivots = rowReduce(m);
    if (static_cast<int>(pivots.size()) == size) break;
  }
  if (static_cast<int>(pivots.size()) != size)
    throw NotInSpan("words do not span the grade " + dimString(g));
  for (int p : pivots) basis->words.push_back(candidates[p]);

  Mat<RationalFunction> chosen = expansionMatrix(basis->words);
  Mat<RationalFunction> aug = Mat<RationalFunction>::Constant(size, 2 * size, RationalFunction(0));
  aug.leftCols(size) = chosen;
  for (int i = 0; i < size; ++i) aug(i, size + i) = RationalFunction(1);
  rowReduce(aug);
  basis->inverse = aug.rightCols(size);
  return *wordBases_.emplace(g, std::move(basis)).first->second;
}

WordCombination IHallAlgebra::expressInWords(const AlgElement& a) {
  WordCombination out;
  for (const auto& [s, c] : a.terms()) {
    const WordBasis& wb = wordBasis(Q_.dimVector(s.lambda));
    Symbol plain{DimVector(Q_.size(), 0), s.lambda};
    auto col = std::find(wb.symbols.begin(), wb.symbols.end(), plain) - wb.symbols.begin();
    for (std::size_t w = 0; w < wb.words.size(); ++w) {
      const RationalFunction& x = wb.inverse(static_cast<Eigen::Index>(w), col);
      if (x.isZero()) continue;
      Word shifted{addDims(wb.words[w].k, s.alpha), wb.words[w].u};
      RationalFunction& slot = out[shifted];
      slot += x * RationalFunction(c);
      if (slot.isZero()) out.erase(shifted);
    }
  }
  return out;
}

AlgElement IHallAlgebra::evaluate(const WordCombination& comb) {
  RationalTerms acc;
  for (const auto& [w, r] : comb) accumulate(acc, expandWord(w), r);
  return toElement(acc);
}

const AlgElement& IHallAlgebra::barU(const KostantPartition& lambda) {
  auto it = barU_.find(lambda);
  if (it != barU_.end()) return it->second;
  RationalTerms acc;
  for (const auto& [w, r] : expressInWords(u(lambda))) {
    std::vector<int> reversed(w.u.rbegin(), w.u.rend());
    AlgElement image = timesK(expandU(reversed), w.k);
    accumulate(acc, image, bar(r) * RationalFunction(HalfLaurent::vpow(-static_cast<int>(w.u.size()))));
  }
  return barU_.emplace(lambda, toElement(acc)).first->second;
}

AlgElement IHallAlgebra::barInvolve(const AlgElement& a) {
  AlgElement out;
  for (const auto& [s, c] : a.terms()) {
    AlgElement image = timesK(barU(s.lambda), s.alpha);
    out += image.scaled(bar(c));
  }
  return out;
}

nlohmann::json IHallAlgebra::toJson(const AlgElement& a) const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [s, c] : a.terms())
    j.push_back({{"alpha", s.alpha}, {"lambda", Q_.partitionToJson(s.lambda)}, {"coeff", ihall::toJson(c)}});
  return j;
}

AlgElement IHallAlgebra::fromJson(const nlohmann::json& j) const {
  AlgElement a;
  for (const auto& t : j)
    a.addTerm({t.at("alpha").get<DimVector>(), Q_.partitionFromJson(t.at("lambda"))}, halfLaurentFromJson(t.at("coeff")));
  return a;
}

}  // namespace ihall
