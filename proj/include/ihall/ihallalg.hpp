#pragma once

#include <compare>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "ihall/hallgen.hpp"
#include "ihall/laurent.hpp"
#include "ihall/quiver.hpp"

namespace ihall {

// Hall basis symbol K_alpha * u_lambda, alpha in Z^I.
struct Symbol {
  DimVector alpha;
  KostantPartition lambda;
  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

class AlgElement {
 public:
  using Terms = std::map<Symbol, HalfLaurent>;

  AlgElement() = default;
  static AlgElement symbol(const Symbol& s, const HalfLaurent& c = HalfLaurent(1));

  const Terms& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  HalfLaurent coeff(const Symbol& s) const;
  void addTerm(const Symbol& s, const HalfLaurent& c);

  AlgElement& operator+=(const AlgElement& o);
  AlgElement& operator-=(const AlgElement& o);
  friend AlgElement operator+(AlgElement a, const AlgElement& b) { return a += b; }
  friend AlgElement operator-(AlgElement a, const AlgElement& b) { return a -= b; }
  AlgElement scaled(const HalfLaurent& c) const;
  friend bool operator==(const AlgElement& a, const AlgElement& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

// Tokens: u_{alpha_i} for i >= 0 in u, K-prefix k in Z^I.
struct Word {
  DimVector k;
  std::vector<int> u;
  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;
};
using WordCombination = std::map<Word, RationalFunction>;

std::string wordString(const Word& w);

class IHallAlgebra {
 public:
  explicit IHallAlgebra(const IQuiver& Q, std::string cacheDirectory = TableCache::defaultDirectory());

  const IQuiver& quiver() const { return Q_; }
  HallEngine& engine() { return engine_; }

  AlgElement one() const;
  AlgElement u(const KostantPartition& lambda) const;
  AlgElement generator(int i) const;
  AlgElement k(const DimVector& alpha) const;

  // alpha + rho(alpha) + dim M(lambda)
  DimVector grade(const Symbol& s) const;
  // Throws DimensionMismatch on a nonhomogeneous element; zero has no grade.
  DimVector gradeOf(const AlgElement& a) const;
  // All symbols with alpha in N^I of the given grade.
  std::vector<Symbol> symbolsOfGrade(const DimVector& nu) const;

  AlgElement multiply(const AlgElement& a, const AlgElement& b);
  // Doubled v-exponents of the rescaling and of the diamond twist.
  int rescaleExp2(const KostantPartition& lambda) const;
  int diamondExp2(const DimVector& alpha, const KostantPartition& lambda) const;
  AlgElement rescaledU(const KostantPartition& lambda) const;
  AlgElement diamond(const DimVector& alpha, const AlgElement& a) const;

  AlgElement expandWord(const Word& w);
  WordCombination expressInWords(const AlgElement& a);
  AlgElement evaluate(const WordCombination& c);
  AlgElement barInvolve(const AlgElement& a);

  nlohmann::json toJson(const AlgElement& a) const;
  AlgElement fromJson(const nlohmann::json& j) const;

 private:
  struct WordBasis {
    std::vector<Symbol> symbols;
    std::vector<Word> words;
    // inverse(w, s): coefficient of words[w] in symbols[s]
    Mat<RationalFunction> inverse;
  };
  const WordBasis& wordBasis(const DimVector& grade);
  const AlgElement& expandU(const std::vector<int>& u);
  const AlgElement& barU(const KostantPartition& lambda);
  AlgElement timesK(const AlgElement& a, const DimVector& alpha);
  int kTwist2(const KostantPartition& lambda, const DimVector& beta);

  IQuiver Q_;
  HallEngine engine_;
  std::map<DimVector, std::unique_ptr<WordBasis>> wordBases_;
  std::map<std::vector<int>, AlgElement> uWords_;
  std::map<KostantPartition, AlgElement> barU_;
};

}  // namespace ihall
