#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "ihall/ihallalg.hpp"

namespace ihall {

enum class TieBreak { Lexicographic, Reverse };

// Basis K_alpha <> U_lambda of one grade, listed in a linear extension of the
// extended order. barMatrix(k, j) is the coefficient of basis[k] in bar(basis[j]).
struct GradedPiece {
  DimVector grade;
  std::vector<Symbol> basis;
  Mat<HalfLaurent> barMatrix;
};

// L_j = sum_k transition(k, j) basis[k]; inverse(j, k) is the coefficient of
// L_j in basis[k].
struct DCBasis {
  DimVector grade;
  std::vector<Symbol> basis;
  Mat<HalfLaurent> transition;
  Mat<HalfLaurent> inverse;

  int indexOf(const Symbol& s) const;
};

// "(alpha, lambda)" for diagnostics.
std::string symbolString(const IQuiver& Q, const Symbol& s);

// All grades of height 0..maxHeight.
std::vector<DimVector> gradesUpTo(int n, int maxHeight);

class DCBSolver {
 public:
  explicit DCBSolver(IHallAlgebra& H) : H_(H) {}

  IHallAlgebra& algebra() { return H_; }

  // Throws OrderViolation unless the bar matrix is unitriangular for the extended order.
  GradedPiece buildGradedPiece(const DimVector& nu, TieBreak tie = TieBreak::Lexicographic);
  // Throws NoSolution or NonIntegral.
  DCBasis solve(const GradedPiece& piece) const;
  const DCBasis& basis(const DimVector& nu);

  // K_alpha <> U_lambda
  AlgElement standard(const Symbol& s) const;
  int standardExp2(const Symbol& s) const;
  AlgElement element(const Symbol& s);
  // Coefficients of a homogeneous element in the dual canonical basis.
  std::map<Symbol, HalfLaurent> inBasis(const AlgElement& a);

  nlohmann::json report(const DCBasis& b) const;
  std::string csv(const DCBasis& b, bool inverse) const;

 private:
  IHallAlgebra& H_;
  std::map<DimVector, std::unique_ptr<DCBasis>> bases_;
};

struct Violation {
  std::string what;
  std::string detail;
};

struct PositivityReport {
  long inverseEntries = 0;
  long structureConstants = 0;
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};
// Grades of height <= maxHeight for the inverse transition; pairs of combined
// height <= maxHeight for structure constants.
PositivityReport verifyPositivity(DCBSolver& solver, int maxHeight);

struct OrientationReport {
  long compared = 0;
  std::vector<Violation> mismatches;
  bool ok() const { return mismatches.empty(); }
};
// Maps each basis element of `other` into `solver`'s algebra through generator words.
OrientationReport orientationCompare(DCBSolver& solver, DCBSolver& other, int maxHeight);

}  // namespace ihall
