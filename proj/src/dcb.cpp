#include "ihall/dcb.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "ihall/errors.hpp"

namespace ihall {

std::string symbolString(const IQuiver& Q, const Symbol& s) {
  return "(" + dimString(s.alpha) + ", " + Q.partitionToJson(s.lambda).dump() + ")";
}

namespace {

HalfLaurent negativePart(const HalfLaurent& r) {
  HalfLaurent t;
  for (const auto& [n, c] : r.terms())
    if (n < 0) t.addTerm(n, c);
  return t;
}

}  // namespace

int DCBasis::indexOf(const Symbol& s) const {
  auto it = std::find(basis.begin(), basis.end(), s);
  return it == basis.end() ? -1 : static_cast<int>(it - basis.begin());
}

std::vector<DimVector> gradesUpTo(int n, int maxHeight) {
  std::vector<DimVector> out;
  DimVector d(n, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n) {
      out.push_back(d);
      return;
    }
    for (d[i] = 0; d[i] <= left; ++d[i]) rec(i + 1, left - d[i]);
    d[i] = 0;
  };
  rec(0, maxHeight);
  std::stable_sort(out.begin(), out.end(), [](const DimVector& a, const DimVector& b) { return height(a) < height(b); });
  return out;
}

int DCBSolver::standardExp2(const Symbol& s) const {
  return H_.rescaleExp2(s.lambda) + H_.diamondExp2(s.alpha, s.lambda);
}

AlgElement DCBSolver::standard(const Symbol& s) const {
  return AlgElement::symbol(s, HalfLaurent::monomial(1, standardExp2(s)));
}

GradedPiece DCBSolver::buildGradedPiece(const DimVector& nu, TieBreak tie) {
  const IQuiver& Q = H_.quiver();
  std::vector<Symbol> symbols = H_.symbolsOfGrade(nu);
  auto less = [&](const Symbol& a, const Symbol& b) {
    return Q.extendedOrderLess(a.alpha, a.lambda, b.alpha, b.lambda);
  };
  auto key = [](const Symbol& s) {
    return std::make_tuple(std::accumulate(s.alpha.begin(), s.alpha.end(), 0), s.lambda, s.alpha);
  };

  // Kahn's algorithm; among the available minimal elements pick by key.
  std::size_t m = symbols.size();
  std::vector<bool> placed(m, false);
  GradedPiece piece;
  piece.grade = nu;
  for (std::size_t step = 0; step < m; ++step) {
    int pick = -1;
    for (std::size_t c = 0; c < m; ++c) {
      if (placed[c]) continue;
      bool minimal = true;
      for (std::size_t o = 0; o < m && minimal; ++o)
        if (!placed[o] && o != c && less(symbols[o], symbols[c])) minimal = false;
      if (!minimal) continue;
      if (pick < 0) {
        pick = static_cast<int>(c);
        continue;
      }
      bool better = tie == TieBreak::Lexicographic ? key(symbols[c]) < key(symbols[pick]) : key(symbols[pick]) < key(symbols[c]);
      if (better) pick = static_cast<int>(c);
    }
    if (pick < 0) throw OrderViolation("extended order has a cycle in grade " + dimString(nu));
    placed[pick] = true;
    piece.basis.push_back(symbols[pick]);
  }

  auto n = static_cast<Eigen::Index>(m);
  piece.barMatrix = Mat<HalfLaurent>::Constant(n, n, HalfLaurent());
  for (Eigen::Index j = 0; j < n; ++j) {
    AlgElement image = H_.barInvolve(standard(piece.basis[j]));
    for (const auto& [s, c] : image.terms()) {
      auto k = std::find(piece.basis.begin(), piece.basis.end(), s) - piece.basis.begin();
      if (k == n) throw OrderViolation("bar image leaves the grade " + dimString(nu));
      piece.barMatrix(k, j) = c.shifted(-standardExp2(s));
    }
  }
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) {
      const HalfLaurent& e = piece.barMatrix(k, j);
      if (k == j) {
        if (e != HalfLaurent(1))
          throw OrderViolation("diagonal bar coefficient " + e.str() + " at " + symbolString(Q, piece.basis[j]));
      } else if (!e.isZero() && !less(piece.basis[j], piece.basis[k])) {
        throw OrderViolation("bar of " + symbolString(Q, piece.basis[j]) + " meets " + symbolString(Q, piece.basis[k]));
      }
    }
  return piece;
}

DCBasis DCBSolver::solve(const GradedPiece& piece) const {
  const IQuiver& Q = H_.quiver();
  auto n = static_cast<Eigen::Index>(piece.basis.size());
  const Mat<HalfLaurent>& M = piece.barMatrix;
  DCBasis out;
  out.grade = piece.grade;
  out.basis = piece.basis;
  out.transition = Mat<HalfLaurent>::Constant(n, n, HalfLaurent());
  Mat<HalfLaurent>& T = out.transition;
  for (Eigen::Index j = 0; j < n; ++j) {
    T(j, j) = HalfLaurent(1);
    for (Eigen::Index l = j + 1; l < n; ++l) {
      // T_lj - bar(T_lj) = sum_{j <= k < l} bar(T_kj) M_lk
      HalfLaurent r;
      for (Eigen::Index k = j; k < l; ++k)
        if (!T(k, j).isZero() && !M(l, k).isZero()) r += bar(T(k, j)) * M(l, k);
      if (r + bar(r) != HalfLaurent())
        throw NoSolution("bar matrix is inconsistent at " + symbolString(Q, piece.basis[l]));
      HalfLaurent t = negativePart(r);
      for (const auto& [e, c] : t.terms())
        if (e % 2 != 0) throw NonIntegral("half-integer power in the transition at " + symbolString(Q, piece.basis[l]));
      T(l, j) = t;
    }
  }
  out.inverse = Mat<HalfLaurent>::Constant(n, n, HalfLaurent());
  Mat<HalfLaurent>& I = out.inverse;
  for (Eigen::Index j = 0; j < n; ++j) {
    I(j, j) = HalfLaurent(1);
    for (Eigen::Index l = j + 1; l < n; ++l) {
      HalfLaurent acc;
      for (Eigen::Index k = j; k < l; ++k)
        if (!T(l, k).isZero() && !I(k, j).isZero()) acc -= T(l, k) * I(k, j);
      I(l, j) = acc;
    }
  }
  return out;
}

const DCBasis& DCBSolver::basis(const DimVector& nu) {
  auto it = bases_.find(nu);
  if (it != bases_.end()) return *it->second;
  auto b = std::make_unique<DCBasis>(solve(buildGradedPiece(nu)));
  return *bases_.emplace(nu, std::move(b)).first->second;
}

AlgElement DCBSolver::element(const Symbol& s) {
  const DCBasis& b = basis(H_.grade(s));
  int j = b.indexOf(s);
  if (j < 0) throw DimensionMismatch("symbol is not a basis index");
  AlgElement out;
  for (Eigen::Index k = 0; k < b.transition.rows(); ++k)
    if (!b.transition(k, j).isZero()) out += standard(b.basis[k]).scaled(b.transition(k, j));
  return out;
}

std::map<Symbol, HalfLaurent> DCBSolver::inBasis(const AlgElement& a) {
  std::map<Symbol, HalfLaurent> out;
  if (a.isZero()) return out;
  const DCBasis& b = basis(H_.gradeOf(a));
  for (const auto& [s, c] : a.terms()) {
    int k = b.indexOf(s);
    if (k < 0) throw DimensionMismatch("term outside the unlocalized basis");
    HalfLaurent x = c.shifted(-standardExp2(s));
    for (Eigen::Index j = k; j < b.inverse.rows(); ++j) {
      const HalfLaurent& inv = b.inverse(j, k);
      if (inv.isZero()) continue;
      HalfLaurent& slot = out[b.basis[j]];
      slot += inv * x;
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.isZero() ? out.erase(it) : std::next(it);
  return out;
}

nlohmann::json DCBSolver::report(const DCBasis& b) const {
  const IQuiver& Q = H_.quiver();
  nlohmann::json basis = nlohmann::json::array();
  for (const Symbol& s : b.basis) basis.push_back({{"alpha", s.alpha}, {"lambda", Q.partitionToJson(s.lambda)}});
  auto matrix = [](const Mat<HalfLaurent>& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c).str());
      rows.push_back(row);
    }
    return rows;
  };
  return {{"grade", b.grade}, {"basis", basis}, {"transition", matrix(b.transition)}, {"inverseTransition", matrix(b.inverse)}};
}

std::string DCBSolver::csv(const DCBasis& b, bool inverse) const {
  const IQuiver& Q = H_.quiver();
  std::ostringstream os;
  std::vector<std::string> names;
  for (const Symbol& s : b.basis) names.push_back("\"" + symbolString(Q, s) + "\"");
  os << "row";
  for (const auto& n : names) os << "," << n;
  os << "\n";
  const Mat<HalfLaurent>& m = inverse ? b.inverse : b.transition;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    os << names[r];
    for (Eigen::Index c = 0; c < m.cols(); ++c) os << "," << (m(r, c).isZero() ? "0" : m(r, c).str());
    os << "\n";
  }
  return os.str();
}

PositivityReport verifyPositivity(DCBSolver& solver, int maxHeight) {
  IHallAlgebra& H = solver.algebra();
  const IQuiver& Q = H.quiver();
  PositivityReport report;
  std::vector<DimVector> grades = gradesUpTo(Q.size(), maxHeight);
  for (const DimVector& g : grades) {
    const DCBasis& b = solver.basis(g);
    for (Eigen::Index r = 0; r < b.inverse.rows(); ++r)
      for (Eigen::Index c = 0; c < b.inverse.cols(); ++c) {
        const HalfLaurent& e = b.inverse(r, c);
        if (e.isZero()) continue;
        ++report.inverseEntries;
        if (!positivityClass(e).inN_vinv)
          report.violations.push_back({"inverse transition", dimString(g) + " entry " + e.str()});
      }
  }
  for (const DimVector& g1 : grades)
    for (const DimVector& g2 : grades) {
      if (height(g1) + height(g2) > maxHeight) continue;
      std::vector<Symbol> left = solver.basis(g1).basis, right = solver.basis(g2).basis;
      for (const Symbol& a : left)
        for (const Symbol& b : right) {
          AlgElement product = H.multiply(solver.element(a), solver.element(b));
          for (const auto& [s, c] : solver.inBasis(product)) {
            ++report.structureConstants;
            if (!positivityClass(c).inN_v_half)
              report.violations.push_back({"structure constant", symbolString(Q, a) + " * " + symbolString(Q, b) + " at " +
                                                                     symbolString(Q, s) + ": " + c.str()});
          }
        }
    }
  return report;
}

OrientationReport orientationCompare(DCBSolver& solver, DCBSolver& other, int maxHeight) {
  IHallAlgebra& H = solver.algebra();
  IHallAlgebra& H2 = other.algebra();
  const IQuiver& Q = H.quiver();
  OrientationReport report;
  for (const DimVector& g : gradesUpTo(Q.size(), maxHeight)) {
    const DCBasis& mine = solver.basis(g);
    std::vector<Symbol> theirs = other.basis(g).basis;
    std::set<Symbol> hit;
    if (theirs.size() != mine.basis.size())
      report.mismatches.push_back({"size", dimString(g)});
    for (const Symbol& s : theirs) {
      ++report.compared;
      AlgElement image = H.evaluate(H2.expressInWords(other.element(s)));
      auto coeffs = solver.inBasis(image);
      if (coeffs.size() != 1 || coeffs.begin()->second != HalfLaurent(1) || !hit.insert(coeffs.begin()->first).second) {
        std::string detail;
        for (const auto& [t, c] : coeffs) detail += " " + symbolString(Q, t) + ":" + c.str();
        report.mismatches.push_back({"element " + symbolString(H2.quiver(), s), dimString(g) + detail});
      }
    }
  }
  return report;
}

}  // namespace ihall
