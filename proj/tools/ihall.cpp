#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "ihall/dcb.hpp"
#include "ihall/errors.hpp"
#include "ihall/hallgen.hpp"
#include "ihall/nks.hpp"
#include "ihall/rank1.hpp"
#include "ihall/verify.hpp"

#ifndef IHALL_VERSION
#define IHALL_VERSION "unknown"
#endif

using namespace ihall;
using nlohmann::json;

namespace {

struct Options {
  std::string quiver = "A1; inv:";
  std::string cacheDir = TableCache::defaultDirectory();
  std::string format = "json";
  std::string output;
  int maxHeight = 3;
  int trials = 200;
  std::uint64_t seed = 1;
  std::string mu = "{}", nu = "{}";
  std::vector<int> reverse;
  bool inverse = false;
  int k = 0, n = 0, a = 0, b = 0;
  std::vector<int> v, w, v2, w2, alpha;
  std::string lambda = "{}";
};

std::vector<int> parseIntList(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stoi(tok));
  return out;
}

json envelope(const IQuiver& Q, const std::string& command) {
  return {{"tool", "ihall"},
          {"version", IHALL_VERSION},
          {"command", command},
          {"quiver", Q.normalForm()},
          {"cache", {{"schema", TableCache::kSchema}, {"key", Q.hashHex()}}}};
}

class Emitter {
 public:
  explicit Emitter(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open " + path);
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string csvMatrix(const rank1::BKPolynomial& p) {
  std::ostringstream os;
  os << "B_exp,K_exp,coeff\n";
  for (const auto& [key, c] : p.terms()) os << key.first << "," << key.second << "," << c.str() << "\n";
  return os.str();
}

int runVerify(const std::string& suite, const Options& o, const IQuiver& Q, json& report) {
  verify::SuiteResult r;
  if (suite == "rank1") {
    r = verify::rank1Suite();
  } else {
    IHallAlgebra H(Q, o.cacheDir);
    DCBSolver S(H);
    if (suite == "bar") r = verify::barSuite(H, o.maxHeight, 30, o.seed);
    else if (suite == "assoc") r = verify::assocSuite(H, o.trials, o.seed);
    else if (suite == "positivity") r = verify::positivitySuite(S, o.maxHeight);
    else if (suite == "integrality") r = verify::integralitySuite(S, o.maxHeight);
    else if (suite == "nks") r = verify::nksSuite(S, o.maxHeight, o.maxHeight);
    else if (suite == "orientation") {
      std::vector<int> arrows;
      for (int h : o.reverse) arrows.push_back(h - 1);
      if (arrows.empty())
        for (int h = 0; h < static_cast<int>(Q.arrows().size()); ++h) arrows.push_back(h);
      IHallAlgebra H2(Q.reversed(arrows), o.cacheDir);
      DCBSolver S2(H2);
      r = verify::orientationSuite(S, S2, o.maxHeight);
    } else {
      throw CLI::ValidationError("verify", "unknown suite " + suite);
    }
  }
  report["result"] = r.toJson();
  return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual canonical bases of i-Hall algebras of Dynkin type"};
  app.fallthrough();
  app.set_version_flag("--version", IHALL_VERSION);
  app.require_subcommand(1);
  Options o;
  app.add_option("-q,--quiver", o.quiver, "quiver, e.g. \"A3; arrows: 1>2, 3>2; inv: 1:3\"");
  app.add_option("--cache-dir", o.cacheDir, "structure table cache (default $IHALL_CACHE_DIR, empty = memory)");
  app.add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("-o,--output", o.output, "write the report to a file instead of stdout");

  auto* roots = app.add_subcommand("roots", "positive roots with their indices");
  auto* euler = app.add_subcommand("euler", "Euler form and its symmetrization");
  auto* table = app.add_subcommand("hall-table", "generic structure constants of u_mu * u_nu");
  table->add_option("--mu", o.mu, "partition as JSON {\"root index\": multiplicity}")->required();
  table->add_option("--nu", o.nu, "partition as JSON")->required();
  auto* dcb = app.add_subcommand("dcb", "dual canonical basis transition tables");
  dcb->add_option("--max-height", o.maxHeight)->required();
  dcb->add_flag("--inverse", o.inverse, "CSV of the inverse transition");

  auto* ver = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  ver->add_option("suite", suite, "bar|assoc|positivity|orientation|rank1|nks|integrality")
      ->required()
      ->check(CLI::IsMember({"bar", "assoc", "positivity", "orientation", "rank1", "nks", "integrality"}));
  ver->add_option("--max-height", o.maxHeight);
  ver->add_option("--trials", o.trials);
  ver->add_option("--seed", o.seed);
  std::string reverse;
  ver->add_option("--reverse", reverse, "1-based arrow indices to reverse, comma separated (default all)");

  auto* r1 = app.add_subcommand("rank1", "closed forms of the rank-one model");
  r1->require_subcommand(1);
  auto* r1L = r1->add_subcommand("L", "L(k, n) in the B, K monomials");
  r1L->add_option("--k", o.k)->required();
  r1L->add_option("--n", o.n)->required();
  auto* r1table = r1->add_subcommand("table", "L-to-BK transition for all L(k, n) with fixed n");
  r1table->add_option("--n", o.n)->required();
  auto* r1expand = r1->add_subcommand("expand", "B^a K^b in the L basis");
  r1expand->add_option("--a", o.a)->required();
  r1expand->add_option("--b", o.b)->required();

  auto* nk = app.add_subcommand("nks", "orbit quiver and dominant pairs");
  nk->require_subcommand(1);
  std::string wText, vText, w2Text, v2Text, alphaText;
  auto* nkQuiver = nk->add_subcommand("quiver", "dump the orbit quiver");
  auto* nkDominant = nk->add_subcommand("dominant", "l-dominant pairs with fixed w");
  nkDominant->add_option("--w", wText, "comma separated")->required();
  auto* nkDict = nk->add_subcommand("dict", "pair <-> (alpha, lambda)");
  nkDict->add_option("--v", vText);
  nkDict->add_option("--w", wText);
  nkDict->add_option("--alpha", alphaText);
  nkDict->add_option("--lambda", o.lambda, "partition as JSON");
  auto* nkDform = nk->add_subcommand("dform", "d-form and leading exponent of two pairs");
  nkDform->add_option("--v1", vText)->required();
  nkDform->add_option("--w1", wText)->required();
  nkDform->add_option("--v2", v2Text)->required();
  nkDform->add_option("--w2", w2Text)->required();

  CLI11_PARSE(app, argc, argv);

  int status = 0;
  json report;
  try {
    IQuiver Q = IQuiver::parse(o.quiver);
    Emitter emit(o.output);
    std::ostream& out = emit.out();
    bool csv = o.format == "csv";
    if (*roots) {
      report = envelope(Q, "roots");
      json rs = json::array();
      for (int r = 0; r < Q.numRoots(); ++r) rs.push_back({{"index", r}, {"dim", Q.positiveRoots()[r]}});
      report["result"] = rs;
      if (csv) {
        out << "index,dim\n";
        for (int r = 0; r < Q.numRoots(); ++r) out << r << ",\"" << dimString(Q.positiveRoots()[r]) << "\"\n";
        return 0;
      }
    } else if (*euler) {
      report = envelope(Q, "euler");
      json e = json::array(), s = json::array();
      for (int i = 0; i < Q.size(); ++i) {
        json er = json::array(), sr = json::array();
        for (int j = 0; j < Q.size(); ++j) {
          er.push_back(Q.euler()(i, j));
          sr.push_back(Q.sym()(i, j));
        }
        e.push_back(er);
        s.push_back(sr);
      }
      report["result"] = {{"euler", e}, {"symmetric", s}};
    } else if (*table) {
      report = envelope(Q, "hall-table");
      HallEngine E(Q, o.cacheDir);
      const StructureTable& t = E.genericProduct(Q.partitionFromJson(json::parse(o.mu)),
                                                 Q.partitionFromJson(json::parse(o.nu)));
      report["result"] = E.cache().toJson(t);
    } else if (*dcb) {
      report = envelope(Q, "dcb");
      IHallAlgebra H(Q, o.cacheDir);
      DCBSolver S(H);
      json grades = json::array();
      for (const DimVector& g : gradesUpTo(Q.size(), o.maxHeight)) {
        const DCBasis& b = S.basis(g);
        if (csv)
          out << "# grade " << dimString(g) << "\n" << S.csv(b, o.inverse);
        else
          grades.push_back(S.report(b));
      }
      if (csv) return 0;
      report["result"] = grades;
    } else if (*ver) {
      report = envelope(Q, "verify " + suite);
      o.reverse = parseIntList(reverse);
      status = runVerify(suite, o, Q, report);
    } else if (*r1L) {
      report = envelope(Q, "rank1 L");
      rank1::BKPolynomial p = rank1::Lclosed(o.k, o.n);
      if (csv) {
        out << csvMatrix(p);
        return 0;
      }
      report["result"] = p.toJson();
    } else if (*r1table) {
      report = envelope(Q, "rank1 table");
      json rows = json::array();
      for (int k = 0; 2 * k <= o.n; ++k) rows.push_back({{"k", k}, {"n", o.n}, {"L", rank1::Lclosed(k, o.n).toJson()}});
      if (csv) {
        out << "k,n,B_exp,K_exp,coeff\n";
        for (int k = 0; 2 * k <= o.n; ++k)
          for (const auto& [key, c] : rank1::Lclosed(k, o.n).terms())
            out << k << "," << o.n << "," << key.first << "," << key.second << "," << c.str() << "\n";
        return 0;
      }
      report["result"] = rows;
    } else if (*r1expand) {
      report = envelope(Q, "rank1 expand");
      json terms = json::array();
      for (const auto& t : rank1::expandMonomial(o.a, o.b))
        terms.push_back({{"coeff", t.coeff.str()}, {"v", t.index.first}, {"w", t.index.second}});
      report["result"] = terms;
    } else if (*nkQuiver) {
      report = envelope(Q, "nks quiver");
      report["result"] = nks::OrbitQuiver(Q).toJson();
    } else if (*nkDominant) {
      report = envelope(Q, "nks dominant");
      nks::OrbitQuiver R(Q);
      json ps = json::array();
      for (const nks::DominantPair& p : nks::dominantPairs(R, parseIntList(wText))) {
        auto [alpha, lambda] = nks::lambdaOf(R, p);
        json j = nks::toJson(p);
        j["alpha"] = alpha;
        j["lambda"] = Q.partitionToJson(lambda);
        ps.push_back(j);
      }
      report["result"] = ps;
    } else if (*nkDict) {
      report = envelope(Q, "nks dict");
      nks::OrbitQuiver R(Q);
      if (!vText.empty() || !wText.empty()) {
        nks::DominantPair p{parseIntList(vText), parseIntList(wText)};
        auto [alpha, lambda] = nks::lambdaOf(R, p);
        report["result"] = {{"alpha", alpha}, {"lambda", Q.partitionToJson(lambda)}};
      } else {
        DimVector alpha = alphaText.empty() ? DimVector(Q.size(), 0) : parseIntList(alphaText);
        report["result"] = nks::toJson(nks::pairOf(R, alpha, Q.partitionFromJson(json::parse(o.lambda))));
      }
    } else if (*nkDform) {
      report = envelope(Q, "nks dform");
      nks::OrbitQuiver R(Q);
      nks::DominantPair p1{parseIntList(vText), parseIntList(wText)}, p2{parseIntList(v2Text), parseIntList(w2Text)};
      report["result"] = {{"d12", nks::dForm(R, p1, p2)},
                          {"d21", nks::dForm(R, p2, p1)},
                          {"leading_exponent", nks::leadingExponent(R, p1, p2)}};
    }
    out << report.dump(2) << "\n";
  } catch (const Error& e) {
    json err = {{"tool", "ihall"}, {"version", IHALL_VERSION}, {"error", {{"kind", e.kind()}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    json err = {{"tool", "ihall"}, {"version", IHALL_VERSION}, {"error", {{"kind", "Usage"}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 2;
  }
  return status;
}
