#include "qtwick/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtwick/clt.hpp"
#include "qtwick/coeffs.hpp"
#include "qtwick/csv.hpp"
#include "qtwick/errors.hpp"
#include "qtwick/fock.hpp"
#include "qtwick/jw.hpp"
#include "qtwick/pairings.hpp"
#include "qtwick/wickpoly.hpp"

namespace qtwick::cli {

namespace {

using csv::formatDouble;

constexpr std::uint64_t kDefaultSeed = 42;

struct Common {
  std::string format;
  std::string out;
  std::string check;
};

void addCommon(CLI::App* sub, Common& common, const std::string& defaultFormat) {
  common.format = defaultFormat;
  sub->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "text"}));
  sub->add_option("--out", common.out, "Write output to this file instead of stdout");
  sub->add_option("--check", common.check,
                  "Recompute and compare against an existing output file");
}

void addSeed(CLI::App* sub, std::uint64_t& seed) {
  sub->add_option("--seed", seed, "Random seed (default 42)")->envname("QTWICK_SEED");
}

std::string csvOf(const std::vector<std::string>& header,
                  const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  csv::writeRow(out, header);
  for (const auto& row : rows) csv::writeRow(out, row);
  return out.str();
}

std::string joinInts(const std::vector<int>& values) {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(values[k]);
  }
  return out;
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ArgumentError("cannot read \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

CoefficientTable loadOrSample(const std::string& basePath, int n, double q, double t,
                              std::uint64_t seed) {
  if (!basePath.empty()) {
    std::ifstream in(basePath);
    if (!in) throw ArgumentError("cannot read \"" + basePath + "\"");
    return CoefficientTable(BaseSequence::readCsv(in), t);
  }
  return CoefficientTable(sampleBase(n, q, t, seed), t);
}

// ---- pairings --------------------------------------------------------------

struct PairingsArgs {
  Common common;
  int n = 0;
  std::vector<int> tuple;
};

std::string runPairings(const PairingsArgs& a) {
  const std::string& fmt = a.common.format;
  if (!a.tuple.empty()) {
    const auto cls = classOf(a.tuple);
    const auto pairing = cls.asPairPartition();
    const std::string pairText = pairing ? pairing->toString() : "none";
    if (fmt == "csv") return csvOf({"tuple", "class", "pairing"}, {{joinInts(a.tuple), cls.toString(), pairText}});
    if (fmt == "json") {
      return nlohmann::json{{"tuple", a.tuple}, {"class", cls.toString()}, {"pairing", pairText}}.dump(2) + "\n";
    }
    return cls.toString() + (pairing ? " pairing=" + pairText : "") + "\n";
  }
  if (a.n == 0) throw ArgumentError("pairings needs --n or --tuple");
  std::vector<std::vector<std::string>> rows;
  nlohmann::json list = nlohmann::json::array();
  std::string text;
  int index = 0;
  forEachPairPartition(a.n, [&](const PairPartition& p) {
    const auto stats = crossNest(p);
    ++index;
    if (fmt == "csv") {
      rows.push_back({std::to_string(index), p.toString(), std::to_string(stats.crossCount()),
                      std::to_string(stats.nestCount())});
    } else if (fmt == "json") {
      list.push_back({{"pairing", p.toString()}, {"cross", stats.crossCount()}, {"nest", stats.nestCount()}});
    } else {
      text += p.toString() + " cross=" + std::to_string(stats.crossCount()) +
              ",nest=" + std::to_string(stats.nestCount()) + "\n";
    }
  });
  if (fmt == "csv") return csvOf({"index", "pairing", "cross", "nest"}, rows);
  if (fmt == "json") return list.dump(2) + "\n";
  return text;
}

// ---- wick -----------------------------------------------------------------

struct WickArgs {
  Common common;
  std::string eps;
  int field = 0;
  std::vector<int> labels;
  std::string cov;
  std::optional<double> q;
  std::optional<double> t;
};

std::string runWick(const WickArgs& a) {
  QTPolynomial poly;
  if (a.field > 0) {
    if (!a.eps.empty() || !a.labels.empty()) throw ArgumentError("--field excludes --eps and --labels");
    poly = wickField(a.field);
  } else {
    if (a.eps.empty()) throw ArgumentError("wick needs --eps or --field");
    const auto eps = EpsilonString::parse(a.eps);
    const auto cov = a.cov.empty() ? CovarianceSpec() : CovarianceSpec::parse(a.cov);
    poly = a.labels.empty() ? wickMixed(eps, cov) : wickJoint(a.labels, eps, cov);
  }
  if (a.q.has_value() != a.t.has_value()) throw ArgumentError("--q and --t go together");
  std::optional<double> value;
  if (a.q) value = poly.evaluate(*a.q, *a.t);

  const std::string& fmt = a.common.format;
  if (fmt == "csv") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [exps, c] : poly.terms()) {
      rows.push_back({std::to_string(exps.first), std::to_string(exps.second), c.str()});
    }
    return csvOf({"deg_q", "deg_t", "coeff"}, rows);
  }
  if (fmt == "json") {
    nlohmann::json j = {{"polynomial", poly.toString()}};
    if (value) j["value"] = *value;
    return j.dump(2) + "\n";
  }
  std::string text = poly.toString() + "\n";
  if (value) text += "value=" + formatDouble(*value) + "\n";
  return text;
}

// ---- fock -----------------------------------------------------------------

struct FockArgs {
  Common common;
  FockParams params;
  std::string ops;
  std::vector<int> residual;
  int gram = -1;
};

std::string runFock(FockArgs a) {
  a.params.validate();
  const FockParams& p = a.params;
  const int modes = (!a.ops.empty()) + (!a.residual.empty()) + (a.gram >= 0);
  if (modes != 1) throw ArgumentError("fock needs exactly one of --ops, --residual, --gram");
  const std::vector<std::string> paramFields = {std::to_string(p.d), std::to_string(p.m),
                                                formatDouble(p.q), formatDouble(p.t)};
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  if (!a.ops.empty()) {
    const auto product = FockOp::parseProduct(a.ops);
    const double moment = vacuumMoment(product, p);
    header = {"ops", "d", "m", "q", "t", "moment"};
    std::vector<std::string> row = {a.ops};
    row.insert(row.end(), paramFields.begin(), paramFields.end());
    row.push_back(formatDouble(moment));
    rows.push_back(row);
  } else if (!a.residual.empty()) {
    if (a.residual.size() != 2) throw ArgumentError("--residual takes F,G");
    const double r = commutatorResidual(a.residual[0], a.residual[1], p);
    header = {"f", "g", "d", "m", "q", "t", "residual"};
    std::vector<std::string> row = {std::to_string(a.residual[0]), std::to_string(a.residual[1])};
    row.insert(row.end(), paramFields.begin(), paramFields.end());
    row.push_back(formatDouble(r));
    rows.push_back(row);
  } else {
    const auto eigen = symmetricEigenvalues(gramMatrix(a.gram, p));
    header = {"index", "eigenvalue"};
    for (Eigen::Index k = 0; k < eigen.size(); ++k) {
      rows.push_back({std::to_string(k), formatDouble(eigen[k])});
    }
  }
  const std::string& fmt = a.common.format;
  if (fmt == "json") {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& row : rows) {
      nlohmann::json obj;
      for (std::size_t k = 0; k < header.size(); ++k) obj[header[k]] = row[k];
      list.push_back(obj);
    }
    return list.dump(2) + "\n";
  }
  if (fmt == "text") {
    std::string text;
    for (const auto& row : rows) {
      for (std::size_t k = 0; k < header.size(); ++k) {
        text += (k ? " " : "") + header[k] + "=" + row[k];
      }
      text += "\n";
    }
    return text;
  }
  return csvOf(header, rows);
}

// ---- coeffs ---------------------------------------------------------------

struct CoeffsArgs {
  Common common;
  int n = 0;
  double q = 0.0;
  double t = 1.0;
  std::uint64_t seed = kDefaultSeed;
  std::string base;
  std::vector<int> tuple;
  std::string eps;
};

std::string runCoeffs(const CoeffsArgs& a) {
  if (a.tuple.empty()) {
    if (!a.eps.empty()) throw ArgumentError("--eps needs --tuple");
    BaseSequence base;
    if (!a.base.empty()) {
      std::ifstream in(a.base);
      if (!in) throw ArgumentError("cannot read \"" + a.base + "\"");
      base = BaseSequence::readCsv(in);
    } else {
      if (a.n < 2) throw ArgumentError("coeffs needs --n >= 2");
      base = sampleBase(a.n, a.q, a.t, a.seed);
    }
    if (a.common.format == "json") {
      nlohmann::json list = nlohmann::json::array();
      for (const auto& [key, mu] : base.toMap()) {
        list.push_back({{"i", key.first}, {"j", key.second}, {"mu", mu}});
      }
      return list.dump(2) + "\n";
    }
    std::ostringstream out;
    base.writeCsv(out);
    return out.str();
  }
  if (a.eps.empty()) throw ArgumentError("--tuple needs --eps");
  const int maxValue = *std::max_element(a.tuple.begin(), a.tuple.end());
  const auto table = loadOrSample(a.base, std::max(a.n, maxValue), a.q, a.t, a.seed);
  const auto eps = EpsilonString::parse(a.eps);
  const auto result = normalOrder(a.tuple, eps, table);
  const std::vector<std::string> header = {"tuple", "eps", "pairing", "pattern", "beta",
                                           "closed_form_beta"};
  const std::vector<std::string> row = {joinInts(a.tuple), eps.toString(),
                                        result.pairing.toString(), result.pattern.toString(),
                                        formatDouble(result.beta),
                                        formatDouble(result.closedFormBeta)};
  if (a.common.format == "json") {
    nlohmann::json obj;
    for (std::size_t k = 0; k < header.size(); ++k) obj[header[k]] = row[k];
    return obj.dump(2) + "\n";
  }
  if (a.common.format == "text") {
    return "pairing=" + row[2] + " pattern=" + row[3] + " beta=" + row[4] +
           " closed_form_beta=" + row[5] + "\n";
  }
  return csvOf(header, {row});
}

// ---- jw -------------------------------------------------------------------

struct JwArgs {
  Common common;
  int n = 0;
  double q = 0.0;
  double t = 1.0;
  std::uint64_t seed = kDefaultSeed;
  std::string base;
  bool commutation = false;
  std::string ops;
  bool state = false;
  int dump = 0;
  bool adjoint = false;
};

std::string runJw(const JwArgs& a) {
  if (a.n < 1) throw ArgumentError("jw needs --n >= 1");
  const int modes = a.commutation + (!a.ops.empty()) + (a.dump > 0);
  if (modes != 1) {
    throw ArgumentError("jw needs exactly one of --check-commutation, --ops, --dump");
  }
  const auto table = loadOrSample(a.base, a.n, a.q, a.t, a.seed);
  const std::string& fmt = a.common.format;
  if (a.dump > 0) return buildJW(a.n, a.dump, a.adjoint, table).toJson().dump(2) + "\n";
  if (a.commutation) {
    const auto report = checkCommutation(a.n, table);
    if (fmt == "json") {
      return nlohmann::json{{"n", a.n},
                            {"checked", report.checked},
                            {"max_deviation", report.maxDeviation},
                            {"passed", report.passed()},
                            {"failures", report.failures}}
                 .dump(2) + "\n";
    }
    return csvOf({"n", "checked", "max_deviation", "passed"},
                 {{std::to_string(a.n), std::to_string(report.checked),
                   formatDouble(report.maxDeviation), report.passed() ? "true" : "false"}});
  }
  const auto product = JWFactor::parseProduct(a.ops);
  if (a.state) {
    SparseState s = SparseState::vacuum(a.n);
    for (auto it = product.rbegin(); it != product.rend(); ++it) {
      s = applyMonomial(buildJW(a.n, it->index, it->adjoint, table), s);
    }
    std::ostringstream out;
    s.writeCsv(out);
    return out.str();
  }
  const double value = vacuumExpectation(product, a.n, table);
  if (fmt == "json") return nlohmann::json{{"ops", a.ops}, {"n", a.n}, {"value", value}}.dump(2) + "\n";
  return csvOf({"ops", "n", "value"}, {{a.ops, std::to_string(a.n), formatDouble(value)}});
}

// ---- clt ------------------------------------------------------------------

struct CltArgs {
  Common common;
  std::string mode = "moment";
  std::string eps;
  double q = 0.0;
  double t = 1.0;
  std::vector<int> ns;
  std::uint64_t seed = kDefaultSeed;
  std::string pairing;
  int jobs = 1;
};

std::string runClt(const CltArgs& a) {
  ExperimentConfig config;
  std::vector<std::string> problems;
  try {
    config.mode = parseMode(a.mode);
  } catch (const Error& e) {
    problems.push_back(e.what());
  }
  try {
    config.eps = EpsilonString::parse(a.eps);
  } catch (const Error& e) {
    problems.push_back(e.what());
  }
  if (!a.pairing.empty()) {
    try {
      config.pairing = PairPartition::parse(a.pairing);
    } catch (const Error& e) {
      problems.push_back(e.what());
    }
  }
  config.q = a.q;
  config.t = a.t;
  config.ns = a.ns;
  config.seed = a.seed;
  for (auto& e : config.validationErrors()) {
    if (std::find(problems.begin(), problems.end(), e) == problems.end()) problems.push_back(e);
  }
  if (!problems.empty()) {
    std::string message = "invalid experiment configuration:";
    for (const auto& e : problems) message += "\n  - " + e;
    throw ValidationError(message);
  }
  const auto report = convergenceExperiment(config, {}, a.jobs);
  if (a.common.format == "json") return report.toJson().dump(2) + "\n";
  std::ostringstream out;
  report.writeCsv(out);
  return out.str();
}

int emit(const Common& common, const std::string& artifact, std::ostream& out,
         std::ostream& err) {
  if (!common.check.empty()) {
    const auto diffs = diffArtifacts(common.format, readFile(common.check), artifact);
    for (const auto& d : diffs) out << d << "\n";
    out << "check " << common.check << ": " << diffs.size() << " diffs\n";
    return diffs.empty() ? kExitOk : kExitInternal;
  }
  if (common.out.empty()) {
    out << artifact;
    return kExitOk;
  }
  std::ofstream file(common.out, std::ios::binary);
  if (!file) {
    err << "error: cannot write \"" << common.out << "\"\n";
    return kExitValidation;
  }
  file << artifact;
  return kExitOk;
}

}  // namespace

std::vector<std::string> mergeConfig(const std::vector<std::string>& args,
                                     const std::string& configText) {
  std::vector<std::string> merged = args;
  std::istringstream in(configText);
  std::string line;
  int lineNumber = 0;
  auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return std::string();
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
  };
  while (std::getline(in, line)) {
    ++lineNumber;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ArgumentError("config line " + std::to_string(lineNumber) + " is not key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string flag = "--" + key;
    const bool explicitFlag = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (!explicitFlag) merged.push_back(flag + "=" + value);
  }
  return merged;
}

std::vector<std::string> diffArtifacts(const std::string& format, const std::string& expected,
                                       const std::string& actual) {
  std::vector<std::string> diffs;
  if (format == "csv") {
    std::istringstream e(expected);
    std::istringstream a(actual);
    const auto left = csv::read(e);
    const auto right = csv::read(a);
    if (left.header != right.header) {
      diffs.push_back("header differs");
      return diffs;
    }
    if (left.rows.size() != right.rows.size()) {
      diffs.push_back("row count " + std::to_string(left.rows.size()) + " vs " +
                      std::to_string(right.rows.size()));
    }
    const std::size_t rows = std::min(left.rows.size(), right.rows.size());
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < left.header.size(); ++c) {
        const auto& x = left.rows[r][c];
        const auto& y = right.rows[r][c];
        if (x == y) continue;
        bool equalNumbers = false;
        try {
          equalNumbers = csv::parseDouble(x) == csv::parseDouble(y);
        } catch (const Error&) {
        }
        if (!equalNumbers) {
          diffs.push_back("row " + std::to_string(r + 1) + " column " + left.header[c] +
                          ": " + x + " vs " + y);
        }
      }
    }
    return diffs;
  }
  if (format == "json") {
    if (nlohmann::json::parse(expected) != nlohmann::json::parse(actual)) {
      diffs.push_back("JSON documents differ");
    }
    return diffs;
  }
  std::istringstream e(expected);
  std::istringstream a(actual);
  std::string x;
  std::string y;
  int lineNumber = 0;
  while (true) {
    const bool hasX = static_cast<bool>(std::getline(e, x));
    const bool hasY = static_cast<bool>(std::getline(a, y));
    if (!hasX && !hasY) break;
    ++lineNumber;
    if (hasX != hasY || x != y) {
      diffs.push_back("line " + std::to_string(lineNumber) + ": " + (hasX ? x : "<eof>") +
                      " vs " + (hasY ? y : "<eof>"));
    }
  }
  return diffs;
}

int run(const std::vector<std::string>& rawArgs, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-parameter (q,t) Wick moments, Fock space and Jordan-Wigner CLT tools",
               "qtwick"};
  app.require_subcommand(1);
  app.allow_extras(false);
  std::string configPath;
  app.add_option("--config", configPath, "Flat key=value file; explicit flags win");

  PairingsArgs pairingsArgs;
  auto* pairings = app.add_subcommand("pairings", "Enumerate pair partitions or classify a tuple");
  addCommon(pairings, pairingsArgs.common, "text");
  pairings->add_option("--n", pairingsArgs.n, "Number of pairs (1..8)");
  pairings->add_option("--tuple", pairingsArgs.tuple, "Comma-separated tuple to classify")
      ->delimiter(',');

  WickArgs wickArgs;
  auto* wick = app.add_subcommand("wick", "Wick-type moment polynomials in (q,t)");
  addCommon(wick, wickArgs.common, "text");
  wick->add_option("--eps", wickArgs.eps, "Exponent string over {1,*}; quote it");
  wick->add_option("--field", wickArgs.field, "Field moment of order 2n");
  wick->add_option("--labels", wickArgs.labels, "Basis labels for a joint moment")->delimiter(',');
  wick->add_option("--cov", wickArgs.cov, "Covariance overrides, e.g. 1*=1,*1=0.5");
  wick->add_option("--q", wickArgs.q, "Evaluate at this q");
  wick->add_option("--t", wickArgs.t, "Evaluate at this t");

  FockArgs fockArgs;
  auto* fock = app.add_subcommand("fock", "Truncated (q,t)-Fock space computations");
  addCommon(fock, fockArgs.common, "csv");
  fock->add_option("--d", fockArgs.params.d, "Basis dimension");
  fock->add_option("--m", fockArgs.params.m, "Truncation degree")->required();
  fock->add_option("--q", fockArgs.params.q, "q parameter");
  fock->add_option("--t", fockArgs.params.t, "t parameter");
  fock->add_option("--ops", fockArgs.ops, "Operator product, e.g. \"a1 a1* s2 tN\"");
  fock->add_option("--residual", fockArgs.residual, "Commutation residual for F,G")
      ->delimiter(',');
  fock->add_option("--gram", fockArgs.gram, "Gram spectrum of degree-n words");

  CoeffsArgs coeffsArgs;
  auto* coeffs = app.add_subcommand("coeffs", "Sample bases and normal-order mixed moments");
  addCommon(coeffs, coeffsArgs.common, "csv");
  coeffs->add_option("--n", coeffsArgs.n, "Number of indices");
  coeffs->add_option("--q", coeffsArgs.q, "q parameter");
  coeffs->add_option("--t", coeffsArgs.t, "t parameter");
  addSeed(coeffs, coeffsArgs.seed);
  coeffs->add_option("--base", coeffsArgs.base, "Read the base from an i,j,mu CSV");
  coeffs->add_option("--tuple", coeffsArgs.tuple, "Index tuple to normal-order")->delimiter(',');
  coeffs->add_option("--eps", coeffsArgs.eps, "Exponent string for --tuple");

  JwArgs jwArgs;
  auto* jw = app.add_subcommand("jw", "Jordan-Wigner matrix model");
  addCommon(jw, jwArgs.common, "csv");
  jw->add_option("--n", jwArgs.n, "Number of slots")->required();
  jw->add_option("--q", jwArgs.q, "q parameter");
  jw->add_option("--t", jwArgs.t, "t parameter");
  addSeed(jw, jwArgs.seed);
  jw->add_option("--base", jwArgs.base, "Read the base from an i,j,mu CSV");
  jw->add_flag("--check-commutation", jwArgs.commutation, "Verify all commutation relations");
  jw->add_option("--ops", jwArgs.ops, "Product such as \"2 1 2* 1*\"");
  jw->add_flag("--state", jwArgs.state, "With --ops: dump the state instead of the moment");
  jw->add_option("--dump", jwArgs.dump, "Dump b_{n,i} as JSON");
  jw->add_flag("--adjoint", jwArgs.adjoint, "With --dump: dump the adjoint");

  CltArgs cltArgs;
  auto* clt = app.add_subcommand("clt", "Seeded convergence experiments");
  addCommon(clt, cltArgs.common, "csv");
  clt->add_option("--mode", cltArgs.mode, "moment or lambda");
  clt->add_option("--eps", cltArgs.eps, "Exponent string over {1,*}")->required();
  clt->add_option("--q", cltArgs.q, "q parameter");
  clt->add_option("--t", cltArgs.t, "t parameter");
  clt->add_option("--ns", cltArgs.ns, "Comma-separated increasing N values")->delimiter(',');
  addSeed(clt, cltArgs.seed);
  clt->add_option("--pairing", cltArgs.pairing, "Pairing for lambda mode, e.g. \"(1,3),(2,4)\"");
  clt->add_option("--jobs", cltArgs.jobs, "Worker threads");

  try {
    std::vector<std::string> args = rawArgs;
    for (std::size_t k = 0; k < rawArgs.size(); ++k) {
      std::string path;
      if (rawArgs[k] == "--config" && k + 1 < rawArgs.size()) path = rawArgs[k + 1];
      if (rawArgs[k].rfind("--config=", 0) == 0) path = rawArgs[k].substr(9);
      if (!path.empty()) args = mergeConfig(rawArgs, readFile(path));
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (pairings->parsed()) return emit(pairingsArgs.common, runPairings(pairingsArgs), out, err);
    if (wick->parsed()) return emit(wickArgs.common, runWick(wickArgs), out, err);
    if (fock->parsed()) return emit(fockArgs.common, runFock(fockArgs), out, err);
    if (coeffs->parsed()) return emit(coeffsArgs.common, runCoeffs(coeffsArgs), out, err);
    if (jw->parsed()) {
      if (jwArgs.dump > 0) jwArgs.common.format = "json";
      if (jwArgs.state) jwArgs.common.format = "csv";
      return emit(jwArgs.common, runJw(jwArgs), out, err);
    }
    if (clt->parsed()) return emit(cltArgs.common, runClt(cltArgs), out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  err << "error: no subcommand\n";
  return kExitValidation;
}

}  // namespace qtwick::cli
