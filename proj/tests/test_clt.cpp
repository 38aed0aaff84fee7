#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qtwick/clt.hpp"
#include "qtwick/errors.hpp"
#include "qtwick/jw.hpp"

using namespace qtwick;

namespace {

CoefficientTable table42(int n, double q = 0.5, double t = 1.25) {
  return CoefficientTable(sampleBase(n, q, t, 42), t);
}

// N^{-2} sum over all tuples in [N]^4 of phi_N(b^eps), split by class:
// pair classes through normalOrder, everything else through the JW vacuum.
// With allClasses false, only the all-equal class is added beyond pairs.
double bruteForceMoment(int n, const EpsilonString& eps, const CoefficientTable& table,
                        bool allClasses) {
  double sum = 0.0;
  std::vector<int> tuple(4);
  std::vector<JWFactor> word(4);
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b <= n; ++b)
      for (int c = 1; c <= n; ++c)
        for (int d = 1; d <= n; ++d) {
          tuple = {a, b, c, d};
          const auto cls = classOf(tuple);
          if (cls.asPairPartition()) {
            const auto r = normalOrder(tuple, eps, table);
            double cov = 1.0;
            for (const auto& p : r.pairing.pairs())
              cov *= eps[p.open - 1] == Eps::One && eps[p.close - 1] == Eps::Star ? 1.0 : 0.0;
            sum += r.beta * cov;
          } else if (allClasses || cls.blockCount() == 1) {
            for (int k = 0; k < 4; ++k) word[k] = {tuple[k], eps[k] == Eps::Star};
            sum += vacuumExpectation(word, n, table);
          }
        }
  return sum / (static_cast<double>(n) * n);
}

std::vector<EpsilonString> allEps(int r) {
  std::vector<EpsilonString> out;
  for (int bits = 0; bits < (1 << r); ++bits) {
    std::vector<Eps> s(r);
    for (int k = 0; k < r; ++k) s[k] = (bits >> k) & 1 ? Eps::Star : Eps::One;
    out.emplace_back(s);
  }
  return out;
}

std::string csvOf(const ExperimentReport& report) {
  std::ostringstream os;
  report.writeCsv(os);
  return os.str();
}

}  // namespace

TEST_CASE("moments of S_N: exact cases") {
  const auto table = table42(60);
  for (int n : {1, 2, 7, 60}) {
    CHECK(momentOfSN(n, EpsilonString::parse("1*"), table) == 1.0);
    CHECK(momentOfSN(n, EpsilonString::parse("*1"), table) == 0.0);
    CHECK(momentOfSN(n, EpsilonString::parse("1"), table) == 0.0);
    CHECK(momentOfSN(n, EpsilonString::parse("1*1"), table) == 0.0);
    CHECK(momentOfSN(n, EpsilonString::parse("11*"), table) == 0.0);
  }
  for (const auto& eps : allEps(6)) {
    if (!eps.balanced()) CHECK(momentOfSN(20, eps, table) == 0.0);
  }
}

TEST_CASE("moment engine agrees with the brute-force sum over all tuples") {
  const auto table = table42(30, 0.3, 0.9);
  for (int n : {3, 6, 12}) {
    for (const auto& eps : allEps(4)) {
      CHECK(std::abs(momentOfSN(n, eps, table) - bruteForceMoment(n, eps, table, true)) <= 1e-9);
    }
  }
  for (const auto& eps : allEps(4)) {
    CHECK(std::abs(momentOfSN(30, eps, table) - bruteForceMoment(30, eps, table, false)) <= 1e-9);
  }
}

TEST_CASE("11** moment has a closed form at finite N") {
  // pairs give t(1 - 1/N) from nestings plus the crossing sum t mu(i,j).
  const double t = 1.25;
  const auto table = table42(200);
  for (int n : {10, 50, 200}) {
    double crossing = 0.0;
    for (int j = 2; j <= n; ++j)
      for (int i = 1; i < j; ++i) crossing += table.mu(i, j);
    const double expected = t * (1.0 - 1.0 / n) + 2.0 * t * crossing / (static_cast<double>(n) * n);
    CHECK(momentOfSN(n, EpsilonString::parse("11**"), table) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("fixed-seed moment golden") {
  const double value = momentOfSN(200, EpsilonString::parse("11**"), table42(200));
  CHECK(std::abs(value - 1.75) <= 0.15);
  CHECK(value == doctest::Approx(1.7383750000000004).epsilon(1e-13));
}

TEST_CASE("moment size limits") {
  const auto table = table42(10);
  CHECK_THROWS_AS(momentOfSN(11, EpsilonString::parse("1*"), table), ArgumentError);
  CHECK_THROWS_AS(momentOfSN(5, EpsilonString::parse("1*1*1*1*1*"), table), SizeLimitError);
}

TEST_CASE("lambda estimates") {
  const auto table = table42(2000);
  const auto eps = EpsilonString::parse("11**");
  CHECK(std::abs(lambdaEstimate(PairPartition::parse("(1,3),(2,4)"), eps, 2000, table) - 0.5) <= 0.1);
  CHECK(std::abs(lambdaEstimate(PairPartition::parse("(1,4),(2,3)"), eps, 2000, table) - 1.25) <= 0.1);
  for (const auto& e : {"1*1*", "11**", "*1*1"}) {
    CHECK(lambdaEstimate(PairPartition::parse("(1,2),(3,4)"), EpsilonString::parse(e), 40, table) ==
          doctest::Approx(1.0 - 1.0 / 40).epsilon(1e-15));
  }
}

TEST_CASE("lambda mean over seeds matches q(1 - 1/N)") {
  const int n = 100;
  const double q = 0.5;
  const double t = 1.25;
  const auto pairing = PairPartition::parse("(1,3),(2,4)");
  const auto eps = EpsilonString::parse("11**");
  std::vector<double> xs;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    xs.push_back(lambdaEstimate(pairing, eps, n, CoefficientTable(sampleBase(n, q, t, seed), t)));
  }
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= xs.size();
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= xs.size() - 1;
  const double se = std::sqrt(var / xs.size());
  CHECK(std::abs(mean - q * (1.0 - 1.0 / n)) <= 4 * se);
}

TEST_CASE("convergence experiment") {
  ExperimentConfig config;
  config.q = 0.5;
  config.t = 1.25;
  config.eps = EpsilonString::parse("11**");
  config.ns = {25, 50, 100, 200};
  config.seed = 42;
  const auto report = convergenceExperiment(config);
  REQUIRE(report.rows.size() == 4);
  int decreasing = 0;
  for (std::size_t k = 0; k < report.rows.size(); ++k) {
    CHECK(report.rows[k].target == 1.75);
    if (k > 0) decreasing += *report.rows[k].absErr <= *report.rows[k - 1].absErr;
  }
  CHECK(decreasing == 3);

  const std::string csv = csvOf(report);
  CHECK(csv.rfind("N,eps,q,t,seed,mode,value,target,abs_err\n", 0) == 0);
  CHECK(csv.find("200,11**,0.5,1.25,42,moment,1.7383750000000004,1.75,") != std::string::npos);
  CHECK(csvOf(convergenceExperiment(config)) == csv);
  CHECK(csvOf(convergenceExperiment(config, {}, 3)) == csv);

  auto prefix = config;
  prefix.ns = {25, 50};
  const auto shortReport = convergenceExperiment(prefix);
  for (std::size_t k = 0; k < 2; ++k) CHECK(shortReport.rows[k].value == report.rows[k].value);

  const auto json = report.toJson();
  CHECK(json["rows"].size() == 4);
  CHECK(json["rows"][3]["seed"] == 42);
  CHECK(json["rows"][3]["N"] == 200);
  CHECK(json["metadata"]["version"] == kVersion);
}

TEST_CASE("lambda experiment without a closed form") {
  ExperimentConfig config;
  config.q = 0.5;
  config.t = 1.25;
  config.eps = EpsilonString::parse("1**1");
  config.ns = {30};
  config.seed = 42;
  config.mode = ExperimentMode::Lambda;
  config.pairing = PairPartition::parse("(1,3),(2,4)");
  const auto report = convergenceExperiment(config);
  REQUIRE(report.rows.size() == 1);
  CHECK_FALSE(report.rows[0].target.has_value());
  CHECK(csvOf(report).find(",none,none\n") != std::string::npos);
}

TEST_CASE("config validation lists every problem") {
  ExperimentConfig config;
  config.q = 2.0;
  config.t = 1.0;
  config.eps = EpsilonString::parse("1*");
  config.mode = ExperimentMode::Lambda;
  const auto errors = config.validationErrors();
  CHECK(errors.size() >= 3);  // |q| > t, empty Ns, missing pairing
  CHECK_THROWS_AS(convergenceExperiment(config), ValidationError);

  config.q = 0.5;
  config.mode = ExperimentMode::Moment;
  config.ns = {50, 25};
  CHECK(config.validationErrors().size() == 1);
  const bool lambda = parseMode("lambda") == ExperimentMode::Lambda;
  CHECK(lambda);
  CHECK_THROWS(parseMode("variance"));
}
