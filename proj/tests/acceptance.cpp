// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "qtwick/cli.hpp"
#include "qtwick/clt.hpp"
#include "qtwick/coeffs.hpp"
#include "qtwick/fock.hpp"
#include "qtwick/jw.hpp"
#include "qtwick/pairings.hpp"
#include "qtwick/wickpoly.hpp"

using namespace qtwick;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool condition, const std::string& what) {
    if (!condition && ok) detail = what;
    ok = ok && condition;
  }
};

int failures = 0;

void criterion(int id, const std::string& name, double budgetSeconds,
               const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome.ok = false;
    outcome.detail = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds > budgetSeconds) outcome.require(false, "over time budget");
  failures += outcome.ok ? 0 : 1;
  std::printf("[%s] AC%d %s (%.2fs)%s%s\n", outcome.ok ? "PASS" : "FAIL", id, name.c_str(),
              seconds, outcome.detail.empty() ? "" : " -- ", outcome.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Naive Wick sum over pairings built directly from permutations of [2n].
std::map<std::pair<int, int>, long long> naiveField(int n) {
  std::vector<int> perm(2 * n);
  for (int k = 0; k < 2 * n; ++k) perm[k] = k + 1;
  std::set<std::vector<std::pair<int, int>>> seen;
  std::map<std::pair<int, int>, long long> poly;
  do {
    std::vector<std::pair<int, int>> m;
    for (int k = 0; k < 2 * n; k += 2)
      m.emplace_back(std::min(perm[k], perm[k + 1]), std::max(perm[k], perm[k + 1]));
    std::sort(m.begin(), m.end());
    if (!seen.insert(m).second) continue;
    int cross = 0;
    int nest = 0;
    for (const auto& [w1, z1] : m)
      for (const auto& [w2, z2] : m) {
        if (w1 >= w2) continue;
        cross += w2 < z1 && z1 < z2;
        nest += z2 < z1;
      }
    ++poly[{cross, nest}];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return poly;
}

CoefficientTable randomTable(int n, double t, std::uint64_t seed, bool continuous) {
  if (!continuous) return CoefficientTable(sampleBase(n, 0.3 * t, t, seed), t);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.25, 1.75);
  std::bernoulli_distribution sign(0.5);
  std::vector<double> values(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (double& v : values) v = (sign(rng) ? -1 : 1) * u(rng);
  return CoefficientTable(BaseSequence(n, values), t);
}

std::vector<JWFactor> word(std::initializer_list<std::pair<int, bool>> list) {
  std::vector<JWFactor> out;
  for (auto [i, a] : list) out.push_back({i, a});
  return out;
}

// All tuples over [maxValue] of length 2*blocks whose class is a pairing.
void forEachPairTuple(int blocks, int maxValue,
                      const std::function<void(const std::vector<int>&)>& f) {
  forEachPairPartition(blocks, [&](const PairPartition& p) {
    std::vector<int> labels(blocks);
    std::function<void(int)> assign = [&](int k) {
      if (k == blocks) {
        std::vector<int> tuple(2 * blocks);
        for (int b = 0; b < blocks; ++b) {
          tuple[p.block(b).open - 1] = labels[b];
          tuple[p.block(b).close - 1] = labels[b];
        }
        f(tuple);
        return;
      }
      for (int v = 1; v <= maxValue; ++v) {
        if (std::find(labels.begin(), labels.begin() + k, v) != labels.begin() + k) continue;
        labels[k] = v;
        assign(k + 1);
      }
    };
    assign(0);
  });
}

std::string runToFile(const std::vector<std::string>& args, const std::string& path) {
  auto full = args;
  full.insert(full.end(), {"--out", path});
  std::ostringstream out;
  std::ostringstream err;
  if (cli::run(full, out, err) != 0) throw std::runtime_error("cli failed: " + err.str());
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const std::vector<std::string> kMomentCommand{"clt", "--mode", "moment", "--eps", "11**",
                                              "--q", "0.5", "--t", "1.25", "--ns",
                                              "25,50,100,200", "--seed", "42"};
const std::vector<std::string> kLambdaCrossCommand{
    "clt", "--mode", "lambda", "--pairing", "(1,3),(2,4)", "--eps", "11**",
    "--q", "0.5", "--t", "1.25", "--ns", "2000", "--seed", "42"};
const std::vector<std::string> kLambdaNestCommand{
    "clt", "--mode", "lambda", "--pairing", "(1,4),(2,3)", "--eps", "11**",
    "--q", "0.5", "--t", "1.25", "--ns", "2000", "--seed", "42"};

}  // namespace

int main() {
  criterion(1, "pairing census (2n-1)!! for n=1..6", 1.0, [] {
    Outcome o;
    const long long expected[] = {1, 3, 15, 105, 945, 10395};
    for (int n = 1; n <= 6; ++n) {
      const auto size = static_cast<long long>(enumeratePairPartitions(n).size());
      o.require(size == expected[n - 1], "n=" + std::to_string(n) + " gave " + std::to_string(size));
    }
    return o;
  });

  criterion(2, "crossing/nesting statistics on P2(6)", 1.0, [] {
    Outcome o;
    int c30 = 0, c03 = 0, c21 = 0;
    for (const auto& p : enumeratePairPartitions(3)) {
      const auto r = crossNest(p);
      c30 += r.crossCount() == 3 && r.nestCount() == 0;
      c03 += r.crossCount() == 0 && r.nestCount() == 3;
      c21 += r.crossCount() == 2 && r.nestCount() == 1;
    }
    o.require(c30 == 1, "(3,0) count " + std::to_string(c30));
    o.require(c03 == 1, "(0,3) count " + std::to_string(c03));
    o.require(c21 >= 1, "no (2,1) pairing");
    return o;
  });

  criterion(3, "Wick field polynomials vs naive enumeration", 1.0, [] {
    Outcome o;
    o.require(wickField(2) == QTPolynomial::parse("1 + q + t"), "wickField(2)");
    const auto w3 = wickField(3);
    o.require(w3.evaluate(1, 1) == 15.0, "wickField(3)(1,1)");
    o.require(w3.evaluate(0, 1) == 5.0, "wickField(3)(0,1)");
    o.require(w3.withQ(0) == QTPolynomial::parse("1 + 2*t + t^2 + t^3"), "q=0 slice");
    for (int n = 1; n <= 4; ++n) {
      std::map<std::pair<int, int>, long long> got;
      const auto poly = wickField(n);
      for (const auto& [e, c] : poly.terms()) got[e] = static_cast<long long>(c);
      o.require(got == naiveField(n), "oracle mismatch at n=" + std::to_string(n));
    }
    return o;
  });

  criterion(4, "q<->t symmetry of wickField(n), n<=6", 5.0, [] {
    Outcome o;
    for (int n = 1; n <= 6; ++n) {
      const auto w = wickField(n);
      o.require(w.swapped() == w, "asymmetric at n=" + std::to_string(n));
    }
    return o;
  });

  criterion(5, "Fock field moments equal Wick polynomials", 30.0, [] {
    Outcome o;
    const std::pair<double, double> grid[] = {{0.5, 1.0}, {0.3, 0.9}, {-0.4, 0.7}};
    double worst = 0.0;
    for (const auto& [q, t] : grid) {
      for (int n = 1; n <= 4; ++n) {
        const std::vector<FockOp> ops(2 * n, FockOp::field(1));
        const double got = vacuumMoment(ops, FockParams{1, 2 * n, q, t});
        worst = std::max(worst, std::abs(got - polyEval(wickField(n), q, t)));
      }
    }
    o.require(worst <= 1e-9, "max error " + fmt(worst));
    o.detail = o.ok ? "max error " + fmt(worst) : o.detail;
    return o;
  });

  criterion(6, "commutation residual <= 1e-12 (d<=3, m<=6)", 10.0, [] {
    Outcome o;
    const std::pair<double, double> grid[] = {
        {0.5, 1.0}, {0.3, 0.9}, {-0.4, 0.7}, {1.0, 1.0}, {-1.0, 1.0}};
    double worst = 0.0;
    for (const auto& [q, t] : grid)
      for (int d = 1; d <= 3; ++d)
        for (int m = 2; m <= 6; ++m)
          for (int f = 1; f <= d; ++f)
            for (int g = 1; g <= d; ++g)
              worst = std::max(worst, commutatorResidual(f, g, FockParams{d, m, q, t}));
    o.require(worst <= 1e-12, "max residual " + fmt(worst));
    o.detail = o.ok ? "max residual " + fmt(worst) : o.detail;
    return o;
  });

  criterion(7, "adjointness and Gram positivity", 30.0, [] {
    Outcome o;
    const std::pair<double, double> grid[] = {
        {0.5, 1.0}, {0.3, 0.9}, {-0.4, 0.7}, {1.0, 1.0}, {-1.0, 1.0}, {1.2, 0.8}};
    double worstAdj = 0.0;
    double minEig = 1e300;
    for (const auto& [q, t] : grid) {
      const FockParams p{2, 4, q, t};
      std::vector<Word> words;
      for (int n = 0; n <= 4; ++n)
        for (auto& w : wordsOfDegree(n, 2)) words.push_back(w);
      for (int i = 1; i <= 2; ++i)
        for (const auto& u : words) {
          if (u.size() > 3) continue;
          const auto cu = applyOperator(FockOp::create(i), FockVector::basis(u), p);
          for (const auto& v : words) {
            const auto av = applyOperator(FockOp::annihilate(i), FockVector::basis(v), p);
            worstAdj = std::max(worstAdj, std::abs(innerProduct(cu, FockVector::basis(v), p) -
                                                   innerProduct(FockVector::basis(u), av, p)));
          }
        }
      if (!p.hilbert()) continue;
      for (int n = 1; n <= 3; ++n)
        minEig = std::min(minEig, symmetricEigenvalues(gramMatrix(n, FockParams{2, n, q, t})).minCoeff());
    }
    o.require(worstAdj <= 1e-10, "adjoint error " + fmt(worstAdj));
    o.require(minEig >= -1e-10, "min eigenvalue " + fmt(minEig));
    o.detail = o.ok ? "adjoint error " + fmt(worstAdj) + ", min eigenvalue " + fmt(minEig) : o.detail;
    return o;
  });

  criterion(8, "JW model commutation and second-moment conditions", 30.0, [] {
    Outcome o;
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const double t = 0.3 + 0.15 * k;
      for (int n = 2; n <= 8; ++n) {
        const auto table = randomTable(n, t, 1000 * k + n, k % 2 == 0);
        const auto report = checkCommutation(n, table);
        worst = std::max(worst, report.maxDeviation);
        o.require(report.passed(), "commutation failed: " +
                                       (report.failures.empty() ? "" : report.failures.front()));
        for (int i = 1; i <= n; ++i) {
          o.require(vacuumExpectation(word({{i, false}}), n, table) == 0.0, "phi(b)");
          o.require(vacuumExpectation(word({{i, true}}), n, table) == 0.0, "phi(b*)");
          o.require(vacuumExpectation(word({{i, false}, {i, false}}), n, table) == 0.0, "phi(bb)");
          o.require(vacuumExpectation(word({{i, true}, {i, true}}), n, table) == 0.0, "phi(b*b*)");
          o.require(vacuumExpectation(word({{i, true}, {i, false}}), n, table) == 0.0, "phi(b*b)");
          o.require(vacuumExpectation(word({{i, false}, {i, true}}), n, table) == 1.0, "phi(bb*)");
          for (int j = i + 1; j <= n && n <= 6; ++j)
            for (int bits = 0; bits < 16; ++bits) {
              const bool e1 = bits & 1, e2 = bits & 2, e3 = bits & 4, e4 = bits & 8;
              const double joint =
                  vacuumExpectation(word({{i, e1}, {i, e2}, {j, e3}, {j, e4}}), n, table);
              const double split = vacuumExpectation(word({{i, e1}, {i, e2}}), n, table) *
                                   vacuumExpectation(word({{j, e3}, {j, e4}}), n, table);
              o.require(joint == split, "natural-order factoring");
            }
        }
      }
    }
    o.require(worst <= 1e-12, "max deviation " + fmt(worst));
    o.detail = o.ok ? "max deviation " + fmt(worst) : o.detail;
    return o;
  });

  criterion(9, "JW vacuum = beta x covariances for pair tuples (r=4,6; indices<=6)", 60.0, [] {
    Outcome o;
    const int n = 6;
    const auto table = randomTable(n, 1.3, 2024, true);
    double worst = 0.0;
    double worstBeta = 0.0;
    long long cases = 0;
    for (int blocks : {2, 3}) {
      const int r = 2 * blocks;
      forEachPairTuple(blocks, n, [&](const std::vector<int>& tuple) {
        for (int bits = 0; bits < (1 << r); ++bits) {
          std::vector<Eps> s(r);
          std::vector<JWFactor> w(r);
          for (int k = 0; k < r; ++k) {
            const bool star = (bits >> k) & 1;
            s[k] = star ? Eps::Star : Eps::One;
            w[k] = {tuple[k], star};
          }
          const EpsilonString eps(s);
          const auto res = normalOrder(tuple, eps, table);
          const double closed = closedFormBeta(res.pairing, tuple, eps, table);
          worstBeta = std::max(worstBeta, std::abs(res.beta - closed));
          double cov = 1.0;
          for (const auto& p : res.pairing.pairs())
            cov *= eps[p.open - 1] == Eps::One && eps[p.close - 1] == Eps::Star ? 1.0 : 0.0;
          worst = std::max(worst, std::abs(vacuumExpectation(w, n, table) - res.beta * cov));
          ++cases;
        }
      });
    }
    o.require(worstBeta <= 1e-10, "beta paths differ by " + fmt(worstBeta));
    o.require(worst <= 1e-10, "max error " + fmt(worst));
    o.detail = o.ok ? std::to_string(cases) + " cases, max error " + fmt(worst) : o.detail;
    return o;
  });

  criterion(10, "CLT moment convergence at seed 42", 120.0, [] {
    Outcome o;
    const double q = 0.5;
    const double t = 1.25;
    ExperimentConfig config;
    config.q = q;
    config.t = t;
    config.eps = EpsilonString::parse("11**");
    config.ns = {25, 50, 100, 200};
    config.seed = 42;
    const auto report = convergenceExperiment(config);
    const double target = polyEval(wickMixed(config.eps), q, t);
    const double last = report.rows.back().value;
    o.require(std::abs(last - target) <= 0.15, "N=200 value " + fmt(last));
    int steps = 0;
    for (std::size_t k = 1; k < report.rows.size(); ++k)
      steps += *report.rows[k].absErr <= *report.rows[k - 1].absErr;
    // Four Ns give three consecutive steps; all of them must be non-increasing.
    o.require(steps == 3, std::to_string(steps) + " of 3 steps non-increasing");
    const CoefficientTable table(sampleBase(200, q, t, 42), t);
    for (int n : config.ns) {
      o.require(momentOfSN(n, EpsilonString::parse("1*"), table) == 1.0, "1* moment not 1");
      for (const char* odd : {"1", "*", "1**", "11*", "1*1*1"})
        o.require(momentOfSN(n, EpsilonString::parse(odd), table) == 0.0,
                  std::string("odd pattern ") + odd + " not 0");
    }
    o.detail = o.ok ? "N=200 value " + fmt(last) + " vs " + fmt(target) : o.detail;
    return o;
  });

  criterion(11, "lambda estimator at N=2000 and 200-seed mean", 120.0, [] {
    Outcome o;
    const double q = 0.5;
    const double t = 1.25;
    const auto eps = EpsilonString::parse("11**");
    const auto cross = PairPartition::parse("(1,3),(2,4)");
    const auto nest = PairPartition::parse("(1,4),(2,3)");
    const CoefficientTable table(sampleBase(2000, q, t, 42), t);
    const double lc = lambdaEstimate(cross, eps, 2000, table);
    const double ln = lambdaEstimate(nest, eps, 2000, table);
    o.require(std::abs(lc - 0.5) <= 0.1, "crossing estimate " + fmt(lc));
    o.require(std::abs(ln - 1.25) <= 0.1, "nesting estimate " + fmt(ln));
    const int n = 100;
    std::vector<double> xs;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
      xs.push_back(lambdaEstimate(cross, eps, n, CoefficientTable(sampleBase(n, q, t, seed), t)));
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= xs.size();
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    const double se = std::sqrt(var / (xs.size() - 1) / xs.size());
    const double expected = q * (1.0 - 1.0 / n);
    o.require(std::abs(mean - expected) <= 4 * se,
              "mean " + fmt(mean) + " vs " + fmt(expected) + " (se " + fmt(se) + ")");
    o.detail = o.ok ? "estimates " + fmt(lc) + ", " + fmt(ln) + "; mean " + fmt(mean) +
                          " (" + fmt(std::abs(mean - expected) / se) + " se)"
                    : o.detail;
    return o;
  });

  criterion(12, "byte-identical reports on rerun", 240.0, [] {
    Outcome o;
    const auto dir = std::filesystem::temp_directory_path() /
                     ("qtwick_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    int k = 0;
    for (const auto* cmd : {&kMomentCommand, &kLambdaCrossCommand, &kLambdaNestCommand}) {
      const auto a = runToFile(*cmd, (dir / ("a" + std::to_string(k) + ".csv")).string());
      const auto b = runToFile(*cmd, (dir / ("b" + std::to_string(k) + ".csv")).string());
      o.require(!a.empty() && a == b, "report " + std::to_string(k) + " differs");
      ++k;
    }
    std::filesystem::remove_all(dir);
    return o;
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
