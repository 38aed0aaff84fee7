#include "qtwick/clt.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <cmath>
#include <ostream>
#include <thread>
#include <unordered_map>

#include "qtwick/csv.hpp"
#include "qtwick/errors.hpp"
#include "qtwick/jw.hpp"

namespace qtwick {

namespace {

struct MaskHash {
  std::size_t operator()(const SlotMask& m) const { return m.hash(); }
};

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int j = 1; j <= k; ++j) out = out * (n - k + j) / j;
  return out;
}

double integerPower(double base, int exponent) {
  double out = 1.0;
  for (int k = 0; k < exponent; ++k) out *= base;
  return out;
}

}  // namespace

double momentOfSN(int n, const EpsilonString& eps, const CoefficientTable& table) {
  if (n < 1 || n > kMaxMomentN) {
    throw SizeLimitError("momentOfSN needs 1 <= N <= " + std::to_string(kMaxMomentN));
  }
  if (eps.size() > kMaxMomentLength) {
    throw SizeLimitError("momentOfSN supports words of length <= " +
                         std::to_string(kMaxMomentLength));
  }
  if (table.size() < n) {
    throw ArgumentError("coefficient table of size " + std::to_string(table.size()) +
                        " does not cover N=" + std::to_string(n));
  }

  // Every b raises or lowers exactly one slot, so all surviving masks after
  // k factors share one occupation count. A word whose running count dips
  // below zero or ends non-zero has vanishing vacuum expectation.
  int occupied = 0;
  double largestSupport = 1.0;
  for (int k = eps.size() - 1; k >= 0; --k) {
    occupied += eps[k] == Eps::Star ? 1 : -1;
    if (occupied < 0) return 0.0;
    largestSupport = std::max(largestSupport, binomial(n, occupied));
  }
  if (occupied != 0) return 0.0;
  if (largestSupport > static_cast<double>(kMaxMomentSupport)) {
    throw SizeLimitError("momentOfSN: intermediate support of about " +
                         std::to_string(static_cast<long long>(largestSupport)) +
                         " states exceeds the cap");
  }

  std::vector<MonomialOperator> lowers;
  std::vector<MonomialOperator> raises;
  lowers.reserve(n);
  raises.reserve(n);
  for (int i = 1; i <= n; ++i) {
    lowers.push_back(buildJW(n, i, false, table));
    raises.push_back(buildJW(n, i, true, table));
  }

  SparseState state = SparseState::vacuum(n);
  for (int k = eps.size() - 1; k >= 0; --k) {
    const bool raising = eps[k] == Eps::Star;
    // Each key accumulates in input order, so sums do not depend on the
    // hash table's layout.
    std::unordered_map<SlotMask, double, MaskHash> next;
    auto push = [&](const MonomialOperator& op, const SlotMask& mask, double c) {
      if (auto image = op.apply(mask)) next[image->first] += c * image->second;
    };
    for (const auto& [mask, c] : state.entries()) {
      if (raising) {
        for (int i = 1; i <= n; ++i) {
          if (!mask.test(i)) push(raises[i - 1], mask, c);
        }
      } else {
        mask.forEachSet([&](int i) { push(lowers[i - 1], mask, c); });
      }
    }
    state = SparseState::fromEntries(
        n, std::vector<SparseState::Entry>(next.begin(), next.end()));
    if (state.isZero()) return 0.0;
  }
  return state.coefficient(SlotMask()) / integerPower(n, eps.size() / 2);
}

double lambdaEstimate(const PairPartition& pairing, const EpsilonString& eps, int n,
                      const CoefficientTable& table) {
  const int blocks = pairing.blockCount();
  if (blocks < 1 || blocks > kMaxLambdaBlocks) {
    throw SizeLimitError("lambdaEstimate supports pairings of 1.." +
                         std::to_string(kMaxLambdaBlocks) + " blocks");
  }
  if (eps.size() != pairing.size()) {
    throw ArgumentError("lambdaEstimate: epsilon string length " +
                        std::to_string(eps.size()) + " for a pairing of [" +
                        std::to_string(pairing.size()) + "]");
  }
  if (n < 1 || std::pow(static_cast<double>(n), blocks) > kMaxLambdaTuples) {
    throw SizeLimitError("lambdaEstimate: N^n exceeds 1e7");
  }
  if (table.size() < n) {
    throw ArgumentError("coefficient table of size " + std::to_string(table.size()) +
                        " does not cover N=" + std::to_string(n));
  }

  // One factor mu_{e(a),e(b)}(value of a's block, value of b's block).
  struct Factor {
    Eps first;
    Eps second;
    int blockA;
    int blockB;
  };
  std::vector<Factor> factors;
  auto addFactor = [&](int posA, int posB) {
    factors.push_back({eps[posA - 1], eps[posB - 1], pairing.blockOf(posA),
                       pairing.blockOf(posB)});
  };
  const auto stats = crossNest(pairing);
  for (const auto& [wj, wk, zj, zk] : stats.crossSet) addFactor(zj, wk);
  for (const auto& [wj, wm, zm, zj] : stats.nestSet) {
    addFactor(zj, zm);
    addFactor(zj, wm);
  }

  std::array<int, kMaxLambdaBlocks> values{};
  double total = 0.0;
  auto recurse = [&](auto&& self, int block) -> void {
    if (block == blocks) {
      double product = 1.0;
      for (const Factor& f : factors) {
        product *= table.lookup(f.first, f.second, values[f.blockA], values[f.blockB]);
      }
      total += product;
      return;
    }
    for (int v = 1; v <= n; ++v) {
      if (std::find(values.begin(), values.begin() + block, v) != values.begin() + block) {
        continue;
      }
      values[block] = v;
      self(self, block + 1);
    }
  };
  recurse(recurse, 0);
  return total / integerPower(n, blocks);
}

std::string toString(ExperimentMode mode) {
  return mode == ExperimentMode::Moment ? "moment" : "lambda";
}

ExperimentMode parseMode(const std::string& text) {
  if (text == "moment") return ExperimentMode::Moment;
  if (text == "lambda") return ExperimentMode::Lambda;
  throw ArgumentError("mode must be moment or lambda, got \"" + text + "\"");
}

std::vector<std::string> ExperimentConfig::validationErrors() const {
  std::vector<std::string> errors;
  if (!(t > 0.0) || !std::isfinite(t)) errors.push_back("t must be > 0");
  if (!std::isfinite(q) || !(std::abs(q) <= t)) errors.push_back("|q| must be <= t");
  if (eps.size() == 0) errors.push_back("eps must be non-empty");
  if (ns.empty()) errors.push_back("Ns must be non-empty");
  for (std::size_t k = 0; k < ns.size(); ++k) {
    if (ns[k] < 1) errors.push_back("Ns entries must be positive");
    if (k > 0 && ns[k] <= ns[k - 1]) errors.push_back("Ns must be strictly increasing");
  }
  const int maxN = ns.empty() ? 0 : *std::max_element(ns.begin(), ns.end());
  if (mode == ExperimentMode::Moment) {
    if (pairing) errors.push_back("pairing only applies to lambda mode");
    if (eps.size() > kMaxMomentLength) errors.push_back("moment mode needs |eps| <= 8");
    if (maxN > kMaxMomentN) errors.push_back("moment mode needs N <= 400");
  } else {
    if (!pairing) {
      errors.push_back("lambda mode needs a pairing");
    } else {
      if (pairing->size() != eps.size()) {
        errors.push_back("eps length must equal the pairing size");
      }
      if (pairing->blockCount() > kMaxLambdaBlocks) {
        errors.push_back("lambda mode needs a pairing of at most 3 blocks");
      } else if (std::pow(static_cast<double>(maxN), pairing->blockCount()) >
                 kMaxLambdaTuples) {
        errors.push_back("lambda mode needs N^n <= 1e7");
      }
    }
  }
  return errors;
}

void ExperimentReport::writeCsv(std::ostream& out) const {
  out << "N,eps,q,t,seed,mode,value,target,abs_err\n";
  for (const auto& row : rows) {
    csv::writeRow(out, {std::to_string(row.n), config.eps.toString(),
                        csv::formatDouble(config.q), csv::formatDouble(config.t),
                        std::to_string(config.seed), toString(config.mode),
                        csv::formatDouble(row.value),
                        row.target ? csv::formatDouble(*row.target) : "none",
                        row.absErr ? csv::formatDouble(*row.absErr) : "none"});
  }
}

nlohmann::json ExperimentReport::toJson() const {
  nlohmann::json rowsJson = nlohmann::json::array();
  for (const auto& row : rows) {
    rowsJson.push_back({{"N", row.n},
                        {"eps", config.eps.toString()},
                        {"q", config.q},
                        {"t", config.t},
                        {"seed", config.seed},
                        {"mode", toString(config.mode)},
                        {"value", row.value},
                        {"target", row.target ? nlohmann::json(*row.target) : nullptr},
                        {"abs_err", row.absErr ? nlohmann::json(*row.absErr) : nullptr}});
  }
  nlohmann::json meta = {{"version", version}};
  if (config.pairing) meta["pairing"] = config.pairing->toString();
  return {{"metadata", meta}, {"rows", rowsJson}};
}

ExperimentReport convergenceExperiment(const ExperimentConfig& config,
                                       const BaseSampler& sampler, int jobs) {
  const auto errors = config.validationErrors();
  if (!errors.empty()) {
    std::string message = "invalid experiment configuration:";
    for (const auto& e : errors) message += "\n  - " + e;
    throw ValidationError(message);
  }
  const int maxN = *std::max_element(config.ns.begin(), config.ns.end());
  const BaseSequence base = sampler ? sampler(maxN, config.q, config.t, config.seed)
                                    : sampleBase(maxN, config.q, config.t, config.seed);
  const CoefficientTable table(base, config.t);

  std::optional<double> target;
  if (config.mode == ExperimentMode::Moment) {
    target = wickMixed(config.eps).evaluate(config.q, config.t);
  } else {
    const auto monomial = pairLimitMonomial(*config.pairing, config.eps);
    if (!monomial.isZero()) target = monomial.evaluate(config.q, config.t);
  }

  ExperimentReport report;
  report.config = config;
  report.rows.resize(config.ns.size());
  auto evaluateRow = [&](std::size_t k) {
    ExperimentRow& row = report.rows[k];
    row.n = config.ns[k];
    row.value = config.mode == ExperimentMode::Moment
                    ? momentOfSN(row.n, config.eps, table)
                    : lambdaEstimate(*config.pairing, config.eps, row.n, table);
    row.target = target;
    if (target) row.absErr = std::abs(row.value - *target);
  };

  const int workers = std::clamp(jobs, 1, static_cast<int>(config.ns.size()));
  if (workers == 1) {
    for (std::size_t k = 0; k < config.ns.size(); ++k) evaluateRow(k);
    return report;
  }
  std::atomic<std::size_t> nextRow{0};
  std::exception_ptr failure;
  std::mutex failureLock;
  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (std::size_t k = nextRow++; k < config.ns.size(); k = nextRow++) {
        try {
          evaluateRow(k);
        } catch (...) {
          std::lock_guard lock(failureLock);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  if (failure) std::rethrow_exception(failure);
  return report;
}

}  // namespace qtwick
