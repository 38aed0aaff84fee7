#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qtwick/coeffs.hpp"
#include "qtwick/pairings.hpp"
#include "qtwick/wickpoly.hpp"

namespace qtwick {

inline constexpr const char* kVersion = "qtwick 1.0.0";

inline constexpr int kMaxMomentN = 400;
inline constexpr int kMaxMomentLength = 8;
inline constexpr std::size_t kMaxMomentSupport = 5'000'000;

/// phi_N(S_N^{e(1)} ... S_N^{e(r)}) in the Jordan-Wigner model, with
/// S_N = (b_{N,1} + ... + b_{N,N}) / sqrt(N), using the first N indices of
/// the table. Throws SizeLimitError past N = 400, |eps| = 8 or when the
/// intermediate support would exceed kMaxMomentSupport.
double momentOfSN(int n, const EpsilonString& eps, const CoefficientTable& table);

inline constexpr int kMaxLambdaBlocks = 3;
inline constexpr double kMaxLambdaTuples = 1e7;

/// X_N: N^{-n} times the sum, over tuples in the pairing's ~-class with
/// values in [N], of the crossing/nesting coefficient product. Throws
/// SizeLimitError unless n <= 3 and N^n <= 1e7.
double lambdaEstimate(const PairPartition& pairing, const EpsilonString& eps,
                      int n, const CoefficientTable& table);

enum class ExperimentMode { Moment, Lambda };

std::string toString(ExperimentMode mode);
ExperimentMode parseMode(const std::string& text);

struct ExperimentConfig {
  double q = 0.0;
  double t = 1.0;
  EpsilonString eps;
  std::vector<int> ns;
  std::uint64_t seed = 0;
  ExperimentMode mode = ExperimentMode::Moment;
  std::optional<PairPartition> pairing;  // lambda mode only

  /// Every problem found, empty when the config is valid.
  std::vector<std::string> validationErrors() const;
};

struct ExperimentRow {
  int n = 0;
  double value = 0.0;
  std::optional<double> target;  // absent when there is no closed-form limit
  std::optional<double> absErr;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ExperimentRow> rows;
  std::string version = kVersion;

  /// Header N,eps,q,t,seed,mode,value,target,abs_err; missing targets and
  /// errors are written as "none".
  void writeCsv(std::ostream& out) const;
  nlohmann::json toJson() const;
};

using BaseSampler =
    std::function<BaseSequence(int n, double q, double t, std::uint64_t seed)>;

/// Samples one base for max(Ns) and evaluates every N on its restriction.
/// Rows are computed on up to `jobs` threads; the report does not depend on
/// scheduling. Throws ValidationError listing every invalid field.
ExperimentReport convergenceExperiment(const ExperimentConfig& config,
                                       const BaseSampler& sampler = {},
                                       int jobs = 1);

}  // namespace qtwick
