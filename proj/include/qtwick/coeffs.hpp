#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "qtwick/pairings.hpp"
#include "qtwick/wickpoly.hpp"

namespace qtwick {

/// Base coefficients mu(i,j) = mu_{*,*}(i,j) for 1 <= i < j <= n, stored
/// densely in column order: (1,2), (1,3), (2,3), (1,4), ... so the
/// entries for indices <= m form a prefix for every m <= n.
class BaseSequence {
 public:
  BaseSequence() = default;
  BaseSequence(int n, std::vector<double> values);

  /// Throws ArgumentError on keys with i >= j or i < 1. Pairs absent from
  /// the map are stored as NaN and reported as uncovered on lookup.
  static BaseSequence fromMap(const std::map<std::pair<int, int>, double>& base);

  int size() const { return n_; }
  double operator()(int i, int j) const { return values_[linearIndex(i, j)]; }
  std::span<const double> values() const { return values_; }
  std::map<std::pair<int, int>, double> toMap() const;

  /// The first m indices.
  BaseSequence restricted(int m) const;

  static std::size_t linearIndex(int i, int j) {
    return static_cast<std::size_t>(j - 1) * (j - 2) / 2 + (i - 1);
  }

  /// CSV with header "i,j,mu", one row per pair in column order.
  void writeCsv(std::ostream& out) const;
  static BaseSequence readCsv(std::istream& in);

  bool operator==(const BaseSequence&) const = default;

 private:
  int n_ = 0;
  std::vector<double> values_;
};

/// The full family mu_{e,e'}(i,j), derived lazily from the base:
///   mu_{*,*}(i,j) = mu(i,j), mu_{*,1}(i,j) = t mu(i,j),
///   mu_{1,1}(i,j) = 1/mu_{*,*}(i,j), mu_{1,*}(i,j) = 1/mu_{*,1}(i,j)
/// for i < j, and mu_{e,e'}(i,j) = 1/mu_{e',e}(j,i) for i > j.
/// The commutation relation it encodes is
///   b_i^e b_j^e' = mu_{e',e}(j,i) b_j^e' b_i^e.
class CoefficientTable {
 public:
  CoefficientTable() = default;

  /// Throws ArgumentError on zero or non-finite base values and
  /// ParameterError unless t > 0.
  CoefficientTable(BaseSequence base, double t);

  double t() const { return t_; }
  double sqrtT() const { return sqrtT_; }
  int size() const { return base_.size(); }
  const BaseSequence& base() const { return base_; }

  /// mu(i,j) for i < j.
  double mu(int i, int j) const;

  /// mu_{first,second}(i,j) for i != j. Throws ArgumentError if the pair is
  /// not covered.
  double lookup(Eps first, Eps second, int i, int j) const;

 private:
  BaseSequence base_;
  double t_ = 1.0;
  double sqrtT_ = 1.0;
};

CoefficientTable buildTable(const std::map<std::pair<int, int>, double>& base,
                            double t);

/// SplitMix64-style mixing of a master seed with a task index; the seed
/// for sub-task k of a run is mixSeed(master, k).
std::uint64_t mixSeed(std::uint64_t master, std::uint64_t k);

/// Maps 64 random bits and (q, t) to one coefficient draw.
using CoefficientLaw = double (*)(std::uint64_t bits, double q, double t);

/// mu = +1 with probability (1 + q/t)/2, otherwise -1; E(mu) = q/t and
/// E(mu^2) = 1.
double twoPointLaw(std::uint64_t bits, double q, double t);

/// Independent draws for every pair i < j <= n. The draw for (i,j) uses
/// mixSeed(seed, linearIndex(i,j)) so it does not depend on n. Throws
/// ParameterError unless t > 0 and |q| <= t.
BaseSequence sampleBase(int n, double q, double t, std::uint64_t seed,
                        CoefficientLaw law = twoPointLaw);

struct NormalOrderResult {
  double beta = 1.0;            // from the transposition algorithm
  double closedFormBeta = 1.0;  // from the crossing/nesting product
  PairPartition pairing;
  /// Exponents rearranged as eps(w_1) eps(z_1) ... eps(w_n) eps(z_n).
  EpsilonString pattern;
};

/// The crossing/nesting product
///   prod_{(w_j,w_k,z_j,z_k) in Cross} mu_{e(z_j),e(w_k)}(i(z_j),i(w_k))
///   prod_{(w_j,w_m,z_m,z_j) in Nest}  mu_{e(z_j),e(z_m)}(i(z_j),i(z_m))
///                                      mu_{e(z_j),e(w_m)}(i(z_j),i(w_m)).
double closedFormBeta(const PairPartition& pairing, std::span<const int> tuple,
                      const EpsilonString& eps, const CoefficientTable& table);

/// Commutes each pair partner leftwards until it sits next to its opener,
/// multiplying the coefficient of every transposition. Throws
/// ClassificationError unless every value of the tuple occurs exactly
/// twice, and std::logic_error if the two beta routes disagree.
NormalOrderResult normalOrder(std::span<const int> tuple,
                              const EpsilonString& eps,
                              const CoefficientTable& table);

/// q^cross t^nest when every pair has pattern (1,*), else zero.
QTPolynomial pairLimitMonomial(const PairPartition& pairing,
                               const EpsilonString& eps);

}  // namespace qtwick
