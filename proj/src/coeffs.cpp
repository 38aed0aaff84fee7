#include "qtwick/coeffs.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qtwick/csv.hpp"
#include "qtwick/errors.hpp"

namespace qtwick {

BaseSequence::BaseSequence(int n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
  if (n < 0) throw ArgumentError("base size must be non-negative");
  const std::size_t expected = static_cast<std::size_t>(n) * (n - 1) / 2;
  if (values_.size() != expected) {
    throw ArgumentError("base of size " + std::to_string(n) + " needs " +
                        std::to_string(expected) + " values, got " +
                        std::to_string(values_.size()));
  }
}

BaseSequence BaseSequence::fromMap(
    const std::map<std::pair<int, int>, double>& base) {
  int n = 0;
  for (const auto& [key, value] : base) {
    if (key.first < 1 || key.first >= key.second) {
      throw ArgumentError("base keys must satisfy 1 <= i < j, got (" +
                          std::to_string(key.first) + "," +
                          std::to_string(key.second) + ")");
    }
    n = std::max(n, key.second);
  }
  std::vector<double> values(static_cast<std::size_t>(n) * (n - 1) / 2,
                             std::numeric_limits<double>::quiet_NaN());
  for (const auto& [key, value] : base) {
    values[linearIndex(key.first, key.second)] = value;
  }
  return BaseSequence(n, std::move(values));
}

std::map<std::pair<int, int>, double> BaseSequence::toMap() const {
  std::map<std::pair<int, int>, double> out;
  for (int j = 2; j <= n_; ++j) {
    for (int i = 1; i < j; ++i) {
      const double v = (*this)(i, j);
      if (!std::isnan(v)) out[{i, j}] = v;
    }
  }
  return out;
}

BaseSequence BaseSequence::restricted(int m) const {
  if (m < 0 || m > n_) {
    throw ArgumentError("cannot restrict a base of size " + std::to_string(n_) +
                        " to " + std::to_string(m));
  }
  const std::size_t count = static_cast<std::size_t>(m) * (m - 1) / 2;
  return BaseSequence(m, std::vector<double>(values_.begin(),
                                             values_.begin() + count));
}

void BaseSequence::writeCsv(std::ostream& out) const {
  out << "i,j,mu\n";
  for (int j = 2; j <= n_; ++j) {
    for (int i = 1; i < j; ++i) {
      const double v = (*this)(i, j);
      if (std::isnan(v)) continue;
      out << i << ',' << j << ',' << csv::formatDouble(v) << '\n';
    }
  }
}

BaseSequence BaseSequence::readCsv(std::istream& in) {
  const csv::Table table = csv::read(in);
  if (table.header != std::vector<std::string>{"i", "j", "mu"}) {
    throw ArgumentError("base CSV header must be i,j,mu");
  }
  std::map<std::pair<int, int>, double> base;
  for (const auto& row : table.rows) {
    const int i = static_cast<int>(csv::parseInteger(row[0]));
    const int j = static_cast<int>(csv::parseInteger(row[1]));
    if (!base.emplace(std::make_pair(i, j), csv::parseDouble(row[2])).second) {
      throw ArgumentError("duplicate base entry (" + row[0] + "," + row[1] + ")");
    }
  }
  return fromMap(base);
}

CoefficientTable::CoefficientTable(BaseSequence base, double t)
    : base_(std::move(base)), t_(t), sqrtT_(std::sqrt(t)) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw ParameterError("t must be a positive finite number");
  }
  for (double v : base_.values()) {
    if (std::isnan(v)) continue;
    if (v == 0.0 || !std::isfinite(v)) {
      throw ArgumentError("base coefficients must be non-zero and finite");
    }
  }
}

double CoefficientTable::mu(int i, int j) const {
  if (i < 1 || i >= j || j > base_.size()) {
    throw ArgumentError("pair (" + std::to_string(i) + "," + std::to_string(j) +
                        ") not covered by a table of size " +
                        std::to_string(base_.size()));
  }
  const double v = base_(i, j);
  if (std::isnan(v)) {
    throw ArgumentError("pair (" + std::to_string(i) + "," + std::to_string(j) +
                        ") not covered by the base");
  }
  return v;
}

double CoefficientTable::lookup(Eps first, Eps second, int i, int j) const {
  if (i == j) throw ArgumentError("commutation coefficients need i != j");
  if (i > j) return 1.0 / lookup(second, first, j, i);
  const double base = mu(i, j);
  if (first == Eps::Star) return second == Eps::Star ? base : t_ * base;
  return second == Eps::One ? 1.0 / base : 1.0 / (t_ * base);
}

CoefficientTable buildTable(const std::map<std::pair<int, int>, double>& base,
                            double t) {
  return CoefficientTable(BaseSequence::fromMap(base), t);
}

std::uint64_t mixSeed(std::uint64_t master, std::uint64_t k) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double twoPointLaw(std::uint64_t bits, double q, double t) {
  const double plusProbability = 0.5 * (1.0 + q / t);
  const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;
  return u < plusProbability ? 1.0 : -1.0;
}

BaseSequence sampleBase(int n, double q, double t, std::uint64_t seed,
                        CoefficientLaw law) {
  if (!(t > 0.0) || !std::isfinite(t)) throw ParameterError("t must be > 0");
  if (!(std::abs(q) <= t)) {
    throw ParameterError("sampling needs |q| <= t (P(mu=+1) = (1+q/t)/2)");
  }
  if (n < 0) throw ArgumentError("base size must be non-negative");
  std::vector<double> values(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] = law(mixSeed(seed, k), q, t);
  }
  return BaseSequence(n, std::move(values));
}

double closedFormBeta(const PairPartition& pairing, std::span<const int> tuple,
                      const EpsilonString& eps, const CoefficientTable& table) {
  const auto stats = crossNest(pairing);
  auto mu = [&](int pos, int other) {
    return table.lookup(eps[pos - 1], eps[other - 1], tuple[pos - 1],
                        tuple[other - 1]);
  };
  double beta = 1.0;
  for (const auto& [wj, wk, zj, zk] : stats.crossSet) beta *= mu(zj, wk);
  for (const auto& [wj, wm, zm, zj] : stats.nestSet) {
    beta *= mu(zj, zm) * mu(zj, wm);
  }
  return beta;
}

NormalOrderResult normalOrder(std::span<const int> tuple,
                              const EpsilonString& eps,
                              const CoefficientTable& table) {
  if (static_cast<int>(tuple.size()) != eps.size()) {
    throw ArgumentError("normalOrder: tuple and epsilon string lengths differ");
  }
  const auto pairing = classOf(tuple).asPairPartition();
  if (!pairing) {
    throw ClassificationError("tuple class " + classOf(tuple).toString() +
                              " is not a pair partition");
  }

  // positions still to be processed, in their current order
  std::vector<int> remaining(tuple.size());
  for (std::size_t k = 0; k < remaining.size(); ++k) {
    remaining[k] = static_cast<int>(k) + 1;
  }
  double beta = 1.0;
  std::vector<Eps> pattern;
  pattern.reserve(tuple.size());
  while (!remaining.empty()) {
    const int opener = remaining.front();
    std::size_t partnerAt = 1;
    while (tuple[remaining[partnerAt] - 1] != tuple[opener - 1]) ++partnerAt;
    const int partner = remaining[partnerAt];
    for (std::size_t k = partnerAt - 1; k >= 1; --k) {
      const int passed = remaining[k];
      beta *= table.lookup(eps[partner - 1], eps[passed - 1],
                           tuple[partner - 1], tuple[passed - 1]);
    }
    pattern.push_back(eps[opener - 1]);
    pattern.push_back(eps[partner - 1]);
    remaining.erase(remaining.begin() + partnerAt);
    remaining.erase(remaining.begin());
  }

  NormalOrderResult result;
  result.beta = beta;
  result.closedFormBeta = closedFormBeta(*pairing, tuple, eps, table);
  result.pairing = *pairing;
  result.pattern = EpsilonString(std::move(pattern));
  const double scale = std::max(std::abs(beta), std::abs(result.closedFormBeta));
  if (std::abs(beta - result.closedFormBeta) > 1e-12 * scale) {
    std::ostringstream msg;
    msg << "normal-ordering beta " << beta << " disagrees with closed form "
        << result.closedFormBeta;
    throw std::logic_error(msg.str());
  }
  return result;
}

QTPolynomial pairLimitMonomial(const PairPartition& pairing,
                               const EpsilonString& eps) {
  if (eps.size() != pairing.size()) {
    throw ArgumentError("pairLimitMonomial: epsilon string length " +
                        std::to_string(eps.size()) + " for a pairing of [" +
                        std::to_string(pairing.size()) + "]");
  }
  for (const Pair& p : pairing.pairs()) {
    if (eps[p.open - 1] != Eps::One || eps[p.close - 1] != Eps::Star) return {};
  }
  const auto stats = crossNest(pairing);
  return QTPolynomial::monomial(stats.crossCount(), stats.nestCount());
}

}  // namespace qtwick
