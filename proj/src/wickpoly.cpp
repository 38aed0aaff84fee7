#include "qtwick/wickpoly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "qtwick/errors.hpp"

namespace qtwick {

EpsilonString::EpsilonString(std::vector<Eps> symbols)
    : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw ArgumentError("epsilon string must be non-empty");
}

EpsilonString EpsilonString::parse(const std::string& text) {
  std::vector<Eps> symbols;
  symbols.reserve(text.size());
  for (char c : text) {
    if (c == '1') {
      symbols.push_back(Eps::One);
    } else if (c == '*') {
      symbols.push_back(Eps::Star);
    } else {
      throw ArgumentError("epsilon string \"" + text +
                          "\" may only contain '1' and '*'");
    }
  }
  return EpsilonString(std::move(symbols));
}

int EpsilonString::count(Eps e) const {
  return static_cast<int>(std::count(symbols_.begin(), symbols_.end(), e));
}

std::string EpsilonString::toString() const {
  std::string out;
  out.reserve(symbols_.size());
  for (Eps e : symbols_) out.push_back(toChar(e));
  return out;
}

CovarianceSpec::CovarianceSpec() { values_[index(Eps::One, Eps::Star)] = 1.0; }

void CovarianceSpec::set(Eps first, Eps second, double value) {
  if (!std::isfinite(value)) throw ArgumentError("covariance must be finite");
  values_[index(first, second)] = value;
}

CovarianceSpec CovarianceSpec::parse(const std::string& text) {
  CovarianceSpec cov;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq != 2) {
      throw ArgumentError("covariance entry \"" + item +
                          "\" must look like 1*=value");
    }
    const auto key = EpsilonString::parse(item.substr(0, 2));
    double value = 0;
    try {
      std::size_t used = 0;
      value = std::stod(item.substr(3), &used);
      if (used != item.size() - 3) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ArgumentError("covariance entry \"" + item + "\" has a bad value");
    }
    cov.set(key[0], key[1], value);
  }
  return cov;
}

QTPolynomial QTPolynomial::constant(const Rational& c) {
  return monomial(0, 0, c);
}

QTPolynomial QTPolynomial::monomial(int degQ, int degT, const Rational& c) {
  QTPolynomial p;
  p.addTerm(degQ, degT, c);
  return p;
}

QTPolynomial& QTPolynomial::addTerm(int degQ, int degT, const Rational& c) {
  if (degQ < 0 || degT < 0) throw ArgumentError("negative exponent");
  if (c == 0) return *this;
  auto [it, inserted] = terms_.try_emplace({degQ, degT}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

QTPolynomial& QTPolynomial::operator+=(const QTPolynomial& other) {
  for (const auto& [exps, c] : other.terms_) addTerm(exps.first, exps.second, c);
  return *this;
}

QTPolynomial operator*(const QTPolynomial& a, const QTPolynomial& b) {
  QTPolynomial out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      out.addTerm(ea.first + eb.first, ea.second + eb.second, ca * cb);
    }
  }
  return out;
}

QTPolynomial operator*(const Rational& c, const QTPolynomial& p) {
  return QTPolynomial::constant(c) * p;
}

Rational QTPolynomial::coefficient(int degQ, int degT) const {
  auto it = terms_.find({degQ, degT});
  return it == terms_.end() ? Rational(0) : it->second;
}

int QTPolynomial::maxTotalDegree() const {
  int best = 0;
  for (const auto& [exps, c] : terms_) best = std::max(best, exps.first + exps.second);
  return best;
}

QTPolynomial QTPolynomial::swapped() const {
  QTPolynomial out;
  for (const auto& [exps, c] : terms_) out.addTerm(exps.second, exps.first, c);
  return out;
}

QTPolynomial QTPolynomial::withQ(const Rational& value) const {
  QTPolynomial out;
  for (const auto& [exps, c] : terms_) {
    Rational factor = 1;
    for (int k = 0; k < exps.first; ++k) factor *= value;
    out.addTerm(0, exps.second, c * factor);
  }
  return out;
}

double QTPolynomial::evaluate(double q, double t) const {
  // Horner in q over coefficient polynomials in t, both descending.
  if (terms_.empty()) return 0.0;
  double result = 0.0;
  int currentQ = terms_.rbegin()->first.first;
  auto it = terms_.rbegin();
  while (it != terms_.rend()) {
    const int degQ = it->first.first;
    while (currentQ > degQ) {
      result *= q;
      --currentQ;
    }
    double inner = 0.0;
    int currentT = it->first.second;
    for (; it != terms_.rend() && it->first.first == degQ; ++it) {
      while (currentT > it->first.second) {
        inner *= t;
        --currentT;
      }
      inner += it->second.convert_to<double>();
    }
    for (; currentT > 0; --currentT) inner *= t;
    result += inner;
  }
  for (; currentQ > 0; --currentQ) result *= q;
  return result;
}

double polyEval(const QTPolynomial& p, double q, double t) {
  return p.evaluate(q, t);
}

namespace {

std::string renderPower(char var, int deg) {
  if (deg == 1) return std::string(1, var);
  return std::string(1, var) + "^" + std::to_string(deg);
}

Rational parseRational(const std::string& text) {
  const auto slash = text.find('/');
  auto parseInt = [&](const std::string& digits) {
    if (digits.empty() ||
        !std::all_of(digits.begin(), digits.end(),
                     [](unsigned char c) { return std::isdigit(c); })) {
      throw ArgumentError("bad coefficient \"" + text + "\"");
    }
    return boost::multiprecision::cpp_int(digits);
  };
  if (slash == std::string::npos) return Rational(parseInt(text));
  const auto den = parseInt(text.substr(slash + 1));
  if (den == 0) throw ArgumentError("zero denominator in \"" + text + "\"");
  return Rational(parseInt(text.substr(0, slash)), den);
}

}  // namespace

std::string QTPolynomial::toString() const {
  if (terms_.empty()) return "0";
  // graded: total degree ascending, then higher powers of q first
  std::vector<std::pair<Exponents, Rational>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
    const int dx = x.first.first + x.first.second;
    const int dy = y.first.first + y.first.second;
    return dx != dy ? dx < dy : x.first.first > y.first.first;
  });
  std::string out;
  bool first = true;
  for (const auto& [exps, c] : ordered) {
    const bool negative = c < 0;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const Rational magnitude = negative ? Rational(-c) : c;
    std::vector<std::string> factors;
    if (exps.first > 0) factors.push_back(renderPower('q', exps.first));
    if (exps.second > 0) factors.push_back(renderPower('t', exps.second));
    if (factors.empty() || magnitude != 1) {
      factors.insert(factors.begin(), magnitude.str());
    }
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (k) out += "*";
      out += factors[k];
    }
  }
  return out;
}

QTPolynomial QTPolynomial::parse(const std::string& text) {
  std::string compact;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  if (compact.empty()) throw ArgumentError("empty polynomial");
  QTPolynomial out;
  std::size_t pos = 0;
  while (pos < compact.size()) {
    bool negative = false;
    if (compact[pos] == '+' || compact[pos] == '-') {
      negative = compact[pos] == '-';
      ++pos;
    } else if (pos != 0) {
      throw ArgumentError("malformed polynomial \"" + text + "\"");
    }
    const auto end = compact.find_first_of("+-", pos);
    const std::string term = compact.substr(
        pos, end == std::string::npos ? std::string::npos : end - pos);
    if (term.empty()) throw ArgumentError("malformed polynomial \"" + text + "\"");
    Rational coeff = 1;
    int degQ = 0;
    int degT = 0;
    std::istringstream factors(term);
    std::string factor;
    while (std::getline(factors, factor, '*')) {
      if (factor.empty()) throw ArgumentError("malformed term \"" + term + "\"");
      if (factor[0] == 'q' || factor[0] == 't') {
        int deg = 1;
        if (factor.size() > 1) {
          if (factor[1] != '^' || factor.size() < 3) {
            throw ArgumentError("malformed power \"" + factor + "\"");
          }
          const std::string digits = factor.substr(2);
          if (!std::all_of(digits.begin(), digits.end(), [](unsigned char c) {
                return std::isdigit(c);
              })) {
            throw ArgumentError("malformed power \"" + factor + "\"");
          }
          deg = std::stoi(digits);
        }
        (factor[0] == 'q' ? degQ : degT) += deg;
      } else {
        coeff *= parseRational(factor);
      }
    }
    out.addTerm(degQ, degT, negative ? Rational(-coeff) : coeff);
    pos = end == std::string::npos ? compact.size() : end;
  }
  return out;
}

namespace {

// Sums q^cross t^nest * weight(pairing) over P2(2n), skipping zero weights.
template <typename Weight>
QTPolynomial sumOverPairings(int n, Weight weight) {
  QTPolynomial out;
  forEachPairPartition(n, [&](const PairPartition& p) {
    const Rational w = weight(p);
    if (w == 0) return;
    const auto stats = crossNest(p);
    out.addTerm(stats.crossCount(), stats.nestCount(), w);
  });
  return out;
}

Rational covarianceWeight(const PairPartition& p, const EpsilonString& eps,
                          const CovarianceSpec& cov) {
  Rational w = 1;
  for (const Pair& pair : p.pairs()) {
    const double c = cov(eps[pair.open - 1], eps[pair.close - 1]);
    if (c == 0.0) return 0;
    w *= Rational(c);
  }
  return w;
}

}  // namespace

QTPolynomial wickField(int n) {
  return sumOverPairings(n, [](const PairPartition&) { return Rational(1); });
}

QTPolynomial wickMixed(const EpsilonString& eps, const CovarianceSpec& cov) {
  if (eps.size() % 2 != 0) return {};
  return sumOverPairings(eps.size() / 2, [&](const PairPartition& p) {
    return covarianceWeight(p, eps, cov);
  });
}

QTPolynomial wickJoint(std::span<const int> labels, const EpsilonString& eps,
                       const CovarianceSpec& cov) {
  if (static_cast<int>(labels.size()) != eps.size()) {
    throw ArgumentError("wickJoint: " + std::to_string(labels.size()) +
                        " labels for an epsilon string of length " +
                        std::to_string(eps.size()));
  }
  if (eps.size() % 2 != 0) return {};
  return sumOverPairings(eps.size() / 2, [&](const PairPartition& p) {
    for (const Pair& pair : p.pairs()) {
      if (labels[pair.open - 1] != labels[pair.close - 1]) return Rational(0);
    }
    return covarianceWeight(p, eps, cov);
  });
}

}  // namespace qtwick
