#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qtwick/pairings.hpp"

namespace qtwick {

using Rational = boost::multiprecision::cpp_rational;

/// The exponent alphabet {1, *}: `One` is the bare operator, `Star` its
/// adjoint.
enum class Eps : std::uint8_t { One = 0, Star = 1 };

inline char toChar(Eps e) { return e == Eps::One ? '1' : '*'; }

/// A non-empty word over {1,*}, rendered as e.g. "11**".
class EpsilonString {
 public:
  EpsilonString() = default;
  explicit EpsilonString(std::vector<Eps> symbols);

  /// Throws ArgumentError on an empty string or characters other than 1 and *.
  static EpsilonString parse(const std::string& text);

  int size() const { return static_cast<int>(symbols_.size()); }
  Eps operator[](int k) const { return symbols_[k]; }
  std::span<const Eps> symbols() const { return symbols_; }
  int count(Eps e) const;
  bool balanced() const { return count(Eps::One) == count(Eps::Star); }
  std::string toString() const;

  bool operator==(const EpsilonString&) const = default;

 private:
  std::vector<Eps> symbols_;
};

/// Second moments phi(b^e b^e') for (e, e') in {1,*}^2. Defaults to
/// phi(b b*) = 1 and the other three zero.
class CovarianceSpec {
 public:
  CovarianceSpec();

  double operator()(Eps first, Eps second) const {
    return values_[index(first, second)];
  }
  void set(Eps first, Eps second, double value);

  /// Comma-separated overrides such as "1*=1,*1=0.5" applied to the default.
  static CovarianceSpec parse(const std::string& text);

 private:
  static int index(Eps a, Eps b) {
    return 2 * static_cast<int>(a) + static_cast<int>(b);
  }
  std::array<double, 4> values_{};
};

/// Bivariate polynomial in (q, t) with exact rational coefficients.
class QTPolynomial {
 public:
  using Exponents = std::pair<int, int>;  // (degree in q, degree in t)

  QTPolynomial() = default;

  static QTPolynomial constant(const Rational& c);
  static QTPolynomial monomial(int degQ, int degT, const Rational& c = 1);

  /// Parses the canonical rendering produced by toString().
  static QTPolynomial parse(const std::string& text);

  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  Rational coefficient(int degQ, int degT) const;
  int maxTotalDegree() const;

  /// Exchanges the roles of q and t.
  QTPolynomial swapped() const;

  /// Substitutes q = value, keeping a polynomial in t only.
  QTPolynomial withQ(const Rational& value) const;

  double evaluate(double q, double t) const;

  /// Terms in graded order (total degree, then q-degree descending), e.g.
  /// "1 + q + t" or "1 + 2*t - 3/2*q^2*t". The zero polynomial is "0".
  std::string toString() const;

  QTPolynomial& operator+=(const QTPolynomial& other);
  QTPolynomial& addTerm(int degQ, int degT, const Rational& c);
  friend QTPolynomial operator+(QTPolynomial a, const QTPolynomial& b) {
    return a += b;
  }
  friend QTPolynomial operator*(const QTPolynomial& a, const QTPolynomial& b);
  friend QTPolynomial operator*(const Rational& c, const QTPolynomial& p);

  bool operator==(const QTPolynomial&) const = default;

 private:
  std::map<Exponents, Rational> terms_;
};

/// Horner evaluation, outer in q and inner in t.
double polyEval(const QTPolynomial& p, double q, double t);

/// Sum over P2(2n) of q^cross t^nest. Throws SizeLimitError unless n <= 8.
QTPolynomial wickField(int n);

/// Sum over pairings of q^cross t^nest times the product of pair
/// covariances. Odd-length strings give the zero polynomial.
QTPolynomial wickMixed(const EpsilonString& eps,
                       const CovarianceSpec& cov = CovarianceSpec());

/// wickMixed restricted to pairings whose pairs carry equal basis labels.
/// Throws ArgumentError on a length mismatch.
QTPolynomial wickJoint(std::span<const int> labels, const EpsilonString& eps,
                       const CovarianceSpec& cov = CovarianceSpec());

}  // namespace qtwick
