#pragma once

#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qtwick {

/// Truncated (q,t)-Fock space over R^d with words of length at most m.
struct FockParams {
  int d = 1;
  int m = 1;
  double q = 0.0;
  double t = 1.0;

  /// |q| < t: the inner product is positive definite.
  bool hilbert() const { return std::abs(q) < t; }

  /// Throws ParameterError unless d >= 1, m >= 0 and t > 0.
  void validate() const;
};

/// A pure tensor e_{letters[0]} (x) ... (x) e_{letters[n-1]}; empty is the
/// vacuum. Letters are 1-based basis indices.
using Word = std::vector<int>;

class FockVector {
 public:
  FockVector() = default;

  static FockVector vacuum() { return basis({}); }
  static FockVector basis(Word w, double coeff = 1.0);

  const std::map<Word, double>& coeffs() const { return coeffs_; }
  double coefficient(const Word& w) const;
  bool isZero() const { return coeffs_.empty(); }
  int degree() const;

  void add(const Word& w, double c);
  FockVector& operator+=(const FockVector& other);
  FockVector& operator*=(double s);
  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b);
  friend FockVector operator*(double s, FockVector v) { return v *= s; }

  /// Euclidean norm of the coefficient vector (not the (q,t) norm).
  double coefficientNorm() const;

 private:
  std::map<Word, double> coeffs_;
};

/// One of the operators acting on the Fock space, as written in a product.
struct FockOp {
  enum class Kind { Create, Annihilate, Field, NumberScale };

  Kind kind = Kind::NumberScale;
  int index = 0;  // basis label for Create/Annihilate/Field

  static FockOp create(int i) { return {Kind::Create, i}; }
  static FockOp annihilate(int i) { return {Kind::Annihilate, i}; }
  static FockOp field(int i) { return {Kind::Field, i}; }
  static FockOp numberScale() { return {Kind::NumberScale, 0}; }

  /// Tokens: "a3" annihilation, "a3*" creation, "s3" field, "tN" number scale.
  static FockOp parse(const std::string& token);
  /// Whitespace-separated product, leftmost operator first.
  static std::vector<FockOp> parseProduct(const std::string& text);
  std::string toString() const;
};

inline constexpr int kMaxInnerProductDegree = 8;

/// Bilinear (q,t)-symmetrized inner product. Throws SizeLimitError for words
/// longer than 8 letters.
double innerProduct(const FockVector& u, const FockVector& v,
                    const FockParams& p);

/// Throws TruncationError if a creation would exceed degree m.
FockVector applyOperator(const FockOp& op, const FockVector& v,
                         const FockParams& p);

/// <(product) Omega, Omega>, applying the product right to left.
double vacuumMoment(std::span<const FockOp> product, const FockParams& p);

/// Max over words w of degree <= m-2 of the coefficient norm of
/// (a(f) a(g)* - q a(g)* a(f) - <f,g> t^N) w.
double commutatorResidual(int f, int g, const FockParams& p);

/// All words of length n over [d] in lexicographic order.
std::vector<Word> wordsOfDegree(int n, int d);

/// Inner products of all degree-n words, lexicographic order.
/// Throws SizeLimitError unless d^n <= 256 and n <= 8.
Eigen::MatrixXd gramMatrix(int n, const FockParams& p);

/// Ascending eigenvalues of a symmetric matrix.
Eigen::VectorXd symmetricEigenvalues(const Eigen::MatrixXd& m);

}  // namespace qtwick
