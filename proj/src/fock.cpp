#include "qtwick/fock.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "qtwick/errors.hpp"

namespace qtwick {

namespace {

double ipow(double base, int exponent) {
  double out = 1.0;
  for (int k = 0; k < exponent; ++k) out *= base;
  return out;
}

void checkLetter(int i, const FockParams& p) {
  if (i < 1 || i > p.d) {
    throw ArgumentError("basis index " + std::to_string(i) + " outside 1.." +
                        std::to_string(p.d));
  }
}

// Sum over permutations pi with left[k] == right[pi(k)] of
// q^inv(pi) t^(C(n,2) - inv(pi)), enumerated by backtracking.
double wordInnerProduct(const Word& left, const Word& right,
                        const FockParams& p) {
  const int n = static_cast<int>(left.size());
  if (n > kMaxInnerProductDegree) {
    throw SizeLimitError("inner product of words longer than " +
                         std::to_string(kMaxInnerProductDegree) +
                         " letters is not supported");
  }
  const int pairsTotal = n * (n - 1) / 2;
  std::vector<bool> used(n, false);
  double total = 0.0;
  auto recurse = [&](auto&& self, int k, int inversions) -> void {
    if (k == n) {
      total += ipow(p.q, inversions) * ipow(p.t, pairsTotal - inversions);
      return;
    }
    int usedAbove = 0;
    for (int j = n - 1; j >= 0; --j) {
      if (used[j]) {
        ++usedAbove;
        continue;
      }
      if (left[k] != right[j]) continue;
      // earlier positions mapped above j each form an inversion with k
      used[j] = true;
      self(self, k + 1, inversions + usedAbove);
      used[j] = false;
    }
  };
  recurse(recurse, 0, 0);
  return total;
}

}  // namespace

void FockParams::validate() const {
  if (d < 1) throw ParameterError("Fock dimension d must be >= 1");
  if (m < 0) throw ParameterError("truncation degree m must be >= 0");
  if (!(t > 0.0) || !std::isfinite(t)) throw ParameterError("t must be > 0");
  if (!std::isfinite(q)) throw ParameterError("q must be finite");
}

FockVector FockVector::basis(Word w, double coeff) {
  FockVector v;
  v.add(w, coeff);
  return v;
}

double FockVector::coefficient(const Word& w) const {
  auto it = coeffs_.find(w);
  return it == coeffs_.end() ? 0.0 : it->second;
}

int FockVector::degree() const {
  int best = 0;
  for (const auto& [w, c] : coeffs_) best = std::max(best, static_cast<int>(w.size()));
  return best;
}

void FockVector::add(const Word& w, double c) {
  if (c == 0.0) return;
  auto [it, inserted] = coeffs_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) coeffs_.erase(it);
  }
}

FockVector& FockVector::operator+=(const FockVector& other) {
  for (const auto& [w, c] : other.coeffs_) add(w, c);
  return *this;
}

FockVector& FockVector::operator*=(double s) {
  if (s == 0.0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [w, c] : coeffs_) c *= s;
  return *this;
}

FockVector operator-(FockVector a, const FockVector& b) {
  for (const auto& [w, c] : b.coeffs_) a.add(w, -c);
  return a;
}

double FockVector::coefficientNorm() const {
  double sum = 0.0;
  for (const auto& [w, c] : coeffs_) sum += c * c;
  return std::sqrt(sum);
}

FockOp FockOp::parse(const std::string& token) {
  if (token == "tN") return numberScale();
  if (token.size() < 2 || (token[0] != 'a' && token[0] != 's')) {
    throw ArgumentError("unknown Fock operator \"" + token + "\"");
  }
  const bool star = token.back() == '*';
  const std::string digits = token.substr(1, token.size() - 1 - (star ? 1 : 0));
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char c) {
        return std::isdigit(c);
      })) {
    throw ArgumentError("unknown Fock operator \"" + token + "\"");
  }
  const int index = std::stoi(digits);
  if (token[0] == 's') {
    if (star) throw ArgumentError("field operators are self-adjoint: \"" + token + "\"");
    return field(index);
  }
  return star ? create(index) : annihilate(index);
}

std::vector<FockOp> FockOp::parseProduct(const std::string& text) {
  std::istringstream in(text);
  std::vector<FockOp> ops;
  std::string token;
  while (in >> token) ops.push_back(parse(token));
  return ops;
}

std::string FockOp::toString() const {
  switch (kind) {
    case Kind::Create:
      return "a" + std::to_string(index) + "*";
    case Kind::Annihilate:
      return "a" + std::to_string(index);
    case Kind::Field:
      return "s" + std::to_string(index);
    case Kind::NumberScale:
      return "tN";
  }
  return "?";
}

double innerProduct(const FockVector& u, const FockVector& v,
                    const FockParams& p) {
  double total = 0.0;
  for (const auto& [wu, cu] : u.coeffs()) {
    for (const auto& [wv, cv] : v.coeffs()) {
      if (wu.size() != wv.size()) continue;
      total += cu * cv * wordInnerProduct(wu, wv, p);
    }
  }
  return total;
}

FockVector applyOperator(const FockOp& op, const FockVector& v,
                         const FockParams& p) {
  FockVector out;
  switch (op.kind) {
    case FockOp::Kind::Create:
      checkLetter(op.index, p);
      for (const auto& [w, c] : v.coeffs()) {
        if (static_cast<int>(w.size()) + 1 > p.m) {
          throw TruncationError("creation on a degree-" +
                                std::to_string(w.size()) +
                                " word exceeds truncation m=" +
                                std::to_string(p.m) + "; increase m");
        }
        Word next;
        next.reserve(w.size() + 1);
        next.push_back(op.index);
        next.insert(next.end(), w.begin(), w.end());
        out.add(next, c);
      }
      break;
    case FockOp::Kind::Annihilate:
      checkLetter(op.index, p);
      for (const auto& [w, c] : v.coeffs()) {
        const int n = static_cast<int>(w.size());
        for (int k = 1; k <= n; ++k) {
          if (w[k - 1] != op.index) continue;
          Word next = w;
          next.erase(next.begin() + (k - 1));
          out.add(next, c * ipow(p.q, k - 1) * ipow(p.t, n - k));
        }
      }
      break;
    case FockOp::Kind::Field:
      out = applyOperator(FockOp::create(op.index), v, p) +
            applyOperator(FockOp::annihilate(op.index), v, p);
      break;
    case FockOp::Kind::NumberScale:
      for (const auto& [w, c] : v.coeffs()) {
        out.add(w, c * ipow(p.t, static_cast<int>(w.size())));
      }
      break;
  }
  return out;
}

double vacuumMoment(std::span<const FockOp> product, const FockParams& p) {
  p.validate();
  FockVector state = FockVector::vacuum();
  for (auto it = product.rbegin(); it != product.rend(); ++it) {
    state = applyOperator(*it, state, p);
    if (state.isZero()) return 0.0;
  }
  return state.coefficient({});
}

std::vector<Word> wordsOfDegree(int n, int d) {
  std::vector<Word> words{Word{}};
  for (int k = 0; k < n; ++k) {
    std::vector<Word> next;
    next.reserve(words.size() * d);
    for (const auto& w : words) {
      for (int letter = 1; letter <= d; ++letter) {
        Word extended = w;
        extended.push_back(letter);
        next.push_back(std::move(extended));
      }
    }
    words = std::move(next);
  }
  return words;
}

double commutatorResidual(int f, int g, const FockParams& p) {
  p.validate();
  checkLetter(f, p);
  checkLetter(g, p);
  if (p.m < 2) throw ArgumentError("commutatorResidual needs m >= 2");
  double worst = 0.0;
  for (int n = 0; n <= p.m - 2; ++n) {
    for (const Word& w : wordsOfDegree(n, p.d)) {
      const FockVector v = FockVector::basis(w);
      FockVector lhs =
          applyOperator(FockOp::annihilate(f),
                        applyOperator(FockOp::create(g), v, p), p);
      FockVector swapped =
          applyOperator(FockOp::create(g),
                        applyOperator(FockOp::annihilate(f), v, p), p);
      FockVector residual = lhs - p.q * swapped;
      if (f == g) residual = residual - applyOperator(FockOp::numberScale(), v, p);
      worst = std::max(worst, residual.coefficientNorm());
    }
  }
  return worst;
}

Eigen::MatrixXd gramMatrix(int n, const FockParams& p) {
  p.validate();
  if (n < 0 || n > kMaxInnerProductDegree) {
    throw SizeLimitError("gramMatrix degree must be in 0.." +
                         std::to_string(kMaxInnerProductDegree));
  }
  double dim = std::pow(static_cast<double>(p.d), n);
  if (dim > 256) {
    throw SizeLimitError("gramMatrix size d^n = " +
                         std::to_string(static_cast<long long>(dim)) +
                         " exceeds 256");
  }
  const auto words = wordsOfDegree(n, p.d);
  const auto size = static_cast<Eigen::Index>(words.size());
  Eigen::MatrixXd gram(size, size);
  for (Eigen::Index a = 0; a < size; ++a) {
    for (Eigen::Index b = a; b < size; ++b) {
      const double value = wordInnerProduct(words[a], words[b], p);
      gram(a, b) = value;
      gram(b, a) = value;
    }
  }
  return gram;
}

Eigen::VectorXd symmetricEigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace qtwick
