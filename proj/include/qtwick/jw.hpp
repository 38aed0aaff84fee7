#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "qtwick/coeffs.hpp"

namespace qtwick {

inline constexpr int kMaxSlots = 512;

/// Occupation pattern of n two-level slots. Slot j (1-based) is bit j-1;
/// a set bit means the slot holds the second basis vector of its factor.
class SlotMask {
 public:
  static constexpr int kWords = kMaxSlots / 64;

  bool test(int slot) const {
    return (words_[(slot - 1) >> 6] >> ((slot - 1) & 63)) & 1U;
  }
  void set(int slot) { words_[(slot - 1) >> 6] |= bit(slot); }
  void reset(int slot) { words_[(slot - 1) >> 6] &= ~bit(slot); }
  void assign(int slot, bool value) { value ? set(slot) : reset(slot); }

  int popcount() const;
  bool none() const;

  /// Calls f(slot) for every set slot in increasing order.
  template <typename F>
  void forEachSet(F&& f) const {
    for (int w = 0; w < kWords; ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int offset = std::countr_zero(bits);
        f(64 * w + offset + 1);
        bits &= bits - 1;
      }
    }
  }

  /// Lowercase hex without leading zeros, "0x0" for the empty mask.
  std::string toHex() const;
  static SlotMask fromHex(const std::string& text);
  static SlotMask fromInteger(std::uint64_t bits);

  std::size_t hash() const;

  auto operator<=>(const SlotMask&) const = default;

 private:
  static std::uint64_t bit(int slot) { return std::uint64_t{1} << ((slot - 1) & 63); }
  std::array<std::uint64_t, kWords> words_{};
};

/// Action of a monomial 2x2 matrix on one slot: input bit v goes to
/// target[v] with factor scale[v]; target -1 means the vector is killed.
struct SlotMap {
  std::array<std::int8_t, 2> target{0, 1};
  std::array<double, 2> scale{1.0, 1.0};

  static SlotMap diag(double occupiedScale) { return {{0, 1}, {1.0, occupiedScale}}; }
  static SlotMap raise() { return {{1, -1}, {1.0, 0.0}}; }
  static SlotMap lower() { return {{-1, 0}, {0.0, 1.0}}; }

  bool isDiagonal() const { return target[0] == 0 && target[1] == 1; }
  bool isZero() const { return target[0] < 0 && target[1] < 0; }
  std::string actionName() const;
};

/// A tensor product of per-slot monomial maps times an overall scalar: every
/// basis mask goes to a single scaled mask or to zero.
class MonomialOperator {
 public:
  /// The identity on n slots.
  explicit MonomialOperator(int n = 0);
  MonomialOperator(std::vector<SlotMap> slots, double scalar);

  int width() const { return static_cast<int>(slots_.size()); }
  double scalar() const { return scalar_; }
  const SlotMap& slot(int j) const { return slots_[j - 1]; }
  bool isZero() const { return zero_; }

  /// Image of one basis mask, or nullopt when it is annihilated.
  std::optional<std::pair<SlotMask, double>> apply(const SlotMask& in) const;

  /// Rescales every slot so its first surviving entry is 1, pushing the
  /// factors into the scalar. Equal operators have equal canonical forms.
  MonomialOperator canonical() const;

  /// Per-slot action table.
  nlohmann::json toJson() const;

  /// Dense 2^n x 2^n matrix with basis index = mask; only for n <= 6.
  Eigen::MatrixXd toDense() const;

  /// Product a * b (b acts first).
  friend MonomialOperator compose(const MonomialOperator& a,
                                  const MonomialOperator& b);

 private:
  void index();

  std::vector<SlotMap> slots_;
  double scalar_ = 1.0;
  bool zero_ = false;
  std::vector<int> nonDiagonal_;   // slots that move or kill
  std::vector<int> emptyScaled_;   // diagonal slots with scale[0] != 1
  SlotMask nonDiagonalMask_;
};

/// Finite combination of basis masks, sorted by mask, without zeros.
class SparseState {
 public:
  using Entry = std::pair<SlotMask, double>;

  SparseState() = default;
  explicit SparseState(int width) : width_(width) {}

  /// Sums duplicate masks in input order and drops zeros.
  static SparseState fromEntries(int width, std::vector<Entry> entries);
  static SparseState vacuum(int width);

  int width() const { return width_; }
  std::span<const Entry> entries() const { return entries_; }
  std::size_t supportSize() const { return entries_.size(); }
  bool isZero() const { return entries_.empty(); }
  double coefficient(const SlotMask& mask) const;

  /// CSV with header "bitmask,coefficient".
  void writeCsv(std::ostream& out) const;

 private:
  int width_ = 0;
  std::vector<Entry> entries_;
};

/// b_{n,i} (or its adjoint): slot j < i carries diag(1, sqrt(t) mu(j,i)),
/// slot i lowers (raises for the adjoint), slot j > i carries
/// diag(1, sqrt(t)). Throws ArgumentError for i outside 1..n.
MonomialOperator buildJW(int n, int i, bool adjoint,
                         const CoefficientTable& table);

/// Throws ArgumentError on a width mismatch.
SparseState applyMonomial(const MonomialOperator& op, const SparseState& s);

/// One factor b_i or b_i^* of a product.
struct JWFactor {
  int index = 1;
  bool adjoint = false;

  /// Whitespace-separated tokens such as "2 1 2* 1*", leftmost first.
  static std::vector<JWFactor> parseProduct(const std::string& text);
};

/// <(product) e0, e0>, applying the product right to left.
double vacuumExpectation(std::span<const JWFactor> product, int n,
                         const CoefficientTable& table);

struct CommutationReport {
  double maxDeviation = 0.0;
  int checked = 0;
  std::vector<std::string> failures;

  bool passed() const { return failures.empty(); }
};

/// Checks b_i^e b_j^e' = mu_{e',e}(j,i) b_j^e' b_i^e slot by slot for all
/// i != j <= n and all four exponent pairs.
CommutationReport checkCommutation(int n, const CoefficientTable& table,
                                   double tolerance = 1e-12);

}  // namespace qtwick
