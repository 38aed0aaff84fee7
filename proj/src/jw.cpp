#include "qtwick/jw.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "qtwick/csv.hpp"
#include "qtwick/errors.hpp"

namespace qtwick {

int SlotMask::popcount() const {
  int total = 0;
  for (auto w : words_) total += std::popcount(w);
  return total;
}

bool SlotMask::none() const {
  return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

std::string SlotMask::toHex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  bool leading = true;
  for (int w = kWords - 1; w >= 0; --w) {
    for (int nibble = 15; nibble >= 0; --nibble) {
      const int d = static_cast<int>((words_[w] >> (4 * nibble)) & 0xF);
      if (leading && d == 0) continue;
      leading = false;
      out.push_back(kDigits[d]);
    }
  }
  return "0x" + (out.empty() ? std::string("0") : out);
}

SlotMask SlotMask::fromHex(const std::string& text) {
  if (text.size() < 3 || text[0] != '0' || (text[1] != 'x' && text[1] != 'X')) {
    throw ArgumentError("bitmask \"" + text + "\" must start with 0x");
  }
  SlotMask mask;
  int nibble = 0;
  for (auto it = text.rbegin(); it != text.rend() - 2; ++it, ++nibble) {
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(*it)));
    int d = 0;
    if (c >= '0' && c <= '9') {
      d = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      d = c - 'a' + 10;
    } else {
      throw ArgumentError("bitmask \"" + text + "\" is not hexadecimal");
    }
    if (d == 0) continue;
    if (nibble >= 16 * kWords) throw ArgumentError("bitmask \"" + text + "\" too wide");
    mask.words_[nibble / 16] |= static_cast<std::uint64_t>(d) << (4 * (nibble % 16));
  }
  return mask;
}

SlotMask SlotMask::fromInteger(std::uint64_t bits) {
  SlotMask mask;
  mask.words_[0] = bits;
  return mask;
}

std::size_t SlotMask::hash() const {
  std::uint64_t h = 0;
  for (int w = 0; w < kWords; ++w) h = mixSeed(h ^ words_[w], static_cast<std::uint64_t>(w));
  return static_cast<std::size_t>(h);
}

std::string SlotMap::actionName() const {
  if (isZero()) return "zero";
  if (isDiagonal()) return "diag";
  if (target[0] == 1 && target[1] < 0) return "raise";
  if (target[0] < 0 && target[1] == 0) return "lower";
  return "other";
}

MonomialOperator::MonomialOperator(int n) : slots_(n) {
  if (n < 0 || n > kMaxSlots) {
    throw SizeLimitError("operator width must be in 0.." + std::to_string(kMaxSlots));
  }
  index();
}

MonomialOperator::MonomialOperator(std::vector<SlotMap> slots, double scalar)
    : slots_(std::move(slots)), scalar_(scalar) {
  if (slots_.size() > static_cast<std::size_t>(kMaxSlots)) {
    throw SizeLimitError("operator width must be in 0.." + std::to_string(kMaxSlots));
  }
  index();
}

void MonomialOperator::index() {
  nonDiagonal_.clear();
  emptyScaled_.clear();
  nonDiagonalMask_ = SlotMask();
  zero_ = scalar_ == 0.0;
  for (int j = 1; j <= width(); ++j) {
    SlotMap& s = slots_[j - 1];
    for (int v = 0; v < 2; ++v) {
      if (s.scale[v] == 0.0) s.target[v] = -1;
      if (s.target[v] < 0) s.scale[v] = 0.0;
    }
    if (s.isZero()) zero_ = true;
    if (!s.isDiagonal()) {
      nonDiagonal_.push_back(j);
      nonDiagonalMask_.set(j);
    } else if (s.scale[0] != 1.0) {
      emptyScaled_.push_back(j);
    }
  }
}

std::optional<std::pair<SlotMask, double>> MonomialOperator::apply(
    const SlotMask& in) const {
  if (zero_) return std::nullopt;
  double coeff = scalar_;
  SlotMask out = in;
  for (int j : nonDiagonal_) {
    const SlotMap& s = slots_[j - 1];
    const int v = in.test(j) ? 1 : 0;
    if (s.target[v] < 0) return std::nullopt;
    coeff *= s.scale[v];
    out.assign(j, s.target[v] == 1);
  }
  for (int j : emptyScaled_) {
    if (!in.test(j)) coeff *= slots_[j - 1].scale[0];
  }
  in.forEachSet([&](int j) {
    if (j <= width() && !nonDiagonalMask_.test(j)) coeff *= slots_[j - 1].scale[1];
  });
  return std::make_pair(out, coeff);
}

MonomialOperator MonomialOperator::canonical() const {
  std::vector<SlotMap> slots = slots_;
  double scalar = scalar_;
  for (SlotMap& s : slots) {
    for (int v = 0; v < 2; ++v) {
      if (s.target[v] < 0) continue;
      const double factor = s.scale[v];
      scalar *= factor;
      s.scale[0] /= factor;
      s.scale[1] /= factor;
      break;
    }
  }
  return MonomialOperator(std::move(slots), scalar);
}

nlohmann::json MonomialOperator::toJson() const {
  nlohmann::json slots = nlohmann::json::array();
  for (int j = 1; j <= width(); ++j) {
    const SlotMap& s = slots_[j - 1];
    nlohmann::json entry;
    entry["slot"] = j;
    entry["action"] = s.actionName();
    for (int v = 0; v < 2; ++v) {
      nlohmann::json image;
      if (s.target[v] < 0) {
        image = nullptr;
      } else {
        image["to"] = s.target[v];
        image["scale"] = s.scale[v];
      }
      entry[v == 0 ? "empty" : "occupied"] = image;
    }
    slots.push_back(entry);
  }
  return {{"width", width()}, {"scalar", scalar_}, {"slots", slots}};
}

Eigen::MatrixXd MonomialOperator::toDense() const {
  if (width() > 6) throw SizeLimitError("dense realization limited to n <= 6");
  const Eigen::Index dim = Eigen::Index{1} << width();
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto image = apply(SlotMask::fromInteger(static_cast<std::uint64_t>(col)));
    if (!image) continue;
    std::uint64_t row = 0;
    for (int j = 1; j <= width(); ++j) {
      if (image->first.test(j)) row |= std::uint64_t{1} << (j - 1);
    }
    dense(static_cast<Eigen::Index>(row), col) += image->second;
  }
  return dense;
}

MonomialOperator compose(const MonomialOperator& a, const MonomialOperator& b) {
  if (a.width() != b.width()) throw ArgumentError("compose: width mismatch");
  std::vector<SlotMap> slots(a.width());
  for (int j = 1; j <= a.width(); ++j) {
    const SlotMap& first = b.slot(j);
    const SlotMap& second = a.slot(j);
    SlotMap& out = slots[j - 1];
    for (int v = 0; v < 2; ++v) {
      const int mid = first.target[v];
      if (mid < 0 || second.target[mid] < 0) {
        out.target[v] = -1;
        out.scale[v] = 0.0;
      } else {
        out.target[v] = second.target[mid];
        out.scale[v] = first.scale[v] * second.scale[mid];
      }
    }
  }
  return MonomialOperator(std::move(slots), a.scalar() * b.scalar());
}

SparseState SparseState::fromEntries(int width, std::vector<Entry> entries) {
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& x, const Entry& y) { return x.first < y.first; });
  SparseState state(width);
  for (auto& e : entries) {
    if (!state.entries_.empty() && state.entries_.back().first == e.first) {
      state.entries_.back().second += e.second;
    } else {
      state.entries_.push_back(std::move(e));
    }
  }
  std::erase_if(state.entries_, [](const Entry& e) { return e.second == 0.0; });
  return state;
}

SparseState SparseState::vacuum(int width) {
  return fromEntries(width, {{SlotMask(), 1.0}});
}

double SparseState::coefficient(const SlotMask& mask) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), mask,
      [](const Entry& e, const SlotMask& m) { return e.first < m; });
  return it != entries_.end() && it->first == mask ? it->second : 0.0;
}

void SparseState::writeCsv(std::ostream& out) const {
  out << "bitmask,coefficient\n";
  for (const auto& [mask, c] : entries_) {
    out << mask.toHex() << ',' << csv::formatDouble(c) << '\n';
  }
}

MonomialOperator buildJW(int n, int i, bool adjoint,
                         const CoefficientTable& table) {
  if (n < 1 || n > kMaxSlots) {
    throw ArgumentError("JW width must be in 1.." + std::to_string(kMaxSlots));
  }
  if (i < 1 || i > n) {
    throw ArgumentError("JW index " + std::to_string(i) + " outside 1.." +
                        std::to_string(n));
  }
  if (table.size() < i) {
    throw ArgumentError("coefficient table of size " + std::to_string(table.size()) +
                        " does not cover index " + std::to_string(i));
  }
  std::vector<SlotMap> slots(n);
  for (int j = 1; j < i; ++j) slots[j - 1] = SlotMap::diag(table.sqrtT() * table.mu(j, i));
  slots[i - 1] = adjoint ? SlotMap::raise() : SlotMap::lower();
  for (int j = i + 1; j <= n; ++j) slots[j - 1] = SlotMap::diag(table.sqrtT());
  return MonomialOperator(std::move(slots), 1.0);
}

SparseState applyMonomial(const MonomialOperator& op, const SparseState& s) {
  if (op.width() != s.width()) {
    throw ArgumentError("operator width " + std::to_string(op.width()) +
                        " does not match state width " + std::to_string(s.width()));
  }
  std::vector<SparseState::Entry> out;
  out.reserve(s.supportSize());
  for (const auto& [mask, c] : s.entries()) {
    if (auto image = op.apply(mask)) out.emplace_back(image->first, c * image->second);
  }
  return SparseState::fromEntries(s.width(), std::move(out));
}

std::vector<JWFactor> JWFactor::parseProduct(const std::string& text) {
  std::istringstream in(text);
  std::vector<JWFactor> out;
  std::string token;
  while (in >> token) {
    JWFactor f;
    if (!token.empty() && token.back() == '*') {
      f.adjoint = true;
      token.pop_back();
    }
    if (token.empty() || !std::all_of(token.begin(), token.end(), [](unsigned char c) {
          return std::isdigit(c);
        })) {
      throw ArgumentError("JW factor must look like 3 or 3*");
    }
    f.index = std::stoi(token);
    out.push_back(f);
  }
  return out;
}

double vacuumExpectation(std::span<const JWFactor> product, int n,
                         const CoefficientTable& table) {
  SparseState state = SparseState::vacuum(n);
  for (auto it = product.rbegin(); it != product.rend(); ++it) {
    state = applyMonomial(buildJW(n, it->index, it->adjoint, table), state);
    if (state.isZero()) return 0.0;
  }
  return state.coefficient(SlotMask());
}

CommutationReport checkCommutation(int n, const CoefficientTable& table,
                                   double tolerance) {
  if (n > 10) throw SizeLimitError("checkCommutation limited to n <= 10");
  CommutationReport report;
  std::vector<std::array<MonomialOperator, 2>> ops;
  for (int i = 1; i <= n; ++i) {
    ops.push_back({buildJW(n, i, false, table), buildJW(n, i, true, table)});
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      for (Eps e : {Eps::One, Eps::Star}) {
        for (Eps ePrime : {Eps::One, Eps::Star}) {
          const auto& bi = ops[i - 1][static_cast<int>(e)];
          const auto& bj = ops[j - 1][static_cast<int>(ePrime)];
          const double coefficient = table.lookup(ePrime, e, j, i);
          const auto lhs = compose(bi, bj).canonical();
          const auto rhs = compose(bj, bi).canonical();
          ++report.checked;
          double deviation = std::abs(lhs.scalar() - coefficient * rhs.scalar());
          for (int s = 1; s <= n && std::isfinite(deviation); ++s) {
            const SlotMap& l = lhs.slot(s);
            const SlotMap& r = rhs.slot(s);
            if (l.target != r.target) {
              deviation = std::numeric_limits<double>::infinity();
              break;
            }
            for (int v = 0; v < 2; ++v) {
              deviation = std::max(deviation, std::abs(l.scale[v] - r.scale[v]));
            }
          }
          report.maxDeviation = std::max(report.maxDeviation, deviation);
          if (!(deviation <= tolerance)) {
            std::ostringstream msg;
            msg << "b_" << i << (e == Eps::Star ? "*" : "") << " b_" << j
                << (ePrime == Eps::Star ? "*" : "") << ": deviation " << deviation;
            report.failures.push_back(msg.str());
          }
        }
      }
    }
  }
  return report;
}

}  // namespace qtwick
