#include "qtwick/pairings.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "qtwick/errors.hpp"

namespace qtwick {

PairPartition PairPartition::fromPairs(std::vector<Pair> pairs) {
  for (auto& p : pairs) {
    if (p.open > p.close) std::swap(p.open, p.close);
  }
  std::sort(pairs.begin(), pairs.end());
  const int size = 2 * static_cast<int>(pairs.size());
  std::vector<int> owner(size, -1);
  for (int k = 0; k < static_cast<int>(pairs.size()); ++k) {
    for (int pos : {pairs[k].open, pairs[k].close}) {
      if (pos < 1 || pos > size) {
        throw ArgumentError("pair position " + std::to_string(pos) +
                            " outside 1.." + std::to_string(size));
      }
      if (owner[pos - 1] != -1) {
        throw ArgumentError("position " + std::to_string(pos) +
                            " appears in more than one pair");
      }
      owner[pos - 1] = k;
    }
  }
  PairPartition result;
  result.pairs_ = std::move(pairs);
  return result;
}

PairPartition PairPartition::parse(const std::string& text) {
  std::vector<int> numbers;
  std::string digits;
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      continue;
    }
    if (!digits.empty()) {
      numbers.push_back(std::stoi(digits));
      digits.clear();
    }
    if (c != '(' && c != ')' && c != ',' && c != '{' && c != '}' &&
        !std::isspace(static_cast<unsigned char>(c))) {
      throw ArgumentError("unexpected character '" + std::string(1, c) +
                          "' in pairing \"" + text + "\"");
    }
  }
  if (!digits.empty()) numbers.push_back(std::stoi(digits));
  if (numbers.empty() || numbers.size() % 2 != 0) {
    throw ArgumentError("pairing \"" + text + "\" must list pairs (w,z)");
  }
  std::vector<Pair> pairs;
  for (std::size_t k = 0; k < numbers.size(); k += 2) {
    pairs.push_back({numbers[k], numbers[k + 1]});
  }
  return fromPairs(std::move(pairs));
}

int PairPartition::blockOf(int pos) const {
  for (int k = 0; k < blockCount(); ++k) {
    if (pairs_[k].open == pos || pairs_[k].close == pos) return k;
  }
  throw ArgumentError("position " + std::to_string(pos) + " not in pairing");
}

int PairPartition::partnerOf(int pos) const {
  const Pair& p = pairs_[blockOf(pos)];
  return p.open == pos ? p.close : p.open;
}

std::string PairPartition::toString() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t k = 0; k < pairs_.size(); ++k) {
    if (k) out << ',';
    out << '(' << pairs_[k].open << ',' << pairs_[k].close << ')';
  }
  out << '}';
  return out.str();
}

CrossNestReport crossNest(const PairPartition& p) {
  CrossNestReport report;
  const auto pairs = p.pairs();
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    for (std::size_t b = a + 1; b < pairs.size(); ++b) {
      // openers are increasing, so pairs[a].open < pairs[b].open
      const Pair& outer = pairs[a];
      const Pair& inner = pairs[b];
      if (inner.open < outer.close && outer.close < inner.close) {
        report.crossSet.push_back(
            {outer.open, inner.open, outer.close, inner.close});
      } else if (inner.close < outer.close) {
        report.nestSet.push_back(
            {outer.open, inner.open, inner.close, outer.close});
      }
    }
  }
  return report;
}

namespace {

void enumerateFrom(std::vector<bool>& used, std::vector<Pair>& current,
                   const std::function<void(const PairPartition&)>& out) {
  const int size = static_cast<int>(used.size());
  int first = 0;
  while (first < size && used[first]) ++first;
  if (first == size) {
    out(PairPartition::fromPairs(current));
    return;
  }
  used[first] = true;
  for (int partner = first + 1; partner < size; ++partner) {
    if (used[partner]) continue;
    used[partner] = true;
    current.push_back({first + 1, partner + 1});
    enumerateFrom(used, current, out);
    current.pop_back();
    used[partner] = false;
  }
  used[first] = false;
}

}  // namespace

void forEachPairPartition(
    int n, const std::function<void(const PairPartition&)>& f) {
  if (n < 1 || n > kMaxEnumerationBlocks) {
    throw SizeLimitError("pair partition enumeration needs 1 <= n <= " +
                         std::to_string(kMaxEnumerationBlocks) + ", got " +
                         std::to_string(n));
  }
  std::vector<bool> used(2 * n, false);
  std::vector<Pair> current;
  enumerateFrom(used, current, f);
}

std::vector<PairPartition> enumeratePairPartitions(int n) {
  std::vector<PairPartition> out;
  forEachPairPartition(n, [&](const PairPartition& p) { out.push_back(p); });
  return out;
}

SetPartition::SetPartition(std::vector<int> restrictedGrowth)
    : labels_(std::move(restrictedGrowth)) {
  int next = 0;
  for (int label : labels_) {
    if (label < 0 || label > next) {
      throw ArgumentError("labels are not a restricted-growth string");
    }
    if (label == next) ++next;
  }
  blockCount_ = next;
}

std::vector<std::vector<int>> SetPartition::blocks() const {
  std::vector<std::vector<int>> out(blockCount_);
  for (int k = 0; k < size(); ++k) out[labels_[k]].push_back(k + 1);
  return out;
}

std::optional<PairPartition> SetPartition::asPairPartition() const {
  const auto bs = blocks();
  std::vector<Pair> pairs;
  pairs.reserve(bs.size());
  for (const auto& b : bs) {
    if (b.size() != 2) return std::nullopt;
    pairs.push_back({b[0], b[1]});
  }
  return PairPartition::fromPairs(std::move(pairs));
}

std::string SetPartition::toString() const {
  std::ostringstream out;
  out << '{';
  const auto bs = blocks();
  for (std::size_t k = 0; k < bs.size(); ++k) {
    if (k) out << ',';
    out << '{';
    for (std::size_t e = 0; e < bs[k].size(); ++e) {
      if (e) out << ',';
      out << bs[k][e];
    }
    out << '}';
  }
  out << '}';
  return out.str();
}

SetPartition classOf(std::span<const int> tuple) {
  if (tuple.empty()) throw ArgumentError("classOf needs a non-empty tuple");
  std::map<int, int> firstSeen;
  std::vector<int> labels;
  labels.reserve(tuple.size());
  for (int value : tuple) {
    auto [it, inserted] =
        firstSeen.emplace(value, static_cast<int>(firstSeen.size()));
    labels.push_back(it->second);
  }
  return SetPartition(std::move(labels));
}

}  // namespace qtwick
