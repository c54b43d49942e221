#pragma once

#include <compare>
#include <initializer_list>
#include <numeric>
#include <vector>

namespace jetvariant {

/// Multi-index over the n independent directions. Entries are non-negative;
/// |sigma| is the sum of entries.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(int n) : entries_(static_cast<size_t>(n), 0) {}
  MultiIndex(std::initializer_list<int> e) : entries_(e) {}
  explicit MultiIndex(std::vector<int> e) : entries_(std::move(e)) {}

  static MultiIndex unit(int n, int dir) {
    MultiIndex s(n);
    s.entries_[static_cast<size_t>(dir)] = 1;
    return s;
  }

  int size() const { return static_cast<int>(entries_.size()); }
  int order() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }
  int operator[](int i) const { return entries_[static_cast<size_t>(i)]; }
  int& operator[](int i) { return entries_[static_cast<size_t>(i)]; }

  /// sigma + 1_dir
  MultiIndex bumped(int dir) const {
    MultiIndex s(*this);
    ++s.entries_[static_cast<size_t>(dir)];
    return s;
  }

  /// sigma - 1_dir; entry must be positive.
  MultiIndex lowered(int dir) const {
    MultiIndex s(*this);
    --s.entries_[static_cast<size_t>(dir)];
    return s;
  }

  MultiIndex plus(const MultiIndex& o) const {
    MultiIndex s(*this);
    for (size_t i = 0; i < entries_.size(); ++i) s.entries_[i] += o.entries_[i];
    return s;
  }

  /// Componentwise >=, i.e. *this is a derivative of o.
  bool dominates(const MultiIndex& o) const {
    for (size_t i = 0; i < entries_.size(); ++i)
      if (entries_[i] < o.entries_[i]) return false;
    return true;
  }

  bool operator==(const MultiIndex&) const = default;
  auto operator<=>(const MultiIndex&) const = default;  // lexicographic

  const std::vector<int>& entries() const { return entries_; }

 private:
  std::vector<int> entries_;
};

/// All multi-indices with n entries and |sigma| = order, in ascending
/// lexicographic order ((0,..,0,L) first, (L,0,..,0) last).
inline std::vector<MultiIndex> multi_indices_of_order(int n, int order) {
  std::vector<MultiIndex> out;
  std::vector<int> cur(static_cast<size_t>(n), 0);
  auto rec = [&](auto&& self, int pos, int rem) -> void {
    if (pos == n - 1) {
      cur[static_cast<size_t>(pos)] = rem;
      out.emplace_back(cur);
      return;
    }
    for (int t = 0; t <= rem; ++t) {
      cur[static_cast<size_t>(pos)] = t;
      self(self, pos + 1, rem - t);
    }
  };
  if (n == 0) {
    if (order == 0) out.emplace_back(cur);
    return out;
  }
  rec(rec, 0, order);
  return out;
}

}  // namespace jetvariant
