#pragma once

#include <cstdint>
#include <vector>

namespace mutfreq::detail {

// Fenwick tree over non-negative integer weights, used to pick an item with
// probability proportional to its weight in O(log n).
class FenwickTree {
 public:
  void clear() {
    tree_.clear();
    total_ = 0;
  }

  std::size_t size() const { return tree_.size(); }
  std::int64_t total() const { return total_; }

  // append a new item with the given weight; O(log n)
  void append(std::int64_t weight) {
    const std::size_t i = tree_.size() + 1;  // 1-based
    std::int64_t v = weight;
    const std::size_t low = i - (i & (~i + 1));
    for (std::size_t j = i - 1; j > low; j -= j & (~j + 1)) v += tree_[j - 1];
    tree_.push_back(v);
    total_ += weight;
  }

  void add(std::size_t idx, std::int64_t delta) {
    total_ += delta;
    for (std::size_t i = idx + 1; i <= tree_.size(); i += i & (~i + 1))
      tree_[i - 1] += delta;
  }

  // smallest index whose prefix sum exceeds target, target in [0, total)
  std::size_t find(std::int64_t target) const {
    std::size_t pos = 0;
    std::size_t mask = 1;
    while ((mask << 1) <= tree_.size()) mask <<= 1;
    for (; mask > 0; mask >>= 1) {
      const std::size_t next = pos + mask;
      if (next <= tree_.size() && tree_[next - 1] <= target) {
        target -= tree_[next - 1];
        pos = next;
      }
    }
    return pos;  // 0-based item index
  }

 private:
  std::vector<std::int64_t> tree_;
  std::int64_t total_ = 0;
};

}  // namespace mutfreq::detail
