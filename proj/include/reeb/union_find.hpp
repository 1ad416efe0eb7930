#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace reeb {

// Disjoint sets with path halving and union by size. Grows on demand.
class UnionFind {
 public:
  UnionFind() = default;
  explicit UnionFind(std::size_t n) { resize(n); }

  void resize(std::size_t n) {
    std::size_t old = parent_.size();
    if (n <= old) return;
    parent_.resize(n);
    size_.resize(n, 1);
    std::iota(parent_.begin() + static_cast<std::ptrdiff_t>(old), parent_.end(),
              static_cast<std::uint32_t>(old));
  }

  std::size_t size() const { return parent_.size(); }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

  bool connected(std::uint32_t a, std::uint32_t b) { return find(a) == find(b); }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
};

}  // namespace reeb
