#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "dsnip/graph/subdivision.hpp"

namespace dsnip {

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0), count_(n) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }

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
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    --count_;
    return true;
  }

  bool connected(std::uint32_t a, std::uint32_t b) { return find(a) == find(b); }
  std::size_t count() const { return count_; }

private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> rank_;
  std::size_t count_;
};

/// Connected-component labeling; a component's id is its smallest member
/// node index.
struct ComponentLabeling {
  std::vector<std::uint32_t> component_of;
  std::size_t count = 0;

  bool same(std::uint32_t a, std::uint32_t b) const {
    return component_of[a] == component_of[b];
  }
};

inline ComponentLabeling components(const SubdivisionGraph& g) {
  const std::size_t n = g.node_count();
  UnionFind uf(n);
  for (const auto& [a, b] : g.edges()) uf.unite(a, b);

  ComponentLabeling out;
  out.component_of.assign(n, 0);
  std::vector<std::uint32_t> smallest(n, kNoNode);
  for (std::uint32_t v = 0; v < n; ++v) {
    std::uint32_t root = uf.find(v);
    if (smallest[root] == kNoNode) {
      smallest[root] = v;  // v is the smallest index in its component
      ++out.count;
    }
    out.component_of[v] = smallest[root];
  }
  return out;
}

}  // namespace dsnip
