#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace obsnum {

/// Unordered vertex pair stored with first < second.
using Edge = std::pair<std::size_t, std::size_t>;

inline Edge make_edge(std::size_t u, std::size_t v) {
  if (u == v) throw std::invalid_argument("self-loop");
  return u < v ? Edge{u, v} : Edge{v, u};
}

/// Simple labeled graph on vertices 0..n-1 (dense adjacency).
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), adj_(n * n, 0) {}

  static Graph complete(std::size_t n) {
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
  }

  static Graph from_edges(std::size_t n, const std::vector<Edge>& edges) {
    Graph g(n);
    for (const auto& [u, v] : edges) {
      if (g.has_edge(u, v)) throw std::invalid_argument("duplicate edge");
      g.add_edge(u, v);
    }
    return g;
  }

  std::size_t order() const noexcept { return n_; }

  bool has_edge(std::size_t u, std::size_t v) const {
    check(u, v);
    return adj_[u * n_ + v] != 0;
  }

  void add_edge(std::size_t u, std::size_t v) { set(u, v, 1); }
  void remove_edge(std::size_t u, std::size_t v) { set(u, v, 0); }

  std::size_t edge_count() const {
    std::size_t m = 0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j) m += adj_[i * n_ + j];
    return m;
  }

  bool is_complete() const { return edge_count() == n_ * (n_ - (n_ > 0 ? 1 : 0)) / 2; }

  /// Edges in lexicographic order.
  std::vector<Edge> edges() const { return pairs(1); }
  /// Non-adjacent pairs in lexicographic order.
  std::vector<Edge> non_edges() const { return pairs(0); }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  void check(std::size_t u, std::size_t v) const {
    if (u >= n_ || v >= n_) throw std::out_of_range("vertex out of range");
    if (u == v) throw std::invalid_argument("self-loop");
  }

  void set(std::size_t u, std::size_t v, std::uint8_t value) {
    check(u, v);
    adj_[u * n_ + v] = value;
    adj_[v * n_ + u] = value;
  }

  std::vector<Edge> pairs(std::uint8_t want) const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = i + 1; j < n_; ++j)
        if (adj_[i * n_ + j] == want) out.emplace_back(i, j);
    return out;
  }

  std::size_t n_ = 0;
  std::vector<std::uint8_t> adj_;
};

}  // namespace obsnum
