#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cyclecover/core.hpp"

namespace cyclecover {

/// Simple undirected graph with a dense adjacency matrix.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : n_(n), adj_(static_cast<std::size_t>(n) * n, 0) {
    require(n >= 0, ErrorCode::BadParams, "negative vertex count");
  }

  int n() const noexcept { return n_; }

  void add_edge(Vertex u, Vertex v) {
    require(u >= 0 && v >= 0 && u < n_ && v < n_ && u != v, ErrorCode::OutOfRange, "bad edge");
    if (!adj_[idx(u, v)]) ++edges_;
    adj_[idx(u, v)] = adj_[idx(v, u)] = 1;
  }

  bool adjacent(Vertex u, Vertex v) const noexcept { return u != v && adj_[idx(u, v)]; }

  std::vector<Vertex> neighbours(Vertex v) const {
    std::vector<Vertex> out;
    for (Vertex u = 0; u < n_; ++u)
      if (adjacent(u, v)) out.push_back(u);
    return out;
  }

  int degree(Vertex v) const {
    int d = 0;
    for (Vertex u = 0; u < n_; ++u) d += adjacent(u, v);
    return d;
  }

  long edge_count() const noexcept { return edges_; }

  /// Adjacency bitmasks; requires n <= 64.
  std::vector<std::uint64_t> masks() const {
    require(n_ <= 64, ErrorCode::BudgetExceeded, "bitmask view needs n <= 64");
    std::vector<std::uint64_t> out(static_cast<std::size_t>(n_), 0);
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v = 0; v < n_; ++v)
        if (adjacent(u, v)) out[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
    return out;
  }

  static Graph complete(int n) {
    Graph g(n);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
  }

  static Graph cycle(int n) {
    Graph g(n);
    for (Vertex u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
    if (n >= 3) g.add_edge(n - 1, 0);
    return g;
  }

  /// Induced subgraph on `vertices`; local vertex i is vertices[i].
  Graph induced(std::span<const Vertex> vertices) const {
    Graph g(static_cast<int>(vertices.size()));
    for (std::size_t i = 0; i < vertices.size(); ++i)
      for (std::size_t j = i + 1; j < vertices.size(); ++j)
        if (adjacent(vertices[i], vertices[j])) g.add_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    return g;
  }

 private:
  std::size_t idx(Vertex u, Vertex v) const noexcept {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
  }

  int n_ = 0;
  long edges_ = 0;
  std::vector<char> adj_;
};

/// Graph of the edges of colour `col`, on all n vertices.
inline Graph colour_class(const EdgeColouring& c, ColourId col) {
  Graph g(c.n());
  for (Vertex u = 0; u < c.n(); ++u)
    for (Vertex v = u + 1; v < c.n(); ++v)
      if (c(u, v) == col) g.add_edge(u, v);
  return g;
}

/// A cycle of g in the loose sense: length <= 1, a single edge, or a closed walk on distinct vertices.
inline bool is_graph_cycle(const Graph& g, std::span<const Vertex> vs) {
  std::vector<Vertex> sorted(vs.begin(), vs.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (Vertex v : vs)
    if (v < 0 || v >= g.n()) return false;
  if (vs.size() <= 1) return true;
  if (vs.size() == 2) return g.adjacent(vs[0], vs[1]);
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (!g.adjacent(vs[i], vs[(i + 1) % vs.size()])) return false;
  return true;
}

}  // namespace cyclecover
