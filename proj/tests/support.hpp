#pragma once

// Deliberately naive reference implementations used to cross-check the library.

#include <algorithm>
#include <numeric>
#include <vector>

#include "cyclecover/core.hpp"
#include "cyclecover/graph.hpp"
#include "cyclecover/instances.hpp"
#include "cyclecover/rng.hpp"

namespace testsupport {

using namespace cyclecover;

/// Does some ordering of vs form a closed walk in colour col? (|vs| <= 2 always does.)
inline bool naive_spanning(const EdgeColouring& c, std::vector<Vertex> vs, ColourId col) {
  if (vs.size() <= 1) return true;
  if (vs.size() == 2) return c(vs[0], vs[1]) == col;
  std::sort(vs.begin() + 1, vs.end());
  do {
    bool ok = true;
    for (std::size_t i = 0; i < vs.size() && ok; ++i) ok = c(vs[i], vs[(i + 1) % vs.size()]) == col;
    if (ok) return true;
  } while (std::next_permutation(vs.begin() + 1, vs.end()));
  return false;
}

inline bool naive_cyclable(const EdgeColouring& c, const std::vector<Vertex>& vs) {
  if (vs.size() <= 1) return true;
  for (ColourId col : c.palette())
    if (naive_spanning(c, vs, col)) return true;
  return false;
}

/// Minimum cycle partition by recursion on the lowest uncovered vertex (n <= 8).
inline int naive_min_partition(const EdgeColouring& c) {
  const int n = c.n();
  std::vector<int> memo(std::size_t{1} << n, -1);
  auto rec = [&](auto&& self, unsigned left) -> int {
    if (!left) return 0;
    int& m = memo[left];
    if (m >= 0) return m;
    const int low = __builtin_ctz(left);
    const unsigned rest = left & ~(1u << low);
    m = n + 1;
    for (unsigned sub = rest;; sub = (sub - 1) & rest) {
      std::vector<Vertex> vs{low};
      for (int v = 0; v < n; ++v)
        if (sub >> v & 1u) vs.push_back(v);
      if (naive_cyclable(c, vs)) m = std::min(m, 1 + self(self, left & ~sub & ~(1u << low)));
      if (!sub) break;
    }
    return m;
  };
  return rec(rec, (1u << n) - 1);
}

inline int naive_independence(const Graph& g) {
  int best = 0;
  for (unsigned s = 0; s < (1u << g.n()); ++s) {
    bool ok = true;
    for (int u = 0; u < g.n() && ok; ++u)
      for (int v = u + 1; v < g.n() && ok; ++v)
        if ((s >> u & 1u) && (s >> v & 1u) && g.adjacent(u, v)) ok = false;
    if (ok) best = std::max(best, __builtin_popcount(s));
  }
  return best;
}

inline Graph random_graph(int n, int p_percent, Rng& rng) {
  Graph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.below(100) < static_cast<std::uint64_t>(p_percent)) g.add_edge(u, v);
  return g;
}

inline EdgeColouring random_colouring(int n, int colours, Rng& rng) {
  return EdgeColouring::from_function(n, [&](Vertex, Vertex) {
    return static_cast<ColourId>(rng.below(static_cast<std::uint64_t>(colours)));
  });
}

/// A random 2-local instance: n in [lo, hi], palette up to 5.
inline EdgeColouring random_two_local(std::uint64_t seed, int lo, int hi) {
  Rng rng(Seed{seed});
  const int n = rng.uniform_int(lo, hi), s = rng.uniform_int(1, 5);
  return gen_random_local(n, 2, s, Seed{mix_seed(seed, 99)});
}

}  // namespace testsupport
