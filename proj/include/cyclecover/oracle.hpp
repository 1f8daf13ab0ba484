#pragma once

// Exact exponential-time ground truth for small instances: Hamiltonicity of colour
// classes by subset dynamic programming, minimum monochromatic cycle partitions,
// two-cycle splits, longest monochromatic cycles and independence numbers.

#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cyclecover/core.hpp"
#include "cyclecover/graph.hpp"

namespace cyclecover {

inline constexpr int kOracleHardCap = 30;
inline constexpr int kOracleDefaultMaxN = 14;

/// Default cap, overridable with CYCLECOVER_ORACLE_MAX_N (clamped to the hard cap).
inline int default_oracle_max_n() {
  if (const char* env = std::getenv("CYCLECOVER_ORACLE_MAX_N")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 0) return static_cast<int>(std::min<long>(v, kOracleHardCap));
  }
  return kOracleDefaultMaxN;
}

struct OracleBudget {
  int max_n = default_oracle_max_n();
  std::optional<std::chrono::milliseconds> time_limit;
};

using Mask = std::uint64_t;

/// Vertex subset of a graph with at most kOracleHardCap vertices.
struct SubsetMask {
  Mask bits = 0;

  static SubsetMask of(std::span<const Vertex> vs) {
    SubsetMask s;
    for (Vertex v : vs) s.bits |= Mask{1} << v;
    return s;
  }
  static SubsetMask full(int n) { return {n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1}; }

  int size() const noexcept { return std::popcount(bits); }
  bool contains(Vertex v) const noexcept { return (bits >> v) & 1U; }

  std::vector<Vertex> vertices() const {
    std::vector<Vertex> out;
    for (Mask b = bits; b; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }
};

namespace detail {

inline Mask bit(int v) { return Mask{1} << v; }
inline int low_index(Mask m) { return std::countr_zero(m); }

class Deadline {
 public:
  explicit Deadline(const OracleBudget& budget) {
    if (budget.time_limit) end_ = std::chrono::steady_clock::now() + *budget.time_limit;
  }
  void tick() {
    if (!end_ || (++count_ & 0xFFFF) != 0) return;
    if (std::chrono::steady_clock::now() > *end_) fail(ErrorCode::BudgetExceeded, "oracle time limit reached");
  }

 private:
  std::optional<std::chrono::steady_clock::time_point> end_;
  std::uint64_t count_ = 0;
};

inline void check_size(int m, const OracleBudget& budget, const char* what) {
  const int cap = std::min(budget.max_n, kOracleHardCap);
  if (m > cap)
    fail(ErrorCode::BudgetExceeded,
         std::string(what) + ": " + std::to_string(m) + " vertices exceed oracle cap " + std::to_string(cap));
}

/// ends[S] = set of vertices v such that some path covering exactly S runs from min(S) to v.
inline std::vector<std::uint32_t> path_ends(std::span<const std::uint32_t> adj, int m, Deadline& deadline) {
  std::vector<std::uint32_t> ends(std::size_t{1} << m, 0);
  for (int v = 0; v < m; ++v) ends[bit(v)] = static_cast<std::uint32_t>(bit(v));
  const Mask full = (Mask{1} << m) - 1;
  for (Mask s = 1; s <= full; ++s) {
    std::uint32_t e = ends[s];
    if (!e) continue;
    deadline.tick();
    const Mask above_low = ~((bit(low_index(s)) << 1) - 1);
    const Mask free = full & ~s & above_low;
    for (; e; e &= e - 1) {
      const int v = std::countr_zero(e);
      for (Mask w = adj[v] & free; w; w &= w - 1) {
        const int x = std::countr_zero(w);
        ends[s | bit(x)] |= static_cast<std::uint32_t>(bit(x));
      }
    }
  }
  return ends;
}

inline bool spans_cycle(std::span<const std::uint32_t> ends, std::span<const std::uint32_t> adj, Mask s) {
  const int k = std::popcount(s);
  if (k <= 1) return true;
  const int low = low_index(s);
  if (k == 2) return (adj[low] & s) != 0;
  return (ends[s] & adj[low]) != 0;
}

/// Vertex order of a spanning cycle of s (local ids), starting at min(s); s must span one.
inline std::vector<Vertex> extract_cycle(std::span<const std::uint32_t> ends, std::span<const std::uint32_t> adj,
                                         Mask s) {
  std::vector<Vertex> order;
  const int k = std::popcount(s);
  const int low = low_index(s);
  if (k == 0) return order;
  if (k <= 2) return SubsetMask{s}.vertices();
  int v = std::countr_zero(ends[s] & adj[low]);
  Mask cur = s;
  order.push_back(v);
  while (std::popcount(cur) > 1) {
    const Mask prev = cur ^ bit(v);
    const std::uint32_t cand = ends[prev] & adj[v];
    const int u = std::countr_zero(cand);
    order.push_back(u);
    v = u;
    cur = prev;
  }
  std::reverse(order.begin(), order.end());
  return order;
}

/// Local adjacency (bit i = vertex vs[i]) of the edges of colour col among vs.
inline std::vector<std::uint32_t> local_colour_adj(const EdgeColouring& c, std::span<const Vertex> vs, ColourId col) {
  std::vector<std::uint32_t> adj(vs.size(), 0);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < vs.size(); ++j)
      if (i != j && c(vs[i], vs[j]) == col) adj[i] |= static_cast<std::uint32_t>(bit(static_cast<int>(j)));
  return adj;
}

template <typename Pred>
std::vector<std::uint32_t> local_adj_if(const EdgeColouring& c, Pred&& pred) {
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(c.n()), 0);
  for (Vertex u = 0; u < c.n(); ++u)
    for (Vertex v = 0; v < c.n(); ++v)
      if (u != v && pred(c(u, v))) adj[static_cast<std::size_t>(u)] |= static_cast<std::uint32_t>(bit(v));
  return adj;
}

inline std::vector<char> cyclable_flags(std::span<const std::uint32_t> adj, int m, Deadline& deadline) {
  const auto ends = path_ends(adj, m, deadline);
  std::vector<char> flags(std::size_t{1} << m, 0);
  for (Mask s = 0; s < (Mask{1} << m); ++s) flags[s] = spans_cycle(ends, adj, s);
  return flags;
}

inline std::vector<Vertex> to_global(const std::vector<Vertex>& local, std::span<const Vertex> vs) {
  std::vector<Vertex> out;
  out.reserve(local.size());
  for (Vertex v : local) out.push_back(vs[static_cast<std::size_t>(v)]);
  return out;
}

}  // namespace detail

/// Spanning cycle of exactly the vertices `s`, every edge coloured col; sizes 0 and 1 are trivially cyclable.
inline std::optional<Cycle> mono_spanning_cycle(const EdgeColouring& c, std::span<const Vertex> s, ColourId col,
                                                const OracleBudget& budget = {}) {
  detail::check_size(static_cast<int>(s.size()), budget, "mono_spanning_cycle");
  for (Vertex v : s) check_vertex(c, v);
  if (s.size() <= 1) return Cycle{{s.begin(), s.end()}, std::nullopt};
  const int m = static_cast<int>(s.size());
  const auto adj = detail::local_colour_adj(c, s, col);
  detail::Deadline deadline(budget);
  const auto ends = detail::path_ends(adj, m, deadline);
  const Mask full = (Mask{1} << m) - 1;
  if (!detail::spans_cycle(ends, adj, full)) return std::nullopt;
  return Cycle{detail::to_global(detail::extract_cycle(ends, adj, full), s), col};
}

inline std::optional<Cycle> mono_spanning_cycle(const EdgeColouring& c, SubsetMask s, ColourId col,
                                                const OracleBudget& budget = {}) {
  const auto vs = s.vertices();
  return mono_spanning_cycle(c, std::span<const Vertex>(vs), col, budget);
}

/// For every vertex subset of K_n, the palette colours (by palette index) whose class spans a cycle on it.
/// Subsets of size <= 1 get every bit set.
struct CyclableTable {
  int n = 0;
  std::vector<ColourId> palette;
  std::vector<std::uint64_t> colours;

  std::uint64_t at(Mask s) const { return colours[s]; }
};

inline CyclableTable build_cyclable_table(const EdgeColouring& c, const OracleBudget& budget = {}) {
  detail::check_size(c.n(), budget, "cyclable table");
  require(c.palette().size() <= 64, ErrorCode::BudgetExceeded, "more than 64 colours");
  CyclableTable t;
  t.n = c.n();
  t.palette = c.palette();
  const std::size_t size = std::size_t{1} << c.n();
  t.colours.assign(size, 0);
  for (Mask s = 0; s < size; ++s)
    if (std::popcount(s) <= 1) t.colours[s] = ~std::uint64_t{0};
  detail::Deadline deadline(budget);
  for (std::size_t k = 0; k < t.palette.size(); ++k) {
    const ColourId col = t.palette[k];
    const auto adj = detail::local_adj_if(c, [col](ColourId x) { return x == col; });
    const auto ends = detail::path_ends(adj, c.n(), deadline);
    for (Mask s = 0; s < size; ++s)
      if (std::popcount(s) >= 2 && detail::spans_cycle(ends, adj, s)) t.colours[s] |= std::uint64_t{1} << k;
  }
  return t;
}

namespace detail {

inline Cycle witness_cycle(const EdgeColouring& c, const CyclableTable& t, Mask s) {
  const auto vs = SubsetMask{s}.vertices();
  if (vs.size() <= 1) return Cycle{vs, std::nullopt};
  const ColourId col = t.palette[static_cast<std::size_t>(std::countr_zero(t.at(s)))];
  OracleBudget unlimited;
  unlimited.max_n = kOracleHardCap;
  return *mono_spanning_cycle(c, std::span<const Vertex>(vs), col, unlimited);
}

}  // namespace detail

struct MinPartition {
  int count = 0;
  CyclePartition witness;
};

/// Exact minimum number of nonempty monochromatic cycles partitioning V.
/// Among optimal witnesses the piece containing the lowest uncovered vertex is the smallest mask.
inline MinPartition min_cycle_partition(const EdgeColouring& c, const OracleBudget& budget = {}) {
  detail::check_size(c.n(), budget, "min_cycle_partition");
  MinPartition out;
  if (c.n() == 0) return out;
  const CyclableTable t = build_cyclable_table(c, budget);
  const std::size_t size = std::size_t{1} << c.n();
  std::vector<std::uint8_t> best(size, 0);
  std::vector<Mask> choice(size, 0);
  detail::Deadline deadline(budget);
  for (Mask s = 1; s < size; ++s) {
    const Mask low = s & (~s + 1);
    const Mask rest = s ^ low;
    std::uint8_t val = 0xFF;
    Mask arg = 0;
    for (Mask sub = rest;; sub = (sub - 1) & rest) {
      deadline.tick();
      const Mask piece = sub | low;
      if (t.at(piece)) {
        const std::uint8_t cand = static_cast<std::uint8_t>(1 + best[s ^ piece]);
        if (cand < val || (cand == val && piece < arg)) {
          val = cand;
          arg = piece;
        }
      }
      if (sub == 0) break;
    }
    best[s] = val;
    choice[s] = arg;
  }
  Mask s = size - 1;
  out.count = best[s];
  while (s) {
    out.witness.cycles.push_back(detail::witness_cycle(c, t, choice[s]));
    s ^= choice[s];
  }
  return out;
}

/// Two disjoint cycles covering V, the first in colour alpha and the second in beta. With
/// beta_is_merged every non-alpha edge counts as beta; otherwise beta is the other palette colour
/// (the palette may then hold at most two colours). Empty and singleton cycles are allowed.
/// The second cycle's colour is read from its first edge; callers check monochromaticity.
/// A cover by one nonempty cycle is preferred; among the rest the smallest alpha mask wins.
inline std::optional<std::pair<Cycle, Cycle>> bt_two_cycles(const EdgeColouring& c, ColourId alpha,
                                                           bool beta_is_merged, const OracleBudget& budget = {}) {
  detail::check_size(c.n(), budget, "bt_two_cycles");
  if (!beta_is_merged) {
    require(c.palette().size() <= 2, ErrorCode::TooManyColours, "literal beta needs at most two colours");
  }
  const auto adj_a = detail::local_adj_if(c, [alpha](ColourId x) { return x == alpha; });
  const auto adj_b = detail::local_adj_if(c, [alpha](ColourId x) { return x != alpha; });
  detail::Deadline deadline(budget);
  const int n = c.n();
  const auto ends_a = detail::path_ends(adj_a, n, deadline);
  const auto ends_b = detail::path_ends(adj_b, n, deadline);
  const Mask full = SubsetMask::full(n).bits;
  // a single nonempty cycle (all alpha, then all beta) wins; otherwise the smallest alpha mask
  std::vector<Mask> order{full, 0};
  for (Mask s = 1; s < full; ++s) order.push_back(s);
  for (Mask s : order) {
    const Mask rest = full ^ s;
    if (!detail::spans_cycle(ends_a, adj_a, s) || !detail::spans_cycle(ends_b, adj_b, rest)) continue;
    Cycle first{detail::extract_cycle(ends_a, adj_a, s), std::nullopt};
    if (first.size() >= 2) first.colour = alpha;
    Cycle second = make_cycle(c, detail::extract_cycle(ends_b, adj_b, rest));
    return std::make_pair(std::move(first), std::move(second));
  }
  return std::nullopt;
}

/// Two disjoint monochromatic cycles of different colours (colourless pieces exempt) covering V.
inline std::optional<std::pair<Cycle, Cycle>> two_distinct_colour_cycles(const EdgeColouring& c,
                                                                        const OracleBudget& budget = {}) {
  detail::check_size(c.n(), budget, "two_distinct_colour_cycles");
  if (c.n() == 0) return std::make_pair(Cycle{}, Cycle{});
  const CyclableTable t = build_cyclable_table(c, budget);
  const Mask full = SubsetMask::full(c.n()).bits;
  for (Mask s = 0; s <= full; ++s) {
    const Mask rest = full ^ s;
    const std::uint64_t a = t.at(s), b = t.at(rest);
    if (!a || !b) continue;
    const bool a_free = std::popcount(s) <= 1, b_free = std::popcount(rest) <= 1;
    if (a_free || b_free) return std::make_pair(detail::witness_cycle(c, t, s), detail::witness_cycle(c, t, rest));
    const std::uint64_t both = a | b;
    if (std::popcount(both) < 2) continue;
    // pick colours: lowest for the first piece, lowest different one for the second
    const int ka = std::countr_zero(a);
    const std::uint64_t b_other = b & ~(std::uint64_t{1} << ka);
    int kb;
    int ka_final = ka;
    if (b_other) {
      kb = std::countr_zero(b_other);
    } else {
      kb = std::countr_zero(b);
      ka_final = std::countr_zero(a & ~(std::uint64_t{1} << kb));
    }
    const auto sv = SubsetMask{s}.vertices(), rv = SubsetMask{rest}.vertices();
    OracleBudget unlimited;
    unlimited.max_n = kOracleHardCap;
    return std::make_pair(*mono_spanning_cycle(c, std::span<const Vertex>(sv), t.palette[ka_final], unlimited),
                          *mono_spanning_cycle(c, std::span<const Vertex>(rv), t.palette[kb], unlimited));
  }
  return std::nullopt;
}

/// Longest monochromatic cycle (a single edge counts as length 2).
inline std::pair<int, Cycle> longest_mono_cycle(const EdgeColouring& c, const OracleBudget& budget = {}) {
  detail::check_size(c.n(), budget, "longest_mono_cycle");
  if (c.n() == 0) return {0, Cycle{}};
  if (c.n() == 1) return {1, Cycle::singleton(0)};
  const CyclableTable t = build_cyclable_table(c, budget);
  Mask best = 0;
  for (Mask s = 0; s < t.colours.size(); ++s)
    if (std::popcount(s) > std::popcount(best) && t.at(s)) best = s;
  return {std::popcount(best), detail::witness_cycle(c, t, best)};
}

/// Longest cycle of a graph (length 1 for a single vertex, 2 for an edge), as a vertex order.
inline std::vector<Vertex> longest_cycle(const Graph& g, const OracleBudget& budget = {}) {
  detail::check_size(g.n(), budget, "longest_cycle");
  const int n = g.n();
  if (n == 0) return {};
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (g.adjacent(u, v)) adj[static_cast<std::size_t>(u)] |= static_cast<std::uint32_t>(detail::bit(v));
  detail::Deadline deadline(budget);
  const auto ends = detail::path_ends(adj, n, deadline);
  Mask best = 1;
  for (Mask s = 1; s < (Mask{1} << n); ++s)
    if (std::popcount(s) > std::popcount(best) && detail::spans_cycle(ends, adj, s)) best = s;
  return detail::extract_cycle(ends, adj, best);
}

/// Exact independence number.
inline int independence_number(const Graph& g, const OracleBudget& budget = {}) {
  detail::check_size(g.n(), budget, "independence_number");
  const auto adj = g.masks();
  detail::Deadline deadline(budget);
  auto solve = [&](auto&& self, Mask p) -> int {
    if (!p) return 0;
    deadline.tick();
    const int v = std::countr_zero(p);
    const Mask without = p & ~detail::bit(v);
    if (!(adj[static_cast<std::size_t>(v)] & p)) return 1 + self(self, without);
    const int take = 1 + self(self, without & ~adj[static_cast<std::size_t>(v)]);
    const int skip = self(self, without);
    return std::max(take, skip);
  };
  return solve(solve, SubsetMask::full(g.n()).bits);
}

/// True iff at least s cycles are needed for c and for every single-vertex deletion of c.
inline bool robustness_check(const EdgeColouring& c, int s, const OracleBudget& budget = {}) {
  require(c.n() >= 1, ErrorCode::EmptyGraph, "robustness of the empty graph");
  detail::check_size(c.n(), budget, "robustness_check");
  if (min_cycle_partition(c, budget).count < s) return false;
  for (Vertex x = 0; x < c.n(); ++x) {
    VertexSet keep;
    for (Vertex v = 0; v < c.n(); ++v)
      if (v != x) keep.push_back(v);
    if (min_cycle_partition(restrict_to(c, keep), budget).count < s) return false;
  }
  return true;
}

}  // namespace cyclecover
