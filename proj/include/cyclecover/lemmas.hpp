#pragma once

// Constructive building blocks used by the solvers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cyclecover/core.hpp"
#include "cyclecover/graph.hpp"
#include "cyclecover/oracle.hpp"

namespace cyclecover {

// ---------------------------------------------------------------------------
// Pósa: a graph with independence number alpha splits into at most alpha cycles.

/// Repeatedly grows a path from the lowest remaining vertex until its front x has no neighbour off
/// the path, then cuts the cycle from x to its furthest path neighbour. Every neighbour of x is
/// removed with the cycle, so the independence number of the rest drops by one each round.
/// Cycles are returned colourless (single vertices and edges included).
inline CyclePartition posa_cycle_partition(const Graph& g, std::optional<int> alpha_hint = std::nullopt,
                                           const OracleBudget& budget = {}) {
  CyclePartition out;
  std::vector<char> alive(static_cast<std::size_t>(g.n()), 1);
  std::vector<char> on_path(static_cast<std::size_t>(g.n()), 0);
  // path vertices before the cut go back to the pool, so always restart from the lowest survivor
  for (Vertex start = 0; start < g.n();) {
    if (!alive[static_cast<std::size_t>(start)]) {
      ++start;
      continue;
    }
    std::vector<Vertex> path{start};  // path.back() is the growing front
    on_path[static_cast<std::size_t>(start)] = 1;
    for (bool grown = true; grown;) {
      grown = false;
      for (Vertex y = 0; y < g.n(); ++y) {
        if (alive[static_cast<std::size_t>(y)] && !on_path[static_cast<std::size_t>(y)] && g.adjacent(path.back(), y)) {
          path.push_back(y);
          on_path[static_cast<std::size_t>(y)] = 1;
          grown = true;
          break;
        }
      }
    }
    const Vertex front = path.back();
    std::size_t furthest = path.size() - 1;
    for (std::size_t i = 0; i < path.size(); ++i)
      if (g.adjacent(front, path[i])) {
        furthest = i;
        break;
      }
    std::vector<Vertex> cyc(path.begin() + static_cast<std::ptrdiff_t>(furthest), path.end());
    for (Vertex v : path) on_path[static_cast<std::size_t>(v)] = 0;
    for (Vertex v : cyc) alive[static_cast<std::size_t>(v)] = 0;
    out.cycles.push_back(Cycle{std::move(cyc), std::nullopt});
  }
  std::optional<int> alpha = alpha_hint;
  if (!alpha && g.n() <= std::min(budget.max_n, kOracleHardCap)) alpha = independence_number(g, budget);
  if (alpha && static_cast<int>(out.cycles.size()) > *alpha)
    throw std::logic_error("posa_cycle_partition produced more cycles than the independence number");
  return out;
}

// ---------------------------------------------------------------------------
// Erdős–Gallai: at least l*n/2 edges force a cycle of length >= l.

namespace detail {

/// Polynomial attempt: peel low-degree vertices, then close a maximal path at its furthest back-edge.
inline std::vector<Vertex> long_cycle_greedy(const Graph& g, int l) {
  std::vector<char> alive(static_cast<std::size_t>(g.n()), 1);
  std::vector<int> deg(static_cast<std::size_t>(g.n()));
  for (Vertex v = 0; v < g.n(); ++v) deg[static_cast<std::size_t>(v)] = g.degree(v);
  for (bool peeled = true; peeled;) {
    peeled = false;
    for (Vertex v = 0; v < g.n(); ++v) {
      if (alive[static_cast<std::size_t>(v)] && 2 * deg[static_cast<std::size_t>(v)] <= l) {
        alive[static_cast<std::size_t>(v)] = 0;
        for (Vertex u = 0; u < g.n(); ++u)
          if (g.adjacent(u, v)) --deg[static_cast<std::size_t>(u)];
        peeled = true;
      }
    }
  }
  std::vector<Vertex> best;
  for (Vertex start = 0; start < g.n(); ++start) {
    if (!alive[static_cast<std::size_t>(start)]) continue;
    std::vector<Vertex> path{start};
    std::vector<char> on(static_cast<std::size_t>(g.n()), 0);
    on[static_cast<std::size_t>(start)] = 1;
    for (bool grown = true; grown;) {
      grown = false;
      for (Vertex y = 0; y < g.n(); ++y)
        if (alive[static_cast<std::size_t>(y)] && !on[static_cast<std::size_t>(y)] && g.adjacent(path.back(), y)) {
          path.push_back(y);
          on[static_cast<std::size_t>(y)] = 1;
          grown = true;
          break;
        }
    }
    for (std::size_t i = 0; i + 2 < path.size(); ++i)
      if (g.adjacent(path.back(), path[i])) {
        if (path.size() - i > best.size()) best.assign(path.begin() + static_cast<std::ptrdiff_t>(i), path.end());
        break;
      }
  }
  return best;
}

}  // namespace detail

/// A cycle of g of length >= l; exact (longest cycle) when g fits the oracle budget.
inline Cycle erdos_gallai_long_cycle(const Graph& g, int l, const OracleBudget& budget = {}) {
  require(l >= 2, ErrorCode::PreconditionViolated, "need l >= 2");
  require(2 * g.edge_count() >= static_cast<long>(l) * g.n(), ErrorCode::PreconditionViolated,
          "graph has fewer than l*n/2 edges");
  std::vector<Vertex> cyc;
  if (g.n() <= std::min(budget.max_n, kOracleHardCap)) {
    cyc = longest_cycle(g, budget);
  } else {
    cyc = detail::long_cycle_greedy(g, l);
    if (static_cast<int>(cyc.size()) < l)
      fail(ErrorCode::BudgetExceeded, "greedy search found no long cycle and the graph exceeds the oracle cap");
  }
  if (static_cast<int>(cyc.size()) < l) throw std::logic_error("dense graph without a long cycle");
  return Cycle{std::move(cyc), std::nullopt};
}

// ---------------------------------------------------------------------------

/// ceil((4 c r)^(1/eps)).
inline std::int64_t local_ramsey_upper_bound(Rational c_density, Rational eps, int r) {
  require(c_density > 0 && eps > 0 && eps <= 1 && r >= 1, ErrorCode::BadParams,
          "need c > 0, 0 < eps <= 1, r >= 1");
  using boost::multiprecision::cpp_int;
  const Rational base = c_density * Rational(4 * r);
  // value^p = base^q with eps = p/q, so m >= value iff m^p * den^q >= num^q
  const auto p = static_cast<unsigned>(eps.numerator());
  const auto q = static_cast<unsigned>(eps.denominator());
  const cpp_int num = boost::multiprecision::pow(cpp_int(base.numerator()), q);
  const cpp_int den = boost::multiprecision::pow(cpp_int(base.denominator()), q);
  auto ok = [&](std::int64_t m) { return boost::multiprecision::pow(cpp_int(m), p) * den >= num; };
  const long double approx =
      std::pow(static_cast<long double>(base.numerator()) / static_cast<long double>(base.denominator()),
               static_cast<long double>(q) / static_cast<long double>(p));
  require(approx < 9e18L, ErrorCode::BadParams, "bound does not fit in 64 bits");
  auto m = static_cast<std::int64_t>(std::ceil(approx));
  while (m > 0 && ok(m - 1)) --m;
  while (!ok(m)) ++m;
  return m;
}

// ---------------------------------------------------------------------------
// Two monochromatic paths of different colours.

struct PathPair {
  ColouredPath p_first;
  ColouredPath p_second;
};

/// Splits `order` into a `first`-coloured path and a `second`-coloured path. Every edge among the
/// vertices must carry one of the two colours. Vertices are inserted in the given order; the
/// first-colour path is extended whenever both extensions are possible.
inline PathPair gyarfas_paths(const EdgeColouring& c, std::span<const Vertex> order, ColourId first, ColourId second) {
  std::vector<Vertex> red, blue;
  for (Vertex v : order) {
    if (red.empty()) {
      red.push_back(v);
    } else if (c(v, red.back()) == first) {
      red.push_back(v);
    } else if (blue.empty()) {
      blue.push_back(v);
    } else if (c(v, blue.back()) == second) {
      blue.push_back(v);
    } else {
      // v–red.back() is second, v–blue.back() is first
      const Vertex x = red.back(), y = blue.back();
      if (c(x, y) == first) {
        blue.pop_back();
        red.push_back(y);
        red.push_back(v);
      } else {
        red.pop_back();
        blue.push_back(x);
        blue.push_back(v);
      }
    }
  }
  // a lone vertex joins the other path when it can
  if (blue.size() == 1 && !red.empty() && c(blue[0], red.back()) == first) {
    red.push_back(blue[0]);
    blue.clear();
  } else if (red.size() == 1 && !blue.empty() && c(red[0], blue.back()) == second) {
    blue.push_back(red[0]);
    red.clear();
  }
  return {make_path(std::move(red), first), make_path(std::move(blue), second)};
}

/// Whole-graph version; the palette must have at most two colours. With a single colour x the
/// pair is (x, x + 1); explicit colours may be passed to fix the roles.
inline PathPair gyarfas_two_paths(const EdgeColouring& c,
                                  std::optional<std::pair<ColourId, ColourId>> colours = std::nullopt) {
  require(c.palette().size() <= 2, ErrorCode::TooManyColours, "palette has more than two colours");
  if (!colours) {
    const auto& pal = c.palette();
    if (pal.empty())
      colours = {0, 1};
    else if (pal.size() == 1)
      colours = {pal[0], pal[0] + 1};
    else
      colours = {pal[0], pal[1]};
  }
  for (ColourId col : c.palette())
    require(col == colours->first || col == colours->second, ErrorCode::TooManyColours,
            "palette colour outside the requested pair");
  const auto order = all_vertices(c.n());
  return gyarfas_paths(c, order, colours->first, colours->second);
}

// ---------------------------------------------------------------------------
// Covering a small side B of an r-locally coloured bipartite graph with <= r^2 cycles.

/// Bookkeeping of the common-neighbourhood shrinking: a_sets[i] is the intersection of the
/// colour-c_j neighbourhoods of b_1..b_{i+1}.
struct ShrinkState {
  std::vector<VertexSet> a_sets;
  std::vector<Vertex> b_reps;
  std::vector<ColourId> colours;
  std::vector<VertexSet> b_partition;  // parallel to colours
  VertexSet a_prime;
};

struct PatchResult {
  std::vector<Cycle> cycles;
  VertexSet a_used;
  ShrinkState state;
  /// G_j for each chain colour: vertex i of aux_graphs[j] is aux_vertices[j][i].
  std::vector<VertexSet> aux_vertices;
  std::vector<Graph> aux_graphs;
  std::vector<int> aux_alpha;  // exact independence numbers, -1 when above the oracle cap
};

namespace detail {

/// r^e, saturating.
inline std::int64_t int_pow_sat(std::int64_t r, int e) {
  std::int64_t out = 1;
  for (int i = 0; i < e; ++i) {
    if (out > (std::int64_t{1} << 62) / std::max<std::int64_t>(r, 1)) return std::int64_t{1} << 62;
    out *= r;
  }
  return out;
}

inline std::int64_t count_in(const EdgeColouring& c, Vertex b, ColourId col, const VertexSet& pool) {
  std::int64_t k = 0;
  for (Vertex a : pool) k += c(a, b) == col;
  return k;
}

inline std::vector<ColourId> bip_colours_at(const EdgeColouring& c, Vertex x, const VertexSet& other) {
  std::vector<ColourId> out;
  for (Vertex y : other) out.push_back(c(x, y));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

inline PatchResult patch_bipartite(const EdgeColouring& c, VertexSet a, VertexSet b, int r,
                                   const OracleBudget& budget = {}) {
  a = sorted_set(std::move(a));
  b = sorted_set(std::move(b));
  require(r >= 1, ErrorCode::PreconditionViolated, "r must be >= 1");
  for (Vertex v : a) check_vertex(c, v);
  for (Vertex v : b) check_vertex(c, v);
  VertexSet overlap;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(overlap));
  require(overlap.empty(), ErrorCode::PreconditionViolated, "A and B intersect");
  PatchResult res;
  if (b.empty()) return res;
  const auto a_size = static_cast<std::int64_t>(a.size());
  const auto b_size = static_cast<std::int64_t>(b.size());
  const std::int64_t ratio = detail::int_pow_sat(r, r + 3);
  require(b_size * ratio <= a_size, ErrorCode::PreconditionViolated, "|B| exceeds |A|/r^(r+3)");
  for (Vertex x : a)
    require(static_cast<int>(detail::bip_colours_at(c, x, b).size()) <= r, ErrorCode::PreconditionViolated,
            "bipartite colouring is not r-local at " + std::to_string(x));
  for (Vertex x : b)
    require(static_cast<int>(detail::bip_colours_at(c, x, a).size()) <= r, ErrorCode::PreconditionViolated,
            "bipartite colouring is not r-local at " + std::to_string(x));

  ShrinkState& st = res.state;
  VertexSet current = a;
  auto best_colour = [&](Vertex x, const VertexSet& pool, const std::vector<ColourId>& exclude) {
    std::optional<ColourId> best;
    std::int64_t best_count = -1;
    for (ColourId col : detail::bip_colours_at(c, x, pool)) {
      if (std::find(exclude.begin(), exclude.end(), col) != exclude.end()) continue;
      const auto k = detail::count_in(c, x, col, pool);
      if (k > best_count) {
        best = col;
        best_count = k;
      }
    }
    return std::make_pair(best, best_count);
  };
  auto shrink = [&](Vertex x, ColourId col) {
    VertexSet next;
    for (Vertex y : current)
      if (c(x, y) == col) next.push_back(y);
    current = std::move(next);
    st.b_reps.push_back(x);
    st.colours.push_back(col);
    st.a_sets.push_back(current);
    if (detail::int_pow_sat(r, static_cast<int>(st.colours.size())) * static_cast<std::int64_t>(current.size()) < a_size)
      throw std::logic_error("shrinking chain fell below |A|/r^i");
  };

  {
    const auto [col, k] = best_colour(b.front(), current, {});
    if (!col || k * r < a_size) throw std::logic_error("no heavy colour at b_1");
    shrink(b.front(), *col);
  }
  std::vector<std::optional<std::size_t>> assigned(b.size());
  for (;;) {
    const auto pool_size = static_cast<std::int64_t>(current.size());
    std::optional<std::size_t> failing;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const auto rep = std::find(st.b_reps.begin(), st.b_reps.end(), b[i]);
      if (rep != st.b_reps.end()) {
        assigned[i] = static_cast<std::size_t>(rep - st.b_reps.begin());
        continue;
      }
      assigned[i].reset();
      for (std::size_t j = 0; j < st.colours.size(); ++j)
        if (detail::count_in(c, b[i], st.colours[j], current) * r >= pool_size) {
          assigned[i] = j;
          break;
        }
      if (!assigned[i] && !failing) failing = i;
    }
    if (!failing) break;
    if (static_cast<int>(st.colours.size()) >= r) throw std::logic_error("chain reached r colours with an unassigned vertex");
    const Vertex x = b[*failing];
    const auto [col, k] = best_colour(x, current, st.colours);
    if (!col || k * r < pool_size) throw std::logic_error("no new heavy colour for an unassigned vertex");
    shrink(x, *col);
  }
  st.a_prime = current;
  st.b_partition.assign(st.colours.size(), {});
  for (std::size_t i = 0; i < b.size(); ++i) st.b_partition[*assigned[i]].push_back(b[i]);

  const auto ap = static_cast<std::int64_t>(st.a_prime.size());
  const std::int64_t r3 = static_cast<std::int64_t>(r) * r * r;
  std::vector<char> used(static_cast<std::size_t>(c.n()), 0);
  auto common = [&](Vertex x, Vertex y, ColourId col) {
    VertexSet out;
    for (Vertex z : st.a_prime)
      if (c(x, z) == col && c(y, z) == col) out.push_back(z);
    return out;
  };
  auto take_common = [&](Vertex x, Vertex y, ColourId col) {
    for (Vertex z : common(x, y, col))
      if (!used[static_cast<std::size_t>(z)]) {
        used[static_cast<std::size_t>(z)] = 1;
        res.a_used.push_back(z);
        return z;
      }
    throw std::logic_error("ran out of common neighbours while realising a cycle");
  };

  for (std::size_t j = 0; j < st.colours.size(); ++j) {
    const ColourId col = st.colours[j];
    const VertexSet& part = st.b_partition[j];
    Graph gj(static_cast<int>(part.size()));
    for (std::size_t x = 0; x < part.size(); ++x)
      for (std::size_t y = x + 1; y < part.size(); ++y)
        if (static_cast<std::int64_t>(common(part[x], part[y], col).size()) * r3 >= ap)
          gj.add_edge(static_cast<Vertex>(x), static_cast<Vertex>(y));
    int alpha = -1;
    if (gj.n() <= std::min(budget.max_n, kOracleHardCap)) {
      alpha = independence_number(gj, budget);
      if (alpha > r) throw std::logic_error("auxiliary graph has an independent set of size r+1");
    }
    const CyclePartition pieces = posa_cycle_partition(gj, alpha >= 0 ? std::optional<int>(alpha) : std::optional<int>(r), budget);
    for (const Cycle& piece : pieces.cycles) {
      std::vector<Vertex> xs;
      for (Vertex local : piece.vertices) xs.push_back(part[static_cast<std::size_t>(local)]);
      if (xs.size() == 1) {
        res.cycles.push_back(Cycle::singleton(xs[0]));
        continue;
      }
      std::vector<Vertex> walk;
      if (xs.size() == 2) {
        walk = {xs[0], take_common(xs[0], xs[1], col), xs[1], take_common(xs[0], xs[1], col)};
      } else {
        for (std::size_t i = 0; i < xs.size(); ++i) {
          walk.push_back(xs[i]);
          walk.push_back(take_common(xs[i], xs[(i + 1) % xs.size()], col));
        }
      }
      res.cycles.push_back(Cycle{std::move(walk), col});
    }
    res.aux_vertices.push_back(part);
    res.aux_graphs.push_back(std::move(gj));
    res.aux_alpha.push_back(alpha);
  }
  std::sort(res.a_used.begin(), res.a_used.end());
  if (static_cast<std::int64_t>(res.cycles.size()) > static_cast<std::int64_t>(r) * r)
    throw std::logic_error("patching used more than r^2 cycles");
  return res;
}

// ---------------------------------------------------------------------------
// Path merging in complete bipartite colour classes.

namespace detail {

inline bool all_cross(const EdgeColouring& c, const VertexSet& x, const VertexSet& y, ColourId col) {
  for (Vertex u : x)
    for (Vertex v : y)
      if (c(u, v) != col) return false;
  return true;
}

inline bool path_inside(const EdgeColouring& c, const ColouredPath& p, const VertexSet& host, ColourId col) {
  for (Vertex v : p.vertices)
    if (!std::binary_search(host.begin(), host.end(), v)) return false;
  if (!is_valid_path(c, p)) return false;
  return p.size() <= 1 || p.colour == col;
}

inline void check_disjoint(std::initializer_list<const VertexSet*> sets) {
  std::vector<Vertex> all;
  for (const auto* s : sets) all.insert(all.end(), s->begin(), s->end());
  std::sort(all.begin(), all.end());
  require(std::adjacent_find(all.begin(), all.end()) == all.end(), ErrorCode::PreconditionViolated,
          "vertex sets are not disjoint");
}

}  // namespace detail

/// Spanning cycle of a ∪ b in colour col, where every a–b edge has colour col, from nonempty
/// col-paths p_a ⊆ a and p_b ⊆ b with |b - p_b| <= |a - p_a| <= |b| - 1.
/// Walk p_a, then alternate b/a (b-vertices off p_b first, then p_b in path order) until a is
/// exhausted, and close through the unused tail of p_b.
inline Cycle merge_paths_bip(const EdgeColouring& c, ColourId col, VertexSet a, VertexSet b, const ColouredPath& p_a,
                             const ColouredPath& p_b) {
  a = sorted_set(std::move(a));
  b = sorted_set(std::move(b));
  for (Vertex v : a) check_vertex(c, v);
  for (Vertex v : b) check_vertex(c, v);
  detail::check_disjoint({&a, &b});
  require(!p_a.empty() && !p_b.empty(), ErrorCode::PreconditionViolated, "paths must be nonempty");
  require(detail::path_inside(c, p_a, a, col) && detail::path_inside(c, p_b, b, col), ErrorCode::PreconditionViolated,
          "paths must be col-paths inside their sides");
  require(detail::all_cross(c, a, b, col), ErrorCode::PreconditionViolated, "a–b edges are not all of the colour");
  const auto rest_a = static_cast<long>(a.size() - p_a.size());
  const auto rest_b = static_cast<long>(b.size() - p_b.size());
  require(rest_b <= rest_a && rest_a <= static_cast<long>(b.size()) - 1, ErrorCode::PreconditionViolated,
          "need |b - p_b| <= |a - p_a| <= |b| - 1");

  const VertexSet a_off = set_minus(a, sorted_set(p_a.vertices));
  const VertexSet b_off = set_minus(b, sorted_set(p_b.vertices));
  std::vector<Vertex> walk = p_a.vertices;
  std::size_t next_b_off = 0, next_pb = 0;
  for (Vertex x : a_off) {
    if (next_b_off < b_off.size())
      walk.push_back(b_off[next_b_off++]);
    else
      walk.push_back(p_b.vertices[next_pb++]);
    walk.push_back(x);
  }
  for (std::size_t i = next_pb; i < p_b.size(); ++i) walk.push_back(p_b.vertices[i]);
  Cycle out{std::move(walk), col};
  if (out.size() <= 1) out.colour.reset();
  if (out.size() != a.size() + b.size() || !is_valid_cycle(c, out))
    throw std::logic_error("merge_paths_bip built an invalid cycle");
  return out;
}

/// Two cycles, of colours col1 and col2, partitioning a1 ∪ a2 ∪ b, given that every a_i–b edge has
/// colour col_i, p_ai is a nonempty col_i-path in a_i, p_b1 and p_b2 are col_1/col_2 paths
/// partitioning b, and |a1 - p_a1| + |a2 - p_a2| + 2 <= |b|.
inline std::pair<Cycle, Cycle> merge_paths_tri(const EdgeColouring& c, ColourId col1, ColourId col2, VertexSet a1,
                                               VertexSet a2, VertexSet b, const ColouredPath& p_a1,
                                               const ColouredPath& p_a2, ColouredPath p_b1, ColouredPath p_b2) {
  a1 = sorted_set(std::move(a1));
  a2 = sorted_set(std::move(a2));
  b = sorted_set(std::move(b));
  require(col1 != col2, ErrorCode::PreconditionViolated, "the two colours must differ");
  for (const auto* s : {&a1, &a2, &b})
    for (Vertex v : *s) check_vertex(c, v);
  detail::check_disjoint({&a1, &a2, &b});
  require(!p_a1.empty() && !p_a2.empty(), ErrorCode::PreconditionViolated, "a-paths must be nonempty");
  require(detail::path_inside(c, p_a1, a1, col1) && detail::path_inside(c, p_a2, a2, col2) &&
              detail::path_inside(c, p_b1, b, col1) && detail::path_inside(c, p_b2, b, col2),
          ErrorCode::PreconditionViolated, "paths must be of the right colour inside their sets");
  require(detail::all_cross(c, a1, b, col1) && detail::all_cross(c, a2, b, col2), ErrorCode::PreconditionViolated,
          "a_i–b edges must all have colour i");
  {
    std::vector<Vertex> joined = p_b1.vertices;
    joined.insert(joined.end(), p_b2.vertices.begin(), p_b2.vertices.end());
    require(sorted_set(joined) == b && joined.size() == b.size(), ErrorCode::PreconditionViolated,
            "b-paths must partition b");  // (a)
  }
  const std::array<long, 2> deficit{static_cast<long>(a1.size() - p_a1.size()),
                                    static_cast<long>(a2.size() - p_a2.size())};
  const auto nb = static_cast<long>(b.size());
  require(deficit[0] + deficit[1] + 2 <= nb, ErrorCode::PreconditionViolated,
          "need |a1 - p_a1| + |a2 - p_a2| + 2 <= |b|");  // (b)

  // make both b-paths nonempty by moving an end vertex across
  std::array<ColouredPath, 2> pb{std::move(p_b1), std::move(p_b2)};
  const std::array<ColourId, 2> cols{col1, col2};
  for (int i = 0; i < 2; ++i) {
    if (!pb[static_cast<std::size_t>(i)].empty()) continue;
    auto& donor = pb[static_cast<std::size_t>(1 - i)].vertices;
    pb[static_cast<std::size_t>(i)] = make_path({donor.back()}, cols[static_cast<std::size_t>(i)]);
    donor.pop_back();
    pb[static_cast<std::size_t>(1 - i)] = make_path(donor, cols[static_cast<std::size_t>(1 - i)]);
  }

  // P_i: prefix of pb[i] of order min(|pb[i]|, |b| - deficit[other] - 1)
  std::array<std::size_t, 2> order{};
  for (int i = 0; i < 2; ++i)
    order[static_cast<std::size_t>(i)] = static_cast<std::size_t>(
        std::min<long>(static_cast<long>(pb[static_cast<std::size_t>(i)].size()), nb - deficit[static_cast<std::size_t>(1 - i)] - 1));
  // `whole` keeps its full path; `cut` gets B_cut = V(P_cut)
  const std::size_t whole = order[1] == pb[1].size() ? 1 : 0;
  const std::size_t cut = 1 - whole;
  if (order[whole] != pb[whole].size()) throw std::logic_error("neither subpath equals its full path");
  ColouredPath p_cut = make_path({pb[cut].vertices.begin(), pb[cut].vertices.begin() + static_cast<std::ptrdiff_t>(order[cut])}, cols[cut]);
  if (static_cast<long>(p_cut.size()) < deficit[cut] + 1) throw std::logic_error("|P_1| >= |A_1 - P_A1| + 1 violated");
  const VertexSet b_cut = sorted_set(p_cut.vertices);
  const VertexSet b_whole = set_minus(b, b_cut);

  const std::array<const VertexSet*, 2> as{&a1, &a2};
  const std::array<const ColouredPath*, 2> pas{&p_a1, &p_a2};
  std::array<Cycle, 2> out;
  out[cut] = merge_paths_bip(c, cols[cut], *as[cut], b_cut, *pas[cut], p_cut);
  out[whole] = merge_paths_bip(c, cols[whole], *as[whole], b_whole, *pas[whole], pb[whole]);
  return {std::move(out[0]), std::move(out[1])};
}

// ---------------------------------------------------------------------------
// Two-cycle covers with one colour class merged.

namespace detail {

inline std::pair<Cycle, Cycle> merged_two_cycles(const EdgeColouring& c, ColourId alpha, const OracleBudget& budget) {
  auto split = bt_two_cycles(c, alpha, true, budget);
  if (!split) throw std::logic_error("exact search found no alpha/beta two-cycle split");
  auto& [first, second] = *split;
  if (!is_valid_cycle(c, second)) throw std::logic_error("merged beta cycle is not monochromatic");
  if (second.colour == alpha) throw std::logic_error("beta cycle uses alpha");
  return std::move(*split);
}

}  // namespace detail

/// 2-local colouring in which colour alpha is at every vertex: an alpha-cycle plus a cycle of one
/// other colour, together covering V.
inline std::pair<Cycle, Cycle> one_cover_all(const EdgeColouring& c, ColourId alpha, const OracleBudget& budget = {}) {
  require(is_r_local(c, 2), ErrorCode::PreconditionViolated, "colouring is not 2-local");
  if (c.n() >= 2)
    for (Vertex v = 0; v < c.n(); ++v)
      require(sees(c, v, alpha), ErrorCode::PreconditionViolated,
              "colour " + std::to_string(alpha) + " misses vertex " + std::to_string(v));
  if (c.n() == 0) return {Cycle{}, Cycle{}};
  if (c.n() == 1) return {Cycle::singleton(0), Cycle{}};
  return detail::merged_two_cycles(c, alpha, budget);
}

/// As one_cover_all, but only vertices other than v need to see at most one colour besides alpha.
inline std::pair<Cycle, Cycle> one_more(const EdgeColouring& c, ColourId alpha, Vertex v,
                                        const OracleBudget& budget = {}) {
  if (c.n() == 0) return {Cycle{}, Cycle{}};
  check_vertex(c, v);
  for (Vertex x = 0; x < c.n(); ++x) {
    if (x == v) continue;
    const auto cols = colours_at(c, x);
    const auto others = std::count_if(cols.begin(), cols.end(), [alpha](ColourId col) { return col != alpha; });
    require(others <= 1, ErrorCode::PreconditionViolated,
            "vertex " + std::to_string(x) + " sees two colours besides alpha");
  }
  if (c.n() == 1) return {Cycle::singleton(0), Cycle{}};
  return detail::merged_two_cycles(c, alpha, budget);
}

}  // namespace cyclecover
