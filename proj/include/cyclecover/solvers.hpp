#pragma once

// End-to-end partition algorithms for 2-local, 2-mean and r-local colourings.

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cyclecover/core.hpp"
#include "cyclecover/graph.hpp"
#include "cyclecover/instances.hpp"
#include "cyclecover/lemmas.hpp"
#include "cyclecover/oracle.hpp"

namespace cyclecover {

struct TraceEntry {
  std::string stage;
  std::string detail;
};

/// Ordered log of the decisions a solver took.
struct SolveTrace {
  std::vector<TraceEntry> entries;

  void add(std::string stage, std::string detail = {}) { entries.push_back({std::move(stage), std::move(detail)}); }

  bool has(std::string_view stage) const {
    return std::any_of(entries.begin(), entries.end(), [&](const TraceEntry& e) { return e.stage == stage; });
  }

  std::string to_text() const {
    std::ostringstream os;
    for (const auto& e : entries) {
      os << e.stage;
      if (!e.detail.empty()) os << ' ' << e.detail;
      os << '\n';
    }
    return os.str();
  }

  /// Stages joined by '>' for one-line summaries.
  std::string summary() const {
    std::string out;
    for (const auto& e : entries) {
      if (!out.empty()) out += '>';
      out += e.stage;
    }
    return out;
  }
};

struct SolveResult {
  CyclePartition partition;
  SolveTrace trace;
};

namespace detail {

inline std::string join(const std::vector<Vertex>& vs) {
  std::string out;
  for (Vertex v : vs) {
    if (!out.empty()) out += ',';
    out += std::to_string(v);
  }
  return out;
}

inline Cycle to_global(const Cycle& local, std::span<const Vertex> map) {
  return relabel(local, map);
}

}  // namespace detail

// ---------------------------------------------------------------------------

struct MonoComponent {
  std::optional<ColourId> colour;
  VertexSet vertices;
};

/// Largest connected component over all colour classes; ties go to the smaller colour, then to the
/// lexicographically smaller vertex set.
inline MonoComponent largest_mono_component(const EdgeColouring& c) {
  require(c.n() >= 1, ErrorCode::EmptyGraph, "no vertices");
  MonoComponent best{std::nullopt, {0}};
  for (ColourId col : c.palette()) {
    std::vector<int> comp(static_cast<std::size_t>(c.n()), -1);
    for (Vertex s = 0; s < c.n(); ++s) {
      if (comp[static_cast<std::size_t>(s)] >= 0) continue;
      VertexSet members{s};
      comp[static_cast<std::size_t>(s)] = s;
      for (std::size_t i = 0; i < members.size(); ++i)
        for (Vertex y = 0; y < c.n(); ++y)
          if (comp[static_cast<std::size_t>(y)] < 0 && y != members[i] && c(members[i], y) == col) {
            comp[static_cast<std::size_t>(y)] = s;
            members.push_back(y);
          }
      if (members.size() < 2) continue;
      std::sort(members.begin(), members.end());
      const bool better = !best.colour || members.size() > best.vertices.size() ||
                          (members.size() == best.vertices.size() &&
                           (col < *best.colour || (col == *best.colour && members < best.vertices)));
      if (better) best = {col, std::move(members)};
    }
  }
  return best;
}

struct StructureDecomposition {
  enum class Kind { AllSeeingColour, Tri };
  Kind kind = Kind::AllSeeingColour;
  std::optional<ColourId> alpha;  // AllSeeingColour; absent only for n = 1
  TriConfig tri;                  // Tri
};

namespace detail {

inline constexpr std::array<std::array<int, 2>, 3> kPartColours{{{0, 1}, {0, 2}, {1, 2}}};

inline int part_of_pair(int x, int y) {
  if (x > y) std::swap(x, y);
  return x == 0 ? (y == 1 ? 0 : 1) : 2;
}

inline int third_colour(int part) { return 2 - part; }  // V12 -> 3, V13 -> 2, V23 -> 1

inline const VertexSet& part_set(const TriConfig& t, int p) { return p == 0 ? t.v12 : (p == 1 ? t.v13 : t.v23); }

/// Checks every edge constraint of the three-part configuration.
inline std::optional<std::string> tri_violation(const EdgeColouring& c, const TriConfig& t) {
  std::vector<int> part(static_cast<std::size_t>(c.n()), -1);
  for (int p = 0; p < 3; ++p) {
    if (part_set(t, p).empty()) return "part " + std::to_string(p) + " is empty";
    for (Vertex v : part_set(t, p)) part[static_cast<std::size_t>(v)] = p;
  }
  for (Vertex v = 0; v < c.n(); ++v)
    if (part[static_cast<std::size_t>(v)] < 0) return "vertex " + std::to_string(v) + " is in no part";
  for (Vertex u = 0; u < c.n(); ++u)
    for (Vertex v = u + 1; v < c.n(); ++v) {
      const int pu = part[static_cast<std::size_t>(u)], pv = part[static_cast<std::size_t>(v)];
      const ColourId col = c(u, v);
      const auto& cu = kPartColours[static_cast<std::size_t>(pu)];
      const auto& cv = kPartColours[static_cast<std::size_t>(pv)];
      if (pu == pv) {
        if (col != t.colours[static_cast<std::size_t>(cu[0])] && col != t.colours[static_cast<std::size_t>(cu[1])])
          return "edge " + std::to_string(u) + "-" + std::to_string(v) + " inside a part has a foreign colour";
      } else {
        const int shared = (cu[0] == cv[0] || cu[0] == cv[1]) ? cu[0] : cu[1];
        if (col != t.colours[static_cast<std::size_t>(shared)])
          return "cross edge " + std::to_string(u) + "-" + std::to_string(v) + " lacks the shared colour";
      }
    }
  return std::nullopt;
}

}  // namespace detail

/// Either a colour seen by every vertex, or the three-part configuration around a largest
/// monochromatic component S: V23 = V \ S, and V1i = S ∩ N_i(x) for x = min V23.
inline StructureDecomposition structure_decompose(const EdgeColouring& c) {
  require(c.n() >= 1, ErrorCode::EmptyGraph, "no vertices");
  require(is_r_local(c, 2), ErrorCode::NotTwoLocal, "colouring is not 2-local");
  StructureDecomposition out;
  if (c.n() == 1) return out;
  for (ColourId col : c.palette()) {
    bool all = true;
    for (Vertex v = 0; v < c.n() && all; ++v) all = sees(c, v, col);
    if (all) {
      out.alpha = col;
      return out;
    }
  }
  const MonoComponent s = largest_mono_component(c);
  const VertexSet rest = set_minus(all_vertices(c.n()), s.vertices);
  require(!rest.empty(), ErrorCode::StructureViolation, "largest component spans V but its colour misses a vertex");
  const Vertex x = rest.front();
  std::set<ColourId> to_s;
  for (Vertex y : s.vertices) to_s.insert(c(x, y));
  require(to_s.size() == 2 && !to_s.count(*s.colour), ErrorCode::StructureViolation,
          "edges from x to S must carry exactly two colours other than S's");
  out.kind = StructureDecomposition::Kind::Tri;
  out.tri.colours = {*s.colour, *to_s.begin(), *std::next(to_s.begin())};
  for (Vertex y : s.vertices) (c(x, y) == out.tri.colours[1] ? out.tri.v12 : out.tri.v13).push_back(y);
  out.tri.v23 = rest;
  if (auto why = detail::tri_violation(c, out.tri)) fail(ErrorCode::StructureViolation, *why);
  return out;
}

// ---------------------------------------------------------------------------
// 2-local colourings: two cycles of different colours.

namespace detail {

/// Two vertex-disjoint paths splitting one part: `first` in the part's lower colour, `second` in the other.
struct PartSplit {
  std::vector<Vertex> first, second;
  bool operator<(const PartSplit& o) const { return std::tie(first, second) < std::tie(o.first, o.second); }
};

inline void canonical_direction(std::vector<Vertex>& p) {
  if (p.size() >= 2 && p.front() > p.back()) std::reverse(p.begin(), p.end());
}

/// Moves an end of `from` onto an end of `to` when the joining edge has `to_colour`.
inline std::vector<std::pair<std::vector<Vertex>, std::vector<Vertex>>> shortenings(
    const EdgeColouring& c, const std::vector<Vertex>& from, const std::vector<Vertex>& to, ColourId to_colour) {
  std::vector<std::pair<std::vector<Vertex>, std::vector<Vertex>>> out;
  if (from.empty()) return out;
  for (int end = 0; end < (from.size() == 1 ? 1 : 2); ++end) {
    std::vector<Vertex> rest = from;
    const Vertex e = end == 0 ? rest.front() : rest.back();
    if (end == 0)
      rest.erase(rest.begin());
    else
      rest.pop_back();
    if (to.empty()) {
      out.push_back({rest, {e}});
      continue;
    }
    if (c(e, to.front()) == to_colour) {
      std::vector<Vertex> grown{e};
      grown.insert(grown.end(), to.begin(), to.end());
      out.push_back({rest, grown});
    }
    if (to.size() >= 2 && c(e, to.back()) == to_colour) {
      std::vector<Vertex> grown = to;
      grown.push_back(e);
      out.push_back({rest, grown});
    }
  }
  return out;
}

/// Path splits of `part` reachable from Gyárfás splits (several insertion orders) by moving
/// path ends across and rotating closed paths; at most `limit` of them.
inline std::vector<PartSplit> part_splits(const EdgeColouring& c, const VertexSet& part, ColourId lo, ColourId hi,
                                          std::size_t limit) {
  std::set<PartSplit> seen;
  std::deque<PartSplit> queue;
  auto push = [&](std::vector<Vertex> a, std::vector<Vertex> b) {
    canonical_direction(a);
    canonical_direction(b);
    PartSplit s{std::move(a), std::move(b)};
    if (seen.size() >= limit || seen.count(s)) return;
    seen.insert(s);
    queue.push_back(std::move(s));
  };
  std::vector<Vertex> order = part;
  for (std::size_t rot = 0; rot < part.size(); ++rot) {
    std::rotate(order.begin(), order.begin() + 1, order.end());
    for (int dir = 0; dir < 2; ++dir) {
      std::vector<Vertex> o = order;
      if (dir) std::reverse(o.begin(), o.end());
      const PathPair pp = gyarfas_paths(c, o, lo, hi);
      push(pp.p_first.vertices, pp.p_second.vertices);
    }
  }
  auto rotations = [&](const std::vector<Vertex>& p, ColourId col) {
    std::vector<std::vector<Vertex>> out;
    if (p.size() >= 3 && c(p.front(), p.back()) == col)
      for (std::size_t k = 1; k < p.size(); ++k) {
        std::vector<Vertex> q = p;
        std::rotate(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(k), q.end());
        out.push_back(std::move(q));
      }
    return out;
  };
  while (!queue.empty() && seen.size() < limit) {
    const PartSplit s = queue.front();
    queue.pop_front();
    for (auto& [a, b] : shortenings(c, s.first, s.second, hi)) push(a, b);
    for (auto& [b, a] : shortenings(c, s.second, s.first, lo)) push(a, b);
    for (auto& q : rotations(s.first, lo)) push(q, s.second);
    for (auto& q : rotations(s.second, hi)) push(s.first, q);
  }
  return {seen.begin(), seen.end()};
}

struct PartInfo {
  VertexSet vertices;
  std::array<int, 2> local;    // local colour indices (0..2)
  std::array<ColourId, 2> col; // real ids
  std::vector<PartSplit> splits;
  std::array<std::vector<Vertex>, 2> longest;  // longest path seen per colour
  std::optional<Cycle> spanning;               // spanning cycle in one of the part's colours

  int slot(int local_colour) const { return local[0] == local_colour ? 0 : 1; }
};

inline PartInfo analyse_part(const EdgeColouring& c, const TriConfig& t, int p, std::size_t limit) {
  PartInfo info;
  info.vertices = part_set(t, p);
  info.local = kPartColours[static_cast<std::size_t>(p)];
  info.col = {t.colours[static_cast<std::size_t>(info.local[0])], t.colours[static_cast<std::size_t>(info.local[1])]};
  info.splits = part_splits(c, info.vertices, info.col[0], info.col[1], limit);
  for (const auto& s : info.splits) {
    if (s.first.size() > info.longest[0].size()) info.longest[0] = s.first;
    if (s.second.size() > info.longest[1].size()) info.longest[1] = s.second;
  }
  const auto& vs = info.vertices;
  if (vs.size() <= 2) {
    info.spanning = make_cycle(c, vs);
    return info;
  }
  for (const auto& s : info.splits) {
    for (int k = 0; k < 2 && !info.spanning; ++k) {
      const auto& main = k == 0 ? s.first : s.second;
      const auto& other = k == 0 ? s.second : s.first;
      const ColourId col = info.col[static_cast<std::size_t>(k)];
      if (other.empty() && main.size() >= 3 && c(main.front(), main.back()) == col) {
        info.spanning = Cycle{main, col};
      } else if (other.size() == 1 && main.size() >= 2 && c(other[0], main.front()) == col &&
                 c(other[0], main.back()) == col) {
        std::vector<Vertex> cyc = main;
        cyc.push_back(other[0]);
        info.spanning = Cycle{std::move(cyc), col};
      }
    }
    if (info.spanning) break;
  }
  return info;
}

inline bool accept(const EdgeColouring& c, const std::pair<Cycle, Cycle>& cand) {
  CyclePartition p{{cand.first, cand.second}};
  return verify_partition(c, p, {true, true, 2}).valid;
}

/// Attaches v to a cycle whose vertices all meet v in the cycle's colour (or which is empty/a singleton).
inline Cycle extend_with(const EdgeColouring& c, const Cycle& cyc, Vertex v) {
  std::vector<Vertex> vs = cyc.vertices;
  if (vs.size() <= 2)
    vs.push_back(v);
  else
    vs.insert(vs.begin() + 1, v);
  return make_cycle(c, std::move(vs));
}

}  // namespace detail

/// Two disjoint monochromatic cycles of different colours covering a 2-locally coloured K_n.
inline SolveResult two_local_partition(const EdgeColouring& c, const OracleBudget& budget = {}) {
  require(is_r_local(c, 2), ErrorCode::NotTwoLocal, "colouring is not 2-local");
  SolveResult res;
  auto finish = [&](std::pair<Cycle, Cycle> cycles) {
    res.partition.cycles = {std::move(cycles.first), std::move(cycles.second)};
    const auto rep = verify_partition(c, res.partition, {true, true, 2});
    if (!rep.valid) throw std::logic_error("two_local_partition produced an invalid partition: " + rep.detail);
    return res;
  };
  if (c.n() == 0) return finish({Cycle{}, Cycle{}});
  if (c.n() == 1) return finish({Cycle::singleton(0), Cycle{}});

  const StructureDecomposition dec = structure_decompose(c);
  if (dec.kind == StructureDecomposition::Kind::AllSeeingColour) {
    res.trace.add("all-seeing", "colour=" + std::to_string(*dec.alpha));
    return finish(one_cover_all(c, *dec.alpha, budget));
  }
  const TriConfig& t = dec.tri;
  res.trace.add("tri-config", "V12=" + detail::join(t.v12) + " V13=" + detail::join(t.v13) +
                                  " V23=" + detail::join(t.v23));

  // a part with a single vertex: cover the other two parts, whose shared colour sees all of them,
  // then thread the lone vertex into the non-shared cycle
  for (int p : {2, 0, 1}) {
    const VertexSet& lone = detail::part_set(t, p);
    if (lone.size() != 1) continue;
    const Vertex v = lone.front();
    const int shared = detail::third_colour(p);
    VertexSet others = set_minus(all_vertices(c.n()), lone);
    const EdgeColouring sub = restrict_to(c, others);
    const auto [alpha_cycle, beta_cycle] = one_cover_all(sub, t.colours[static_cast<std::size_t>(shared)], budget);
    std::pair<Cycle, Cycle> cand{detail::to_global(alpha_cycle, others),
                                 detail::extend_with(c, detail::to_global(beta_cycle, others), v)};
    res.trace.add("single-vertex-part", "part=" + std::to_string(p) + " v=" + std::to_string(v));
    if (detail::accept(c, cand)) return finish(std::move(cand));
    res.trace.add("single-vertex-part-failed");
  }

  constexpr std::size_t kSplitLimit = 400;
  std::array<detail::PartInfo, 3> parts;
  for (int p = 0; p < 3; ++p) parts[static_cast<std::size_t>(p)] = detail::analyse_part(c, t, p, kSplitLimit);
  auto part_with = [&](int x, int y) -> const detail::PartInfo& {
    return parts[static_cast<std::size_t>(detail::part_of_pair(x, y))];
  };

  // three-set merge with B = V_jl, A_j = V_ij, A_l = V_il
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, l = (i + 2) % 3;
    const auto& aj = part_with(i, j);
    const auto& al = part_with(i, l);
    const auto& bb = part_with(j, l);
    const auto& paj = aj.longest[static_cast<std::size_t>(aj.slot(j))];
    const auto& pal = al.longest[static_cast<std::size_t>(al.slot(l))];
    if (paj.empty() || pal.empty()) continue;
    const long need = static_cast<long>(aj.vertices.size() - paj.size()) +
                      static_cast<long>(al.vertices.size() - pal.size()) + 2;
    if (need > static_cast<long>(bb.vertices.size())) continue;
    const ColourId cj = t.colours[static_cast<std::size_t>(j)], cl = t.colours[static_cast<std::size_t>(l)];
    const auto& split = bb.splits.front();
    const auto& pbj = bb.slot(j) == 0 ? split.first : split.second;
    const auto& pbl = bb.slot(l) == 0 ? split.first : split.second;
    try {
      auto cand = merge_paths_tri(c, cj, cl, aj.vertices, al.vertices, bb.vertices, make_path(paj, cj),
                                  make_path(pal, cl), make_path(pbj, cj), make_path(pbl, cl));
      res.trace.add("merge-tri", "i=" + std::to_string(i + 1));
      if (detail::accept(c, cand)) return finish(std::move(cand));
    } catch (const Error& e) {
      res.trace.add("merge-tri-rejected", e.what());
    }
  }

  // colour-i cycle through V_ij ∪ V_il plus a spanning cycle of V_jl
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, l = (i + 2) % 3;
    const auto& bb = part_with(j, l);
    if (!bb.spanning) continue;
    const ColourId ci = t.colours[static_cast<std::size_t>(i)];
    for (int orient = 0; orient < 2; ++orient) {
      const auto& pa = orient == 0 ? part_with(i, j) : part_with(i, l);
      const auto& pb = orient == 0 ? part_with(i, l) : part_with(i, j);
      const auto& la = pa.longest[static_cast<std::size_t>(pa.slot(i))];
      const auto& lb = pb.longest[static_cast<std::size_t>(pb.slot(i))];
      if (la.empty() || lb.empty()) continue;
      const long na = static_cast<long>(pa.vertices.size()), nb = static_cast<long>(pb.vertices.size());
      const long take = std::max(1L, na - nb + 1);
      if (take > static_cast<long>(la.size()) || take > na - nb + static_cast<long>(lb.size())) continue;
      try {
        std::vector<Vertex> prefix(la.begin(), la.begin() + take);
        Cycle big = merge_paths_bip(c, ci, pa.vertices, pb.vertices, make_path(prefix, ci), make_path(lb, ci));
        res.trace.add("merge-bip", "i=" + std::to_string(i + 1) + " orient=" + std::to_string(orient));
        std::pair<Cycle, Cycle> cand{std::move(big), *bb.spanning};
        if (detail::accept(c, cand)) return finish(std::move(cand));
      } catch (const Error& e) {
        res.trace.add("merge-bip-rejected", e.what());
      }
    }
  }

  res.trace.add("fallback", "exact two-colour search");
  auto exact = two_distinct_colour_cycles(c, budget);
  if (!exact) throw std::logic_error("no two-cycle partition exists for a 2-local colouring");
  return finish(std::move(*exact));
}

// ---------------------------------------------------------------------------
// 2-mean colourings.

/// Two disjoint monochromatic cycles of different colours covering a colouring of mean locality <= 2.
inline SolveResult two_mean_partition(const EdgeColouring& c, const OracleBudget& budget = {}) {
  SolveResult res;
  if (c.n() == 0) {
    res.partition.cycles = {Cycle{}, Cycle{}};
    return res;
  }
  require(mean_locality(c) <= Rational(2), ErrorCode::MeanTooHigh, "mean locality exceeds 2");
  VertexSet ones, twos, threes;
  for (Vertex v = 0; v < c.n(); ++v) {
    const int loc = locality(c, v);
    (loc <= 1 ? ones : (loc == 2 ? twos : threes)).push_back(v);
  }
  if (ones.size() < threes.size()) throw std::logic_error("fewer one-colour than three-colour vertices");
  if (threes.empty()) {
    res.trace.add("delegate-two-local");
    SolveResult inner = two_local_partition(c, budget);
    inner.trace.entries.insert(inner.trace.entries.begin(), res.trace.entries.begin(), res.trace.entries.end());
    return inner;
  }
  // a vertex seeing one colour has every edge in it, so that colour is seen by everyone
  const ColourId alpha = c(ones.front(), ones.front() == 0 ? 1 : 0);
  for (Vertex u : ones)
    if (colours_at(c, u) != std::vector<ColourId>{alpha}) throw std::logic_error("one-colour vertices disagree");

  Vertex v = threes.front();
  for (Vertex w : threes)
    if (locality(c, w) > locality(c, v)) v = w;
  VertexSet others;
  for (Vertex w : threes)
    if (w != v) others.push_back(w);

  // alpha-cycle on V1 ∪ V3 - v alternating u1 w1 u2 w2 ...; its closing edge joins two V1 vertices
  std::vector<Vertex> c1;
  for (std::size_t i = 0; i < ones.size(); ++i) {
    c1.push_back(ones[i]);
    if (i < others.size()) c1.push_back(others[i]);
  }
  res.trace.add("mean-c1", "alpha=" + std::to_string(alpha) + " v=" + std::to_string(v) +
                               " |V1|=" + std::to_string(ones.size()) + " |V3|=" + std::to_string(threes.size()));

  VertexSet rest = sorted_set([&] {
    VertexSet r = twos;
    r.push_back(v);
    return r;
  }());
  const EdgeColouring sub = restrict_to(c, rest);
  const auto local_v = static_cast<Vertex>(std::lower_bound(rest.begin(), rest.end(), v) - rest.begin());
  auto [alpha_part, other] = one_more(sub, alpha, local_v, budget);
  alpha_part = detail::to_global(alpha_part, rest);
  other = detail::to_global(other, rest);
  res.trace.add("one-more", "alpha-part=" + std::to_string(alpha_part.size()) + " other=" + std::to_string(other.size()));

  // splice: c1 ends at a V1 vertex and starts at one, so the alpha-part slots in between
  std::vector<Vertex> joined = c1;
  joined.insert(joined.end(), alpha_part.vertices.begin(), alpha_part.vertices.end());
  res.partition.cycles = {make_cycle(c, std::move(joined)), std::move(other)};
  const auto rep = verify_partition(c, res.partition, {true, true, 2});
  if (!rep.valid) throw std::logic_error("two_mean_partition produced an invalid partition: " + rep.detail);
  return res;
}

// ---------------------------------------------------------------------------
// r-local colourings.

/// A monochromatic cycle of length >= max(1, ceil(n / 2r)), taken from the colour class with the
/// most edges per spanned vertex.
inline Cycle find_long_mono_cycle(const EdgeColouring& c, int r, const OracleBudget& budget = {}) {
  require(r >= 1, ErrorCode::BadParams, "r must be >= 1");
  require(c.n() >= 1, ErrorCode::EmptyGraph, "no vertices");
  require(is_r_local(c, r), ErrorCode::NotRLocal, "colouring is not " + std::to_string(r) + "-local");
  if (c.n() == 1) return Cycle::singleton(0);
  const int target = (c.n() + 2 * r - 1) / (2 * r);
  std::optional<ColourId> best;
  long best_e = 0, best_v = 1;
  for (ColourId col : c.palette()) {
    long e = 0;
    std::vector<char> touched(static_cast<std::size_t>(c.n()), 0);
    for (Vertex u = 0; u < c.n(); ++u)
      for (Vertex v = u + 1; v < c.n(); ++v)
        if (c(u, v) == col) {
          ++e;
          touched[static_cast<std::size_t>(u)] = touched[static_cast<std::size_t>(v)] = 1;
        }
    const long span = std::count(touched.begin(), touched.end(), 1);
    if (!best || e * best_v > best_e * span) {
      best = col;
      best_e = e;
      best_v = span;
    }
  }
  const int l = std::max(target, 2);
  Cycle out;
  if (2 * best_e >= static_cast<long>(l) * best_v) {
    VertexSet span;
    for (Vertex u = 0; u < c.n(); ++u)
      if (sees(c, u, *best)) span.push_back(u);
    const Graph g = colour_class(c, *best).induced(span);
    try {
      Cycle local = erdos_gallai_long_cycle(g, l, budget);
      out = make_cycle(c, detail::to_global(local, span).vertices);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded) throw;
    }
  }
  if (static_cast<int>(out.size()) < target) out = longest_mono_cycle(c, budget).second;
  if (static_cast<int>(out.size()) < target || !is_valid_cycle(c, out))
    throw std::logic_error("no monochromatic cycle of length n/2r");
  return out;
}

enum class PipelineFallback { GreedyCycles };

struct PipelineParams {
  double c_pipeline = 2.0;          // long-cycle rounds allowed: floor(c * r^2 * ceil(log2(r+1)))
  int tk_min = 3;                   // smallest triangle cycle accepted
  std::optional<int> ratio_exp;     // |B| * r^ratio_exp <= |A| gate; defaults to r + 3
  PipelineFallback fallback = PipelineFallback::GreedyCycles;
  long tk_node_limit = 200000;      // DFS nodes per (k, colour) in the triangle-cycle search
};

inline int ceil_log2(int x) {
  int k = 0;
  while ((1 << k) < x) ++k;
  return k;
}

/// Long-cycle rounds allowed before the triangle-cycle route gives up.
inline int pipeline_rounds(const PipelineParams& p, int r) {
  return static_cast<int>(std::floor(p.c_pipeline * r * r * ceil_log2(r + 1) + 1e-9));
}

/// Cycle budget of a completed triangle-cycle route.
inline int tk_route_bound(const PipelineParams& p, int r) { return pipeline_rounds(p, r) + r * r + 1; }

/// Cycle budget of the greedy route: ceil(2 r ln n) + r.
inline int greedy_route_bound(int n, int r) {
  if (n <= 1) return n + r;
  return static_cast<int>(std::ceil(2.0 * r * std::log(static_cast<double>(n)) - 1e-9)) + r;
}

/// Monochromatic triangle cycle T_k in `colour`, by DFS over k-cycles and bipartite matching of apexes.
inline std::optional<TriangleCycleWitness> find_triangle_cycle(const EdgeColouring& c, ColourId colour, int k,
                                                               long node_limit = 200000) {
  require(k >= 3, ErrorCode::BadK, "k must be >= 3");
  const int n = c.n();
  if (2 * k > n) return std::nullopt;
  require(n <= 64, ErrorCode::BudgetExceeded, "triangle-cycle search needs n <= 64");
  std::vector<Mask> adj(static_cast<std::size_t>(n), 0);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      if (u != v && c(u, v) == colour) adj[static_cast<std::size_t>(u)] |= Mask{1} << v;
  long nodes = 0;
  std::vector<Vertex> cyc;
  std::vector<Vertex> apex;

  auto match_apexes = [&](Mask used) -> bool {
    std::vector<Mask> cand(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
      cand[static_cast<std::size_t>(i)] = adj[static_cast<std::size_t>(cyc[static_cast<std::size_t>(i)])] &
                                          adj[static_cast<std::size_t>(cyc[static_cast<std::size_t>((i + 1) % k)])] & ~used;
    std::vector<int> owner(static_cast<std::size_t>(n), -1);
    auto augment = [&](auto&& self, int i, Mask& visited) -> bool {
      for (Mask m = cand[static_cast<std::size_t>(i)] & ~visited; m; m &= m - 1) {
        const int x = std::countr_zero(m);
        visited |= Mask{1} << x;
        if (owner[static_cast<std::size_t>(x)] < 0 || self(self, owner[static_cast<std::size_t>(x)], visited)) {
          owner[static_cast<std::size_t>(x)] = i;
          return true;
        }
      }
      return false;
    };
    for (int i = 0; i < k; ++i) {
      Mask visited = 0;
      if (!augment(augment, i, visited)) return false;
    }
    apex.assign(static_cast<std::size_t>(k), -1);
    for (Vertex x = 0; x < n; ++x)
      if (owner[static_cast<std::size_t>(x)] >= 0) apex[static_cast<std::size_t>(owner[static_cast<std::size_t>(x)])] = x;
    return true;
  };

  auto dfs = [&](auto&& self, Mask used) -> bool {
    if (++nodes > node_limit) return false;
    const Vertex last = cyc.back();
    if (static_cast<int>(cyc.size()) == k) {
      if (!((adj[static_cast<std::size_t>(last)] >> cyc.front()) & 1U) || cyc[1] > last) return false;
      if (!(adj[static_cast<std::size_t>(last)] & adj[static_cast<std::size_t>(cyc.front())] & ~used)) return false;
      return match_apexes(used);
    }
    const Mask above_start = ~((Mask{2} << cyc.front()) - 1);
    for (Mask m = adj[static_cast<std::size_t>(last)] & ~used & above_start; m; m &= m - 1) {
      const int y = std::countr_zero(m);
      if (!(adj[static_cast<std::size_t>(last)] & adj[static_cast<std::size_t>(y)] & ~(used | (Mask{1} << y)))) continue;
      cyc.push_back(y);
      if (self(self, used | (Mask{1} << y))) return true;
      cyc.pop_back();
      if (nodes > node_limit) return false;
    }
    return false;
  };

  for (Vertex s = 0; s < n; ++s) {
    cyc = {s};
    if (dfs(dfs, Mask{1} << s)) {
      TriangleCycleWitness w;
      w.k = k;
      w.u = cyc;
      w.v = apex;
      w.colour = colour;
      return w;
    }
    if (nodes > node_limit) break;
  }
  return std::nullopt;
}

inline bool is_triangle_cycle(const EdgeColouring& c, const TriangleCycleWitness& w) {
  if (w.k < 3 || static_cast<int>(w.u.size()) != w.k || static_cast<int>(w.v.size()) != w.k) return false;
  std::vector<Vertex> all = w.u;
  all.insert(all.end(), w.v.begin(), w.v.end());
  for (Vertex x : all)
    if (x < 0 || x >= c.n()) return false;
  if (sorted_set(all).size() != all.size()) return false;
  for (int i = 0; i < w.k; ++i) {
    const Vertex a = w.u[static_cast<std::size_t>(i)], b = w.u[static_cast<std::size_t>((i + 1) % w.k)];
    const Vertex x = w.v[static_cast<std::size_t>(i)];
    if (c(a, b) != w.colour || c(a, x) != w.colour || c(b, x) != w.colour) return false;
  }
  return true;
}

namespace detail {

/// Removes long monochromatic cycles from `rest` until `stop(rest)` holds or `max_rounds` is hit.
/// Every removed cycle has length >= ceil(|rest| / 2r).
template <typename Stop>
bool peel_long_cycles(const EdgeColouring& c, int r, VertexSet& rest, std::vector<Cycle>& out, SolveTrace& trace,
                      Stop&& stop, int max_rounds, const OracleBudget& budget) {
  const double start = static_cast<double>(rest.size());
  int rounds = 0;
  while (!stop(rest)) {
    if (rounds >= max_rounds) return false;
    const auto t = static_cast<int>(rest.size());
    const EdgeColouring sub = restrict_to(c, rest);
    Cycle cyc = to_global(find_long_mono_cycle(sub, r, budget), rest);
    const int need = (t + 2 * r - 1) / (2 * r);
    if (static_cast<int>(cyc.size()) < need) throw std::logic_error("removed cycle shorter than |rest|/2r");
    rest = set_minus(rest, sorted_set(cyc.vertices));
    ++rounds;
    const double decay = start * std::pow(1.0 - 1.0 / (2.0 * r), rounds);
    if (static_cast<double>(rest.size()) > decay + 1e-9) throw std::logic_error("remainder above n(1-1/2r)^s");
    trace.add("long-cycle", "round=" + std::to_string(rounds) + " len=" + std::to_string(cyc.size()) +
                                " rest=" + std::to_string(rest.size()));
    out.push_back(std::move(cyc));
  }
  return true;
}

}  // namespace detail

/// Greedy route: strip long monochromatic cycles until nothing is left.
inline SolveResult greedy_cycle_partition(const EdgeColouring& c, int r, const OracleBudget& budget = {}) {
  require(is_r_local(c, r), ErrorCode::NotRLocal, "colouring is not " + std::to_string(r) + "-local");
  SolveResult res;
  VertexSet rest = all_vertices(c.n());
  res.trace.add("greedy");
  detail::peel_long_cycles(c, r, rest, res.partition.cycles, res.trace, [](const VertexSet& s) { return s.empty(); },
                           c.n() + 1, budget);
  return res;
}

/// Partition of an r-locally coloured K_n: a monochromatic triangle cycle T_k with apex set A,
/// long-cycle removal until the rest B satisfies |B| r^ratio_exp <= |A|, bipartite patching of B
/// into A, and one cycle closing T_k minus the apexes used. Falls back to the greedy route when a
/// stage cannot complete.
inline SolveResult r_local_partition(const EdgeColouring& c, int r, const PipelineParams& params = {},
                                     const OracleBudget& budget = {}) {
  require(r >= 1, ErrorCode::BadParams, "r must be >= 1");
  require(params.c_pipeline > 0 && params.tk_min >= 3 && (!params.ratio_exp || *params.ratio_exp >= 0),
          ErrorCode::BadParams, "bad pipeline parameters");
  require(is_r_local(c, r), ErrorCode::NotRLocal, "colouring is not " + std::to_string(r) + "-local");
  SolveResult res;
  if (c.n() == 0) return res;

  auto run_fallback = [&](std::string why) {
    res.trace.add("fallback", std::move(why));
    SolveResult g = greedy_cycle_partition(c, r, budget);
    res.partition = std::move(g.partition);
    res.trace.entries.insert(res.trace.entries.end(), g.trace.entries.begin(), g.trace.entries.end());
    return res;
  };

  std::optional<TriangleCycleWitness> tk;
  if (c.n() <= 64) {
    for (int k = c.n() / 2; k >= params.tk_min && !tk; --k)
      for (ColourId col : c.palette())
        if ((tk = find_triangle_cycle(c, col, k, params.tk_node_limit))) break;
  }
  if (!tk) return run_fallback("no triangle cycle with k >= " + std::to_string(params.tk_min));
  res.trace.add("triangle-cycle", "k=" + std::to_string(tk->k) + " colour=" + std::to_string(tk->colour) +
                                      " u=" + detail::join(tk->u) + " v=" + detail::join(tk->v));

  const VertexSet apexes = sorted_set(tk->v);
  VertexSet tk_vertices = apexes;
  tk_vertices.insert(tk_vertices.end(), tk->u.begin(), tk->u.end());
  tk_vertices = sorted_set(tk_vertices);
  VertexSet rest = set_minus(all_vertices(c.n()), tk_vertices);

  const int exp = params.ratio_exp.value_or(r + 3);
  const std::int64_t ratio = detail::int_pow_sat(r, exp);
  std::vector<Cycle> removed;
  const auto a_size = static_cast<std::int64_t>(apexes.size());
  const bool gated = detail::peel_long_cycles(
      c, r, rest, removed, res.trace,
      [&](const VertexSet& s) { return static_cast<std::int64_t>(s.size()) * ratio <= a_size; },
      pipeline_rounds(params, r), budget);
  if (!gated) return run_fallback("remainder above |A|/r^" + std::to_string(exp) + " after allowed rounds");

  PatchResult patch;
  try {
    patch = patch_bipartite(c, apexes, rest, r, budget);
  } catch (const Error& e) {
    return run_fallback(std::string("patching rejected: ") + e.what());
  }
  res.trace.add("patch", "B=" + std::to_string(rest.size()) + " cycles=" + std::to_string(patch.cycles.size()) +
                             " a_used=" + std::to_string(patch.a_used.size()));

  std::vector<Vertex> closing;
  for (int i = 0; i < tk->k; ++i) {
    closing.push_back(tk->u[static_cast<std::size_t>(i)]);
    const Vertex x = tk->v[static_cast<std::size_t>(i)];
    if (!std::binary_search(patch.a_used.begin(), patch.a_used.end(), x)) closing.push_back(x);
  }
  res.trace.add("close-tk", "len=" + std::to_string(closing.size()));

  res.partition.cycles = std::move(removed);
  for (auto& cyc : patch.cycles) res.partition.cycles.push_back(std::move(cyc));
  res.partition.cycles.push_back(Cycle{std::move(closing), tk->colour});
  const auto rep = verify_partition(c, res.partition);
  if (!rep.valid) throw std::logic_error("triangle-cycle route produced an invalid partition: " + rep.detail);
  return res;
}

}  // namespace cyclecover
