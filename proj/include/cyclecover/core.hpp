#pragma once

// Coloured complete graphs, monochromatic cycles and paths, and the partition referee.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "cyclecover/error.hpp"

namespace cyclecover {

using Vertex = int;
using ColourId = int;
using VertexSet = std::vector<Vertex>;  // sorted, duplicate free
using Rational = boost::rational<std::int64_t>;

inline constexpr ColourId kNoColour = -1;

/// Edge colouring of the complete graph K_n. Immutable once built.
class EdgeColouring {
 public:
  EdgeColouring() = default;

  /// `upper` lists colour_of{u,v} for u < v in row-major order (u = 0..n-2, v = u+1..n-1).
  EdgeColouring(int n, std::span<const ColourId> upper) : n_(n) {
    require(n >= 0, ErrorCode::BadParams, "negative vertex count");
    const std::size_t pairs = static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2;
    require(upper.size() == pairs, ErrorCode::BadParams,
            "expected " + std::to_string(pairs) + " edge colours, got " + std::to_string(upper.size()));
    matrix_.assign(static_cast<std::size_t>(n) * n, kNoColour);
    std::size_t k = 0;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        const ColourId col = upper[k++];
        require(col >= 0, ErrorCode::BadParams, "colour ids must be non-negative");
        matrix_[index(u, v)] = col;
        matrix_[index(v, u)] = col;
      }
    }
    std::set<ColourId> seen(upper.begin(), upper.end());
    palette_.assign(seen.begin(), seen.end());
  }

  template <typename F>
  static EdgeColouring from_function(int n, F&& colour_of) {
    std::vector<ColourId> upper;
    upper.reserve(static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2);
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) upper.push_back(colour_of(u, v));
    return EdgeColouring(n, upper);
  }

  static EdgeColouring monochromatic(int n, ColourId col) {
    return from_function(n, [col](Vertex, Vertex) { return col; });
  }

  int n() const noexcept { return n_; }

  ColourId colour(Vertex u, Vertex v) const {
    require(u >= 0 && v >= 0 && u < n_ && v < n_ && u != v, ErrorCode::OutOfRange,
            "no edge {" + std::to_string(u) + "," + std::to_string(v) + "}");
    return matrix_[index(u, v)];
  }

  /// Unchecked lookup for hot loops; u != v and both in range.
  ColourId operator()(Vertex u, Vertex v) const noexcept { return matrix_[index(u, v)]; }

  const std::vector<ColourId>& palette() const noexcept { return palette_; }

  std::vector<ColourId> upper_triangle() const {
    std::vector<ColourId> out;
    out.reserve(static_cast<std::size_t>(n_) * (n_ > 0 ? n_ - 1 : 0) / 2);
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v = u + 1; v < n_; ++v) out.push_back(matrix_[index(u, v)]);
    return out;
  }

  bool operator==(const EdgeColouring& other) const = default;

 private:
  std::size_t index(Vertex u, Vertex v) const noexcept {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
  }

  int n_ = 0;
  std::vector<ColourId> matrix_;
  std::vector<ColourId> palette_;
};

/// A monochromatic cycle. Length 0 is the empty cycle, 1 a single vertex, 2 a single edge.
struct Cycle {
  std::vector<Vertex> vertices;
  std::optional<ColourId> colour;

  std::size_t size() const noexcept { return vertices.size(); }
  bool empty() const noexcept { return vertices.empty(); }

  static Cycle none() { return {}; }
  static Cycle singleton(Vertex v) { return {{v}, std::nullopt}; }

  bool operator==(const Cycle&) const = default;
};

/// Vertex sequence whose consecutive edges share one colour.
struct ColouredPath {
  std::vector<Vertex> vertices;
  std::optional<ColourId> colour;

  std::size_t size() const noexcept { return vertices.size(); }
  bool empty() const noexcept { return vertices.empty(); }
  Vertex front() const { return vertices.front(); }
  Vertex back() const { return vertices.back(); }

  bool operator==(const ColouredPath&) const = default;
};

struct CyclePartition {
  std::vector<Cycle> cycles;

  bool operator==(const CyclePartition&) const = default;
};

enum class FailureReason {
  BadVertex,         // id outside 0..n-1
  NotDisjoint,       // a vertex appears twice (within or across cycles)
  NotCovering,
  NotMonochromatic,  // edges of one cycle carry different colours
  ColourMismatch,    // stored colour disagrees with the edges, or is missing/superfluous
  DuplicateColour,   // two cycles of length >= 2 share a colour when distinct colours are required
  TooManyCycles,
};

constexpr std::string_view to_string(FailureReason reason) {
  switch (reason) {
    case FailureReason::BadVertex: return "BadVertex";
    case FailureReason::NotDisjoint: return "NotDisjoint";
    case FailureReason::NotCovering: return "NotCovering";
    case FailureReason::NotMonochromatic: return "NotMonochromatic";
    case FailureReason::ColourMismatch: return "ColourMismatch";
    case FailureReason::DuplicateColour: return "DuplicateColour";
    case FailureReason::TooManyCycles: return "TooManyCycles";
  }
  return "Unknown";
}

struct PartitionReport {
  bool valid = true;
  std::optional<FailureReason> failure_reason;
  int cycle_count = 0;  // nonempty cycles
  std::vector<ColourId> colours_used;  // sorted multiset over cycles of length >= 2
  std::string detail;
};

struct VerifyOptions {
  bool require_cover = true;
  bool require_distinct_colours = false;
  std::optional<int> max_cycles;
};

// ---------------------------------------------------------------------------
// Locality queries

inline void check_vertex(const EdgeColouring& c, Vertex v) {
  require(v >= 0 && v < c.n(), ErrorCode::OutOfRange,
          "vertex " + std::to_string(v) + " outside 0.." + std::to_string(c.n() - 1));
}

/// Sorted set of colours on edges at v.
inline std::vector<ColourId> colours_at(const EdgeColouring& c, Vertex v) {
  check_vertex(c, v);
  std::vector<ColourId> out;
  for (Vertex u = 0; u < c.n(); ++u)
    if (u != v) out.push_back(c(u, v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline int locality(const EdgeColouring& c, Vertex v) {
  return static_cast<int>(colours_at(c, v).size());
}

inline int max_locality(const EdgeColouring& c) {
  int best = 0;
  for (Vertex v = 0; v < c.n(); ++v) best = std::max(best, locality(c, v));
  return best;
}

inline bool is_r_local(const EdgeColouring& c, int r) { return max_locality(c) <= r; }

inline Rational mean_locality(const EdgeColouring& c) {
  require(c.n() >= 1, ErrorCode::EmptyGraph, "mean locality of the empty graph");
  std::int64_t total = 0;
  for (Vertex v = 0; v < c.n(); ++v) total += locality(c, v);
  return Rational(total, c.n());
}

inline VertexSet colour_neighbourhood(const EdgeColouring& c, Vertex v, ColourId col) {
  check_vertex(c, v);
  VertexSet out;
  for (Vertex u = 0; u < c.n(); ++u)
    if (u != v && c(u, v) == col) out.push_back(u);
  return out;
}

/// True when `col` is on some edge at v.
inline bool sees(const EdgeColouring& c, Vertex v, ColourId col) {
  for (Vertex u = 0; u < c.n(); ++u)
    if (u != v && c(u, v) == col) return true;
  return false;
}

/// Colouring induced on `vertices`; local vertex i is global vertices[i]. Colour ids are kept.
inline EdgeColouring restrict_to(const EdgeColouring& c, std::span<const Vertex> vertices) {
  for (Vertex v : vertices) check_vertex(c, v);
  return EdgeColouring::from_function(static_cast<int>(vertices.size()),
                                      [&](Vertex a, Vertex b) { return c(vertices[a], vertices[b]); });
}

template <typename Seq>
Seq relabel(Seq local, std::span<const Vertex> to_global) {
  for (auto& v : local.vertices) v = to_global[static_cast<std::size_t>(v)];
  return local;
}

inline VertexSet all_vertices(int n) {
  VertexSet out(static_cast<std::size_t>(std::max(n, 0)));
  std::iota(out.begin(), out.end(), 0);
  return out;
}

inline VertexSet set_minus(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline VertexSet sorted_set(std::vector<Vertex> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// ---------------------------------------------------------------------------
// Cycle and path checks

/// Colour shared by every edge of the closed walk, or nullopt when edges disagree.
inline std::optional<ColourId> cycle_colour(const EdgeColouring& c, std::span<const Vertex> vs) {
  if (vs.size() < 2) return std::nullopt;
  const ColourId first = c(vs[0], vs[1]);
  const std::size_t m = vs.size();
  const std::size_t edges = m == 2 ? 1 : m;
  for (std::size_t i = 0; i < edges; ++i)
    if (c(vs[i], vs[(i + 1) % m]) != first) return std::nullopt;
  return first;
}

inline bool is_valid_cycle(const EdgeColouring& c, const Cycle& cyc) {
  std::vector<Vertex> seen = cyc.vertices;
  for (Vertex v : seen)
    if (v < 0 || v >= c.n()) return false;
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
  if (cyc.size() <= 1) return !cyc.colour.has_value();
  return cyc.colour.has_value() && cycle_colour(c, cyc.vertices) == cyc.colour;
}

inline bool is_valid_path(const EdgeColouring& c, const ColouredPath& p) {
  std::vector<Vertex> seen = p.vertices;
  for (Vertex v : seen)
    if (v < 0 || v >= c.n()) return false;
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
  if (p.size() <= 1) return true;
  if (!p.colour) return false;
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (c(p.vertices[i], p.vertices[i + 1]) != *p.colour) return false;
  return true;
}

/// Builds a cycle from a vertex order, taking the colour from its edges (none for length <= 1).
inline Cycle make_cycle(const EdgeColouring& c, std::vector<Vertex> vs) {
  Cycle out{std::move(vs), std::nullopt};
  if (out.size() >= 2) out.colour = c(out.vertices[0], out.vertices[1]);
  return out;
}

inline ColouredPath make_path(std::vector<Vertex> vs, ColourId col) {
  ColouredPath out{std::move(vs), std::nullopt};
  if (out.size() >= 2) out.colour = col;
  return out;
}

// ---------------------------------------------------------------------------
// Referee

inline PartitionReport verify_partition(const EdgeColouring& c, const CyclePartition& p,
                                        const VerifyOptions& opts = {}) {
  PartitionReport rep;
  auto fail_with = [&rep](FailureReason r, std::string detail) {
    rep.valid = false;
    rep.failure_reason = r;
    rep.detail = std::move(detail);
    return rep;
  };

  std::vector<char> used(static_cast<std::size_t>(c.n()), 0);
  for (std::size_t i = 0; i < p.cycles.size(); ++i) {
    const Cycle& cyc = p.cycles[i];
    for (Vertex v : cyc.vertices) {
      if (v < 0 || v >= c.n())
        return fail_with(FailureReason::BadVertex, "cycle " + std::to_string(i) + " names vertex " + std::to_string(v));
      if (used[static_cast<std::size_t>(v)])
        return fail_with(FailureReason::NotDisjoint, "vertex " + std::to_string(v) + " used twice");
      used[static_cast<std::size_t>(v)] = 1;
    }
  }

  for (std::size_t i = 0; i < p.cycles.size(); ++i) {
    const Cycle& cyc = p.cycles[i];
    if (!cyc.empty()) ++rep.cycle_count;
    if (cyc.size() <= 1) {
      if (cyc.colour) return fail_with(FailureReason::ColourMismatch, "cycle " + std::to_string(i) + " of length <= 1 carries a colour");
      continue;
    }
    const auto actual = cycle_colour(c, cyc.vertices);
    if (!actual) return fail_with(FailureReason::NotMonochromatic, "cycle " + std::to_string(i));
    if (cyc.colour != actual)
      return fail_with(FailureReason::ColourMismatch, "cycle " + std::to_string(i) + " edges have colour " + std::to_string(*actual));
    rep.colours_used.push_back(*actual);
  }
  std::sort(rep.colours_used.begin(), rep.colours_used.end());

  if (opts.require_distinct_colours &&
      std::adjacent_find(rep.colours_used.begin(), rep.colours_used.end()) != rep.colours_used.end())
    return fail_with(FailureReason::DuplicateColour, "two cycles share a colour");

  if (opts.require_cover) {
    for (Vertex v = 0; v < c.n(); ++v)
      if (!used[static_cast<std::size_t>(v)])
        return fail_with(FailureReason::NotCovering, "vertex " + std::to_string(v) + " uncovered");
  }

  if (opts.max_cycles && rep.cycle_count > *opts.max_cycles)
    return fail_with(FailureReason::TooManyCycles,
                     std::to_string(rep.cycle_count) + " > " + std::to_string(*opts.max_cycles));
  return rep;
}

}  // namespace cyclecover
