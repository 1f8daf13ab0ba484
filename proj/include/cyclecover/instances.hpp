#pragma once

// Random and structured locally coloured instances.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "cyclecover/core.hpp"
#include "cyclecover/rng.hpp"

namespace cyclecover {

/// Three-part configuration: edges at V_ij use colours i and j only; V_ij–V_il edges use colour i.
/// colours[0..2] hold the ids playing colours 1, 2, 3.
struct TriConfig {
  VertexSet v12, v13, v23;
  std::array<ColourId, 3> colours{0, 1, 2};

  bool operator==(const TriConfig&) const = default;
};

/// Monochromatic triangle cycle: u is a k-cycle, v[i] is joined to u[i] and u[(i+1) % k].
struct TriangleCycleWitness {
  int k = 0;
  std::vector<Vertex> u;
  std::vector<Vertex> v;
  ColourId colour = 0;
};

enum class IntraRule { LowColour, Random };
enum class AmplifyRule { LeastAbsent, Fresh };

/// Renames colours to 0..s-1 in order of first appearance along the upper triangle.
inline EdgeColouring canonicalize_palette(const EdgeColouring& c) {
  std::map<ColourId, ColourId> rename;
  auto upper = c.upper_triangle();
  for (ColourId& col : upper) {
    auto [it, fresh] = rename.try_emplace(col, static_cast<ColourId>(rename.size()));
    col = it->second;
  }
  return EdgeColouring(c.n(), upper);
}

namespace detail {

inline bool intersects(const std::vector<ColourId>& a, const std::vector<ColourId>& b) {
  for (ColourId x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) return true;
  return false;
}

/// Draws a set of at most r colours from 0..s-1 meeting every set in `family`, or nothing.
inline std::optional<std::vector<ColourId>> draw_meeting_set(Rng& rng, const std::vector<std::vector<ColourId>>& family,
                                                             int r, int s) {
  std::vector<ColourId> set;
  std::vector<std::size_t> order(family.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(std::span<std::size_t>(order));
  for (std::size_t idx : order) {
    const auto& other = family[idx];
    if (intersects(set, other)) continue;
    set.push_back(other[rng.below(other.size())]);
    if (static_cast<int>(set.size()) > r) return std::nullopt;
  }
  // pad to a random target size with fresh colours
  const int target = std::max<int>(static_cast<int>(set.size()), rng.uniform_int(1, r));
  for (int tries = 0; static_cast<int>(set.size()) < target && tries < 4 * s; ++tries) {
    const auto col = static_cast<ColourId>(rng.below(static_cast<std::uint64_t>(s)));
    if (std::find(set.begin(), set.end(), col) == set.end()) set.push_back(col);
  }
  std::sort(set.begin(), set.end());
  return set;
}

}  // namespace detail

/// r-local colouring with at most s colours. Every vertex gets an allowed colour set of size <= r
/// from a pairwise-intersecting family; each edge takes a uniform colour from the intersection.
inline EdgeColouring gen_random_local(int n, int r, int s, Seed seed) {
  require(n >= 0, ErrorCode::BadParams, "n must be non-negative");
  require(r >= 1 && s >= 1, ErrorCode::BadParams, "need r >= 1 and s >= 1");
  Rng rng(seed);
  constexpr int kRetries = 64;
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    std::vector<std::vector<ColourId>> family;  // distinct sets so far
    std::vector<std::size_t> member(static_cast<std::size_t>(n));
    bool ok = true;
    for (Vertex v = 0; v < n && ok; ++v) {
      // reuse an existing set now and then so colour classes get large
      if (!family.empty() && rng.coin(1, 2)) {
        member[static_cast<std::size_t>(v)] = rng.below(family.size());
        continue;
      }
      auto set = detail::draw_meeting_set(rng, family, r, s);
      if (!set) {
        ok = false;
        break;
      }
      auto it = std::find(family.begin(), family.end(), *set);
      member[static_cast<std::size_t>(v)] = static_cast<std::size_t>(it - family.begin());
      if (it == family.end()) family.push_back(std::move(*set));
    }
    if (!ok) continue;
    std::vector<ColourId> upper;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        const auto& a = family[member[static_cast<std::size_t>(u)]];
        const auto& b = family[member[static_cast<std::size_t>(v)]];
        std::vector<ColourId> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        upper.push_back(common[rng.below(common.size())]);
      }
    }
    EdgeColouring c = canonicalize_palette(EdgeColouring(n, upper));
    require(is_r_local(c, r) && static_cast<int>(c.palette().size()) <= s, ErrorCode::InfeasibleFamily,
            "generated colouring violates its own bounds");
    return c;
  }
  fail(ErrorCode::InfeasibleFamily, "no intersecting family of " + std::to_string(r) + "-sets over " +
                                        std::to_string(s) + " colours found");
}

/// The three-part 2-local configuration with |V12| = a, |V13| = b, |V23| = c on colours 0, 1, 2.
inline std::pair<EdgeColouring, TriConfig> gen_tri_config(int a, int b, int c, IntraRule rule = IntraRule::LowColour,
                                                          Seed seed = {}) {
  require(a >= 1 && b >= 1 && c >= 1, ErrorCode::BadSizes, "all part sizes must be >= 1");
  TriConfig cfg;
  for (Vertex v = 0; v < a; ++v) cfg.v12.push_back(v);
  for (Vertex v = a; v < a + b; ++v) cfg.v13.push_back(v);
  for (Vertex v = a + b; v < a + b + c; ++v) cfg.v23.push_back(v);
  // part index -> its two colours (local 0-based: colour 1 is id 0)
  constexpr std::array<std::array<ColourId, 2>, 3> part_colours{{{0, 1}, {0, 2}, {1, 2}}};
  auto part_of = [&](Vertex v) { return v < a ? 0 : (v < a + b ? 1 : 2); };
  Rng rng(seed);
  auto col = EdgeColouring::from_function(a + b + c, [&](Vertex u, Vertex v) -> ColourId {
    const int pu = part_of(u), pv = part_of(v);
    if (pu == pv) {
      const auto& cols = part_colours[static_cast<std::size_t>(pu)];
      return rule == IntraRule::LowColour ? cols[0] : cols[rng.below(2)];
    }
    // the colour shared by the two parts
    for (ColourId x : part_colours[static_cast<std::size_t>(pu)])
      if (x == part_colours[static_cast<std::size_t>(pv)][0] || x == part_colours[static_cast<std::size_t>(pv)][1])
        return x;
    return kNoColour;
  });
  return {std::move(col), std::move(cfg)};
}

/// Fano-plane lines in part order V137, V267, V156, V457, V346, V235, V124 (colours 1..7 become ids 0..6).
inline constexpr std::array<std::array<ColourId, 3>, 7> kFanoLines{{
    {0, 2, 6}, {1, 5, 6}, {0, 4, 5}, {3, 4, 6}, {2, 3, 5}, {1, 2, 4}, {0, 1, 3},
}};

/// Seven-part 3-local colouring: cross edges take the colour shared by the two lines,
/// intra-part edges a uniform colour of the part's line.
inline EdgeColouring gen_fano_config(std::span<const int> part_sizes, Seed seed) {
  require(part_sizes.size() == 7, ErrorCode::BadSizes, "need exactly 7 part sizes");
  std::vector<int> part;
  for (std::size_t p = 0; p < 7; ++p) {
    require(part_sizes[p] >= 1, ErrorCode::BadSizes, "all part sizes must be >= 1");
    part.insert(part.end(), static_cast<std::size_t>(part_sizes[p]), static_cast<int>(p));
  }
  Rng rng(seed);
  return EdgeColouring::from_function(static_cast<int>(part.size()), [&](Vertex u, Vertex v) -> ColourId {
    const auto& lu = kFanoLines[static_cast<std::size_t>(part[static_cast<std::size_t>(u)])];
    const auto& lv = kFanoLines[static_cast<std::size_t>(part[static_cast<std::size_t>(v)])];
    if (&lu == &lv) return lu[rng.below(3)];
    for (ColourId x : lu)
      if (std::find(lv.begin(), lv.end(), x) != lv.end()) return x;
    return kNoColour;
  });
}

/// T_k on 2k vertices (u_i = i, v_i = k + i) in `colour`, every other edge in `background`.
inline std::pair<EdgeColouring, TriangleCycleWitness> gen_triangle_cycle(int k, ColourId colour, ColourId background) {
  require(k >= 3, ErrorCode::BadK, "triangle cycles need k >= 3");
  require(colour != background && colour >= 0 && background >= 0, ErrorCode::BadParams,
          "colour and background must be distinct non-negative ids");
  TriangleCycleWitness w;
  w.k = k;
  w.colour = colour;
  for (int i = 0; i < k; ++i) {
    w.u.push_back(i);
    w.v.push_back(k + i);
  }
  auto in_tk = [k](Vertex a, Vertex b) {
    if (a > b) std::swap(a, b);
    if (b < k) return b == a + 1 || (a == 0 && b == k - 1);
    if (a >= k) return false;
    const int i = b - k;  // apex v_i touches u_i and u_{i+1}
    return a == i || a == (i + 1) % k;
  };
  auto c = EdgeColouring::from_function(2 * k, [&](Vertex a, Vertex b) { return in_tk(a, b) ? colour : background; });
  return {std::move(c), std::move(w)};
}

/// Adds vertex u = n whose edge to each v avoids every colour at v.
/// LeastAbsent takes the smallest palette colour missing at v; when v sees the whole palette it falls
/// back to a fresh colour, or raises NoAbsentColour if strict.
inline EdgeColouring amplify(const EdgeColouring& c, AmplifyRule rule = AmplifyRule::LeastAbsent, bool strict = false) {
  require(c.n() >= 1, ErrorCode::EmptyGraph, "amplify needs n >= 1");
  const ColourId fresh = c.palette().empty() ? 0 : c.palette().back() + 1;
  std::vector<ColourId> to_new(static_cast<std::size_t>(c.n()), fresh);
  if (rule == AmplifyRule::LeastAbsent) {
    for (Vertex v = 0; v < c.n(); ++v) {
      const auto at_v = colours_at(c, v);
      std::optional<ColourId> pick;
      for (ColourId col : c.palette())
        if (!std::binary_search(at_v.begin(), at_v.end(), col)) {
          pick = col;
          break;
        }
      if (!pick && strict) fail(ErrorCode::NoAbsentColour, "vertex " + std::to_string(v) + " sees every colour");
      to_new[static_cast<std::size_t>(v)] = pick.value_or(fresh);
    }
  }
  const int n = c.n();
  return EdgeColouring::from_function(n + 1, [&](Vertex a, Vertex b) {
    return b == n ? to_new[static_cast<std::size_t>(a)] : c(a, b);
  });
}

/// A colouring with mean locality <= 2 that is not 2-local: a hub sees three colours, a nonempty
/// set V1 sees only colour alpha, and the rest see alpha plus one more colour.
inline EdgeColouring gen_mean_instance(int n, Seed seed) {
  require(n >= 4, ErrorCode::BadParams, "mean instances need n >= 4");
  Rng rng(seed);
  constexpr int kRetries = 32;
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    const int ones = rng.uniform_int(1, n - 3);  // |V1|
    std::vector<Vertex> perm = all_vertices(n);
    rng.shuffle(std::span<Vertex>(perm));
    const Vertex hub = perm[0];
    std::vector<int> role(static_cast<std::size_t>(n), 0);  // 0 = V1, 1 = hub, 2 = rest
    role[static_cast<std::size_t>(hub)] = 1;
    for (int i = 1 + ones; i < n; ++i) role[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = 2;
    // colour (1 or 2) of each rest vertex's edge to the hub; both must occur
    std::vector<ColourId> side(static_cast<std::size_t>(n), 0);
    bool seen1 = false, seen2 = false;
    for (Vertex v = 0; v < n; ++v) {
      if (role[static_cast<std::size_t>(v)] != 2) continue;
      side[static_cast<std::size_t>(v)] = rng.coin() ? 1 : 2;
      (side[static_cast<std::size_t>(v)] == 1 ? seen1 : seen2) = true;
    }
    if (!seen1 || !seen2) continue;
    auto c = EdgeColouring::from_function(n, [&](Vertex a, Vertex b) -> ColourId {
      const int ra = role[static_cast<std::size_t>(a)], rb = role[static_cast<std::size_t>(b)];
      if (ra == 0 || rb == 0) return 0;
      if (ra == 1) return side[static_cast<std::size_t>(b)];
      if (rb == 1) return side[static_cast<std::size_t>(a)];
      if (side[static_cast<std::size_t>(a)] != side[static_cast<std::size_t>(b)]) return 0;
      return rng.coin() ? 0 : side[static_cast<std::size_t>(a)];
    });
    if (mean_locality(c) <= Rational(2) && max_locality(c) == 3) return canonicalize_palette(c);
  }
  fail(ErrorCode::GenerationFailed, "could not build a mean instance");
}

}  // namespace cyclecover
