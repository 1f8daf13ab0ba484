#include <gtest/gtest.h>

#include "cyclecover/instances.hpp"
#include "cyclecover/io.hpp"
#include "cyclecover/oracle.hpp"
#include "support.hpp"

using namespace cyclecover;

TEST(MonoSpanningCycle, Examples) {
  const auto k5 = EdgeColouring::monochromatic(5, 4);
  const auto all = all_vertices(5);
  const auto cyc = mono_spanning_cycle(k5, std::span<const Vertex>(all), 4);
  ASSERT_TRUE(cyc);
  EXPECT_EQ(cyc->size(), 5u);
  EXPECT_TRUE(is_valid_cycle(k5, *cyc));

  const auto c = EdgeColouring::from_function(3, [](Vertex u, Vertex v) { return u + v == 1 ? 2 : 0; });
  const VertexSet pair{0, 1};
  EXPECT_FALSE(mono_spanning_cycle(c, std::span<const Vertex>(pair), 3));
  EXPECT_TRUE(mono_spanning_cycle(c, std::span<const Vertex>(pair), 2));
  const VertexSet one{2};
  const auto single = mono_spanning_cycle(c, std::span<const Vertex>(one), 7);
  ASSERT_TRUE(single);
  EXPECT_EQ(single->colour, std::nullopt);
}

TEST(MonoSpanningCycle, TriConfigAlternatingCycle) {
  const auto c = gen_tri_config(2, 2, 2).first;
  const VertexSet s{0, 1, 2, 3};
  const auto cyc = mono_spanning_cycle(c, std::span<const Vertex>(s), 0);
  ASSERT_TRUE(cyc);
  EXPECT_TRUE(is_valid_cycle(c, *cyc));
  EXPECT_TRUE(testsupport::naive_spanning(c, s, 0));
  EXPECT_EQ(mono_spanning_cycle(c, SubsetMask::of(s), 0).has_value(), true);
}

TEST(MonoSpanningCycle, AgreesWithPermutationSearch) {
  Rng rng(Seed{101});
  for (int it = 0; it < 120; ++it) {
    const int n = rng.uniform_int(1, 9);
    const auto c = testsupport::random_colouring(n, rng.uniform_int(1, 3), rng);
    for (int q = 0; q < 12; ++q) {
      VertexSet s;
      for (Vertex v = 0; v < n; ++v)
        if (rng.coin() && s.size() < 8) s.push_back(v);
      for (ColourId col = 0; col < 3; ++col) {
        const auto got = mono_spanning_cycle(c, std::span<const Vertex>(s), col);
        ASSERT_EQ(got.has_value(), testsupport::naive_spanning(c, s, col));
        if (got) {
          EXPECT_TRUE(is_valid_cycle(c, *got));
          EXPECT_EQ(sorted_set(got->vertices), s);
        }
      }
    }
  }
}

TEST(MonoSpanningCycle, Budget) {
  const auto c = EdgeColouring::monochromatic(16, 0);
  const auto all = all_vertices(16);
  try {
    mono_spanning_cycle(c, std::span<const Vertex>(all), 0, OracleBudget{14, std::nullopt});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
  EXPECT_TRUE(mono_spanning_cycle(c, std::span<const Vertex>(all), 0, OracleBudget{16, std::nullopt}));
}

TEST(MinCyclePartition, Examples) {
  EXPECT_EQ(min_cycle_partition(EdgeColouring(0, {})).count, 0);
  EXPECT_EQ(min_cycle_partition(EdgeColouring(1, {})).count, 1);
  EXPECT_EQ(min_cycle_partition(EdgeColouring::monochromatic(6, 2)).count, 1);
  EXPECT_THROW(min_cycle_partition(EdgeColouring::monochromatic(15, 0)), Error);
}

TEST(MinCyclePartition, AgreesWithNaiveRecursion) {
  Rng rng(Seed{202});
  for (int it = 0; it < 150; ++it) {
    const int n = rng.uniform_int(1, 7);
    const auto c = testsupport::random_colouring(n, rng.uniform_int(1, 4), rng);
    const auto got = min_cycle_partition(c);
    EXPECT_EQ(got.count, testsupport::naive_min_partition(c));
    const auto rep = verify_partition(c, got.witness);
    EXPECT_TRUE(rep.valid) << rep.detail;
    EXPECT_EQ(rep.cycle_count, got.count);
  }
}

TEST(MinCyclePartition, TwoColouredNeedAtMostTwo) {
  Rng rng(Seed{303});
  for (int it = 0; it < 1000; ++it) {
    const int n = rng.uniform_int(1, 12);
    const auto c = testsupport::random_colouring(n, 2, rng);
    const auto got = min_cycle_partition(c);
    ASSERT_LE(got.count, 2) << instance_to_string(c);
    ASSERT_TRUE(verify_partition(c, got.witness).valid);
  }
}

TEST(MinCyclePartition, OneIffHamiltonianColourClass) {
  Rng rng(Seed{404});
  for (int it = 0; it < 200; ++it) {
    const int n = rng.uniform_int(3, 9);
    const auto c = testsupport::random_colouring(n, rng.uniform_int(1, 3), rng);
    bool ham = false;
    const auto all = all_vertices(n);
    for (ColourId col : c.palette()) ham = ham || mono_spanning_cycle(c, std::span<const Vertex>(all), col).has_value();
    EXPECT_EQ(min_cycle_partition(c).count == 1, ham);
  }
}

TEST(MinCyclePartition, DeletionDropsByAtMostOne) {
  Rng rng(Seed{505});
  for (int it = 0; it < 60; ++it) {
    const int n = rng.uniform_int(2, 10);
    const auto c = testsupport::random_colouring(n, rng.uniform_int(1, 4), rng);
    const int full = min_cycle_partition(c).count;
    for (Vertex x = 0; x < n; ++x) {
      VertexSet keep = set_minus(all_vertices(n), {x});
      const int sub = min_cycle_partition(restrict_to(c, keep)).count;
      EXPECT_GE(sub, full - 1) << instance_to_string(c) << " delete " << x;
    }
  }
}

TEST(MinCyclePartition, DeletionCanRaiseByTwo) {
  // a colour-2 Hamilton cycle, but without vertex 3 three cycles are needed
  const auto c = instance_from_string("6 3\n0 0 2 1 2\n1 2 2 0\n2 2 2\n0 2\n0\n");
  const VertexSet keep{0, 1, 2, 4, 5};
  const auto sub = restrict_to(c, keep);
  EXPECT_EQ(min_cycle_partition(c).count, 1);
  EXPECT_EQ(min_cycle_partition(sub).count, 3);
  EXPECT_EQ(testsupport::naive_min_partition(c), 1);
  EXPECT_EQ(testsupport::naive_min_partition(sub), 3);
}

TEST(MinCyclePartition, WitnessTieBreakIsDeterministic) {
  const auto c = gen_tri_config(2, 3, 2, IntraRule::Random, Seed{4}).first;
  const auto a = min_cycle_partition(c), b = min_cycle_partition(c);
  ASSERT_EQ(a.witness.cycles.size(), b.witness.cycles.size());
  for (std::size_t i = 0; i < a.witness.cycles.size(); ++i)
    EXPECT_EQ(a.witness.cycles[i].vertices, b.witness.cycles[i].vertices);
}

TEST(BtTwoCycles, Examples) {
  const auto k4 = EdgeColouring::monochromatic(4, 0);
  const auto r = bt_two_cycles(k4, 0, true);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->first.size(), 4u);
  EXPECT_EQ(r->first.colour, std::optional<ColourId>(0));
  EXPECT_TRUE(r->second.vertices.empty());

  const auto k2 = EdgeColouring::monochromatic(2, 1);
  const auto e = bt_two_cycles(k2, 0, true);
  ASSERT_TRUE(e);
  EXPECT_TRUE(e->first.vertices.empty());
  EXPECT_EQ(e->second.size(), 2u);
  EXPECT_EQ(e->second.colour, std::optional<ColourId>(1));
}

TEST(BtTwoCycles, LiteralBetaNeedsTwoColours) {
  const auto c = EdgeColouring::from_function(4, [](Vertex u, Vertex v) { return (u + v) % 3; });
  try {
    bt_two_cycles(c, 0, false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooManyColours);
  }
}

TEST(BtTwoCycles, AlwaysFoundOnTwoColourings) {
  Rng rng(Seed{606});
  for (int it = 0; it < 300; ++it) {
    const int n = rng.uniform_int(1, 10);
    const auto c = testsupport::random_colouring(n, 2, rng);
    for (ColourId alpha : {0, 1}) {
      const auto r = bt_two_cycles(c, alpha, false);
      ASSERT_TRUE(r) << instance_to_string(c);
      const CyclePartition p{{r->first, r->second}};
      EXPECT_TRUE(verify_partition(c, p).valid);
      if (r->first.size() >= 2) {
        EXPECT_EQ(r->first.colour, std::optional<ColourId>(alpha));
      }
      if (r->second.size() >= 2) {
        EXPECT_NE(r->second.colour, std::optional<ColourId>(alpha));
      }
    }
  }
}

TEST(BtTwoCycles, MergedBetaNeverMisses) {
  Rng rng(Seed{607});
  for (int it = 0; it < 200; ++it) {
    const int n = rng.uniform_int(1, 9);
    const auto c = testsupport::random_colouring(n, rng.uniform_int(1, 4), rng);
    ASSERT_TRUE(bt_two_cycles(c, 0, true)) << instance_to_string(c);
  }
}

TEST(LongestMonoCycle, Examples) {
  EXPECT_EQ(longest_mono_cycle(EdgeColouring::monochromatic(7, 0)).first, 7);
  int next = 0;
  const auto rainbow = EdgeColouring::from_function(4, [&](Vertex, Vertex) { return next++; });
  const auto [len, cyc] = longest_mono_cycle(rainbow);
  EXPECT_EQ(len, 2);
  EXPECT_TRUE(is_valid_cycle(rainbow, cyc));
  EXPECT_EQ(longest_mono_cycle(EdgeColouring(1, {})).first, 1);
}

TEST(LongestMonoCycle, TwoLocalBound) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto c = gen_random_local(10, 2, 5, Seed{s});
    const auto [len, cyc] = longest_mono_cycle(c);
    EXPECT_GE(len, 3);
    EXPECT_EQ(static_cast<int>(cyc.size()), len);
    EXPECT_TRUE(is_valid_cycle(c, cyc));
  }
}

TEST(Graphs, IndependenceNumber) {
  EXPECT_EQ(independence_number(Graph(5)), 5);
  EXPECT_EQ(independence_number(Graph::complete(5)), 1);
  EXPECT_EQ(independence_number(Graph::cycle(6)), 3);
  EXPECT_EQ(independence_number(Graph(0)), 0);
  Rng rng(Seed{707});
  for (int it = 0; it < 200; ++it) {
    const auto g = testsupport::random_graph(rng.uniform_int(1, 12), rng.uniform_int(10, 90), rng);
    EXPECT_EQ(independence_number(g), testsupport::naive_independence(g));
  }
}

TEST(Graphs, LongestCycle) {
  EXPECT_EQ(longest_cycle(Graph::complete(6)).size(), 6u);
  EXPECT_EQ(longest_cycle(Graph(3)).size(), 1u);
  Graph path(4);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  path.add_edge(2, 3);
  EXPECT_EQ(longest_cycle(path).size(), 2u);
  Graph g = Graph::cycle(5);
  g.add_edge(0, 2);
  const auto cyc = longest_cycle(g);
  EXPECT_EQ(cyc.size(), 5u);
  EXPECT_TRUE(is_graph_cycle(g, cyc));
}

TEST(Robustness, Examples) {
  const auto k4 = EdgeColouring::monochromatic(4, 0);
  EXPECT_TRUE(robustness_check(k4, 1));
  EXPECT_FALSE(robustness_check(k4, 2));
  EXPECT_THROW(robustness_check(EdgeColouring(0, {}), 1), Error);
}

TEST(Budget, EnvironmentOverride) {
  ::setenv("CYCLECOVER_ORACLE_MAX_N", "9", 1);
  EXPECT_EQ(default_oracle_max_n(), 9);
  ::setenv("CYCLECOVER_ORACLE_MAX_N", "99", 1);
  EXPECT_EQ(default_oracle_max_n(), kOracleHardCap);
  ::unsetenv("CYCLECOVER_ORACLE_MAX_N");
  EXPECT_EQ(default_oracle_max_n(), kOracleDefaultMaxN);
}
