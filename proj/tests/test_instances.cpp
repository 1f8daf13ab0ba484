#include <gtest/gtest.h>

#include "cyclecover/instances.hpp"
#include "cyclecover/io.hpp"
#include "cyclecover/oracle.hpp"
#include "support.hpp"

using namespace cyclecover;

TEST(RandomLocal, Examples) {
  EXPECT_EQ(gen_random_local(0, 2, 3, Seed{1}).n(), 0);
  const auto c = gen_random_local(10, 2, 3, Seed{42});
  EXPECT_TRUE(is_r_local(c, 2));
  EXPECT_LE(c.palette().size(), 3u);
  EXPECT_EQ(gen_random_local(10, 1, 1, Seed{9}), EdgeColouring::monochromatic(10, 0));
}

TEST(RandomLocal, Bounds) {
  for (std::uint64_t s = 0; s < 300; ++s) {
    Rng rng(Seed{s});
    const int n = rng.uniform_int(0, 14), r = rng.uniform_int(1, 4), pal = rng.uniform_int(1, 8);
    const auto c = gen_random_local(n, r, pal, Seed{s});
    ASSERT_TRUE(is_r_local(c, r));
    ASSERT_LE(static_cast<int>(c.palette().size()), pal);
    // palette is canonical: 0..k-1
    for (std::size_t i = 0; i < c.palette().size(); ++i) EXPECT_EQ(c.palette()[i], static_cast<ColourId>(i));
  }
}

TEST(RandomLocal, Deterministic) {
  EXPECT_EQ(instance_to_string(gen_random_local(12, 3, 6, Seed{77})),
            instance_to_string(gen_random_local(12, 3, 6, Seed{77})));
  EXPECT_NE(instance_to_string(gen_random_local(12, 3, 6, Seed{77})),
            instance_to_string(gen_random_local(12, 3, 6, Seed{78})));
}

TEST(RandomLocal, BadParams) {
  EXPECT_THROW(gen_random_local(-1, 2, 3, Seed{}), Error);
  EXPECT_THROW(gen_random_local(3, 0, 3, Seed{}), Error);
  EXPECT_THROW(gen_random_local(3, 1, 0, Seed{}), Error);
}

TEST(TriConfig, Triangle) {
  const auto [c, t] = gen_tri_config(1, 1, 1);
  EXPECT_EQ(c.n(), 3);
  EXPECT_EQ(c.palette().size(), 3u);
  EXPECT_TRUE(is_r_local(c, 2));
  EXPECT_EQ(t.v12, VertexSet{0});
  EXPECT_EQ(t.v13, VertexSet{1});
  EXPECT_EQ(t.v23, VertexSet{2});
}

TEST(TriConfig, NoColourSeesEverything) {
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b)
      for (int d = 1; d <= 4; ++d)
        for (auto rule : {IntraRule::LowColour, IntraRule::Random}) {
          const auto [c, t] = gen_tri_config(a, b, d, rule, Seed{static_cast<std::uint64_t>(a * 100 + b * 10 + d)});
          ASSERT_TRUE(is_r_local(c, 2));
          ASSERT_EQ(c.n(), a + b + d);
          // colour i is absent at the part not containing it
          for (Vertex v : t.v23) EXPECT_FALSE(sees(c, v, t.colours[0]));
          for (Vertex v : t.v13) EXPECT_FALSE(sees(c, v, t.colours[1]));
          for (Vertex v : t.v12) EXPECT_FALSE(sees(c, v, t.colours[2]));
          for (Vertex u : t.v12)
            for (Vertex v : t.v13) EXPECT_EQ(c(u, v), t.colours[0]);
          for (Vertex u : t.v12)
            for (Vertex v : t.v23) EXPECT_EQ(c(u, v), t.colours[1]);
          for (Vertex u : t.v13)
            for (Vertex v : t.v23) EXPECT_EQ(c(u, v), t.colours[2]);
        }
}

TEST(TriConfig, Errors) {
  try {
    gen_tri_config(0, 1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadSizes);
  }
}

TEST(Fano, SingleVertexParts) {
  const std::vector<int> ones(7, 1);
  const auto c = gen_fano_config(ones, Seed{1});
  EXPECT_EQ(c.n(), 7);
  EXPECT_TRUE(is_r_local(c, 3));
  EXPECT_EQ(c.palette().size(), 7u);
  // part 0 is line 137, part 6 is line 124: they share colour 1 (id 0)
  EXPECT_EQ(c(0, 6), 0);
}

TEST(Fano, LargerParts) {
  const std::vector<int> sizes{2, 1, 1, 1, 1, 1, 1};
  const auto c = gen_fano_config(sizes, Seed{5});
  EXPECT_EQ(c.n(), 8);
  EXPECT_TRUE(is_r_local(c, 3));
  Rng rng(Seed{8});
  for (int it = 0; it < 50; ++it) {
    std::vector<int> s(7);
    for (auto& x : s) x = rng.uniform_int(1, 3);
    EXPECT_TRUE(is_r_local(gen_fano_config(s, Seed{static_cast<std::uint64_t>(it)}), 3));
  }
  const std::vector<int> bad{1, 1, 0, 1, 1, 1, 1};
  EXPECT_THROW(gen_fano_config(bad, Seed{1}), Error);
  const std::vector<int> short_list{1, 1};
  EXPECT_THROW(gen_fano_config(short_list, Seed{1}), Error);
}

TEST(TriangleCycle, Structure) {
  const auto [c, w] = gen_triangle_cycle(3, 2, 5);
  EXPECT_EQ(c.n(), 6);
  int coloured = 0, background = 0;
  for (Vertex u = 0; u < 6; ++u)
    for (Vertex v = u + 1; v < 6; ++v) (c(u, v) == 2 ? coloured : background)++;
  EXPECT_EQ(coloured, 9);
  EXPECT_EQ(background, 6);
  EXPECT_EQ(w.k, 3);
  EXPECT_EQ(w.colour, 2);
  EXPECT_THROW(gen_triangle_cycle(2, 0, 1), Error);
  EXPECT_THROW(gen_triangle_cycle(4, 1, 1), Error);
}

TEST(TriangleCycle, ApexRemovalKeepsSpanningCycle) {
  for (int k = 3; k <= 6; ++k) {
    const auto [c, w] = gen_triangle_cycle(k, 0, 1);
    for (unsigned drop = 0; drop < (1u << k); ++drop) {
      VertexSet keep = w.u;
      for (int i = 0; i < k; ++i)
        if (!(drop >> i & 1u)) keep.push_back(w.v[static_cast<std::size_t>(i)]);
      keep = sorted_set(keep);
      ASSERT_TRUE(mono_spanning_cycle(c, std::span<const Vertex>(keep), 0)) << "k=" << k << " drop=" << drop;
    }
  }
}

TEST(Amplify, Examples) {
  const auto k3 = EdgeColouring::monochromatic(3, 0);
  const auto a = amplify(k3, AmplifyRule::Fresh);
  EXPECT_EQ(a.n(), 4);
  for (Vertex v = 0; v < 3; ++v) EXPECT_EQ(a(3, v), 1);
  EXPECT_EQ(min_cycle_partition(k3).count, 1);
  EXPECT_EQ(min_cycle_partition(a).count, 2);

  const auto k1 = amplify(EdgeColouring(1, {}), AmplifyRule::Fresh);
  EXPECT_EQ(k1.n(), 2);
  EXPECT_EQ(min_cycle_partition(k1).count, 1);

  const auto tri = gen_tri_config(1, 1, 1).first;  // every vertex sees 2 of the 3 colours
  const auto la = amplify(tri);
  for (Vertex v = 0; v < 3; ++v) {
    const auto seen = colours_at(tri, v);
    EXPECT_EQ(std::count(seen.begin(), seen.end(), la(3, v)), 0);
  }
  const auto k4 = EdgeColouring::monochromatic(4, 0);
  try {
    amplify(k4, AmplifyRule::LeastAbsent, true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoAbsentColour);
  }
  EXPECT_NO_THROW(amplify(k4, AmplifyRule::LeastAbsent, false));
}

TEST(Amplify, NewEdgesAvoidOldColours) {
  Rng rng(Seed{31});
  for (int it = 0; it < 100; ++it) {
    const auto c = testsupport::random_colouring(rng.uniform_int(1, 8), rng.uniform_int(1, 5), rng);
    for (auto rule : {AmplifyRule::LeastAbsent, AmplifyRule::Fresh}) {
      const auto a = amplify(c, rule);
      ASSERT_EQ(a.n(), c.n() + 1);
      for (Vertex v = 0; v < c.n(); ++v) {
        const auto seen = colours_at(c, v);
        EXPECT_EQ(std::count(seen.begin(), seen.end(), a(c.n(), v)), 0);
        for (Vertex u = 0; u < v; ++u) EXPECT_EQ(a(u, v), c(u, v));
      }
    }
  }
}

TEST(MeanInstance, Properties) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const int n = 4 + static_cast<int>(s % 7);
    const auto c = gen_mean_instance(n, Seed{s});
    ASSERT_EQ(c.n(), n);
    EXPECT_LE(mean_locality(c), Rational(2));
    EXPECT_EQ(max_locality(c), 3);
    EXPECT_FALSE(is_r_local(c, 2));
    int ones = 0, threes = 0;
    for (Vertex v = 0; v < n; ++v) {
      ones += locality(c, v) == 1;
      threes += locality(c, v) >= 3;
    }
    EXPECT_GE(ones, threes);
    EXPECT_GE(ones, 1);
  }
  EXPECT_THROW(gen_mean_instance(3, Seed{1}), Error);
  EXPECT_EQ(gen_mean_instance(9, Seed{4}), gen_mean_instance(9, Seed{4}));
}
