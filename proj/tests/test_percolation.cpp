#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "assouad_kit/estimators.hpp"
#include "assouad_kit/percolation.hpp"
#include "assouad_kit/pointset_io.hpp"
#include "test_support.hpp"

using namespace akit;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no akit::Error thrown";
  return ErrorKind::io;
}

using Cell = std::vector<std::int64_t>;

/// Reference simulation: every cell of every level is visited and kept iff its
/// parent is kept and its own draw is below p.
std::vector<std::set<Cell>> brute_force(const PercolationConfig& c) {
  std::vector<std::set<Cell>> kept(static_cast<std::size_t>(c.depth) + 1);
  kept[0].insert(Cell(static_cast<std::size_t>(c.d), 0));
  for (int k = 1; k <= c.depth; ++k) {
    const auto side = static_cast<std::int64_t>(std::llround(std::pow(c.m, k)));
    Cell cell(static_cast<std::size_t>(c.d), 0);
    const auto total = static_cast<std::int64_t>(std::llround(std::pow(side, c.d)));
    for (std::int64_t idx = 0; idx < total; ++idx) {
      auto rest = idx;
      Cell parent(cell.size());
      for (std::size_t j = 0; j < cell.size(); ++j) {
        cell[j] = rest % side;
        rest /= side;
        parent[j] = cell[j] / c.m;
      }
      if (kept[static_cast<std::size_t>(k - 1)].count(parent) && cell_uniform(c.seed, k, cell) < c.p)
        kept[static_cast<std::size_t>(k)].insert(cell);
    }
  }
  return kept;
}

std::set<Cell> cells_at(const PercolationTree& tree, int level) {
  std::set<Cell> out;
  for_each_kept(tree, level, [&](std::span<const std::int64_t> c) { out.insert(Cell(c.begin(), c.end())); });
  return out;
}

}  // namespace

TEST(Percolation, Extinction) {
  PercolationConfig c{2, 2, 1e-9, 6, 3};
  auto tree = simulate(c);
  EXPECT_EQ(tree.counts[0], 1u);
  EXPECT_EQ(tree.counts[1], 0u);
  EXPECT_FALSE(tree.survived());
  for (int k = 1; k <= c.depth; ++k) EXPECT_EQ(tree.counts[static_cast<std::size_t>(k)], 0u);
  EXPECT_EQ(kind_of([&] { tree_to_pointset(tree); }), ErrorKind::empty_set);
}

TEST(Percolation, NearlyCertainRetentionFillsTheGrid) {
  PercolationConfig c{2, 2, 1.0 - 1e-12, 4, 11};
  auto tree = simulate(c);
  for (int k = 0; k <= 4; ++k) EXPECT_EQ(tree.counts[static_cast<std::size_t>(k)], 1u << (2 * k));
}

TEST(Percolation, MatchesBruteForce) {
  for (const PercolationConfig c : {PercolationConfig{2, 2, 0.7, 6, 5}, PercolationConfig{1, 3, 0.6, 7, 9},
                                    PercolationConfig{3, 2, 0.5, 4, 2}, PercolationConfig{2, 3, 0.55, 4, 17}}) {
    auto ref = brute_force(c);
    for (std::size_t cap : {std::size_t{4}, std::size_t{1} << 30}) {
      auto tree = simulate(c, cap);
      for (int k = 0; k <= c.depth; ++k) {
        EXPECT_EQ(tree.counts[static_cast<std::size_t>(k)], ref[static_cast<std::size_t>(k)].size());
        EXPECT_EQ(cells_at(tree, k), ref[static_cast<std::size_t>(k)]);
      }
    }
  }
}

TEST(Percolation, CapOnlyChangesStorage) {
  PercolationConfig c{2, 2, 0.8, 10, 4};
  auto full = simulate(c);
  auto small = simulate(c, 50);
  EXPECT_EQ(full.counts, small.counts);
  EXPECT_GT(full.stored_levels(), small.stored_levels());
  EXPECT_EQ(cells_at(full, 10), cells_at(small, 10));
}

TEST(Percolation, Deterministic) {
  PercolationConfig c{2, 3, 0.6, 6, 123};
  auto a = simulate(c);
  auto b = simulate(c);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(a.levels, b.levels);
  EXPECT_EQ(a.hash, kPercolationHash);
  c.seed = 124;
  EXPECT_NE(simulate(c).counts, a.counts);
}

TEST(Percolation, ConfigValidation) {
  EXPECT_EQ(kind_of([] { simulate({2, 2, 0.0, 4, 0}); }), ErrorKind::invalid_argument);
  EXPECT_EQ(kind_of([] { simulate({2, 2, 1.0, 4, 0}); }), ErrorKind::invalid_argument);
  EXPECT_EQ(kind_of([] { simulate({2, 1, 0.5, 4, 0}); }), ErrorKind::invalid_argument);
  EXPECT_EQ(kind_of([] { simulate({2, 2, 0.5, -1, 0}); }), ErrorKind::invalid_argument);
  EXPECT_NEAR((PercolationConfig{2, 2, 0.8, 12, 0}.box_dimension()), 2.0 + std::log2(0.8), 1e-15);
  EXPECT_TRUE((PercolationConfig{2, 2, 0.26, 1, 0}.supercritical()));
  EXPECT_FALSE((PercolationConfig{2, 2, 0.25, 1, 0}.supercritical()));
}

TEST(PercolationProperties, CountsRespectParentage) {
  testing_support::Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    PercolationConfig c{rng.integer(1, 3), rng.integer(2, 3), rng.uniform(0.3, 0.95), rng.integer(1, 5), rng.next()};
    auto tree = simulate(c, 200);
    const auto fan = static_cast<std::uint64_t>(std::llround(std::pow(c.m, c.d)));
    EXPECT_EQ(tree.counts[0], 1u);
    for (int k = 0; k < c.depth; ++k) {
      const auto z = tree.counts[static_cast<std::size_t>(k)];
      const auto next = tree.counts[static_cast<std::size_t>(k + 1)];
      EXPECT_LE(next, fan * z);
      if (z == 0) {
        EXPECT_EQ(next, 0u);
      }
      auto parents = cells_at(tree, k);
      for (const auto& cell : cells_at(tree, k + 1)) {
        Cell parent(cell);
        for (auto& v : parent) v /= c.m;
        EXPECT_TRUE(parents.count(parent));
      }
    }
  }
}

TEST(PercolationProperties, NormalisedCountsAverageNearOne) {
  PercolationConfig c{2, 2, 0.8, 12, 1};
  const double growth = c.p * 4.0;
  double total = 0;
  int runs = 0;
  for (; runs < 50; ++c.seed) {
    auto tree = simulate(c);
    if (!tree.survived()) continue;
    total += static_cast<double>(tree.counts[12]) / std::pow(growth, 12);
    ++runs;
  }
  const double mean = total / runs;
  EXPECT_GE(mean, 0.5);
  EXPECT_LE(mean, 2.0);
}

TEST(FullSubgrid, WholeTreeWhenEverythingIsKept) {
  PercolationConfig c{2, 2, 1.0 - 1e-12, 4, 8};
  auto tree = simulate(c);
  auto root = largest_full_subgrid(tree, 4);
  ASSERT_TRUE(root.has_value());
  EXPECT_EQ(root->level, 0);
  EXPECT_EQ(root->coords, (Cell{0, 0}));
  EXPECT_EQ(full_subgrid_max_i(tree), 4);
  EXPECT_FALSE(largest_full_subgrid(tree, 5).has_value());
}

TEST(FullSubgrid, NoneAfterExtinction) {
  auto tree = simulate({2, 2, 1e-9, 5, 1});
  EXPECT_FALSE(largest_full_subgrid(tree, 1).has_value());
  EXPECT_EQ(full_subgrid_max_i(tree), 0);
  EXPECT_EQ(kind_of([&] { largest_full_subgrid(tree, -1); }), ErrorKind::invalid_argument);
}

TEST(FullSubgrid, WitnessAgreesWithBruteForce) {
  testing_support::Rng rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    PercolationConfig c{2, 2, rng.uniform(0.75, 0.95), 6, rng.next()};
    auto ref = brute_force(c);
    auto tree = simulate(c, rng.integer(0, 1) ? 10 : 1u << 20);
    // Reference: a level-k cell is full to depth i when all (m^d)^i descendants at level k+i are kept.
    auto is_full = [&](int level, const Cell& cell, int i) {
      const auto side = static_cast<std::int64_t>(std::llround(std::pow(c.m, i)));
      std::size_t n = 0;
      for (const auto& desc : ref[static_cast<std::size_t>(level + i)]) {
        bool inside = true;
        for (std::size_t j = 0; j < desc.size(); ++j) inside = inside && desc[j] / side == cell[j];
        n += inside;
      }
      return n == static_cast<std::size_t>(side * side);
    };
    int expected_max = 0;
    for (int i = 1; i <= c.depth; ++i) {
      bool any = false;
      for (int level = 0; level + i <= c.depth && !any; ++level)
        for (const auto& cell : ref[static_cast<std::size_t>(level)])
          if (is_full(level, cell, i)) {
            any = true;
            break;
          }
      auto w = largest_full_subgrid(tree, i);
      EXPECT_EQ(w.has_value(), any) << "i=" << i;
      if (w) {
        EXPECT_TRUE(is_full(w->level, w->coords, i));
      }
      if (any) expected_max = i;
    }
    EXPECT_EQ(full_subgrid_max_i(tree), expected_max);
  }
}

TEST(TreeToPointSet, RootOnly) {
  auto tree = simulate({2, 2, 0.5, 0, 0});
  auto set = tree_to_pointset(tree);
  ASSERT_EQ(set.size(), 1u);
  EXPECT_EQ(set.point(0)[0], 0.5);
  EXPECT_EQ(set.point(0)[1], 0.5);
  EXPECT_DOUBLE_EQ(set.resolution(), std::sqrt(2.0));
}

TEST(TreeToPointSet, FullGridAndRoundTrip) {
  auto tree = simulate({2, 2, 1.0 - 1e-12, 3, 0});
  auto set = tree_to_pointset(tree);
  ASSERT_EQ(set.size(), 64u);
  std::set<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < set.size(); ++i) pts.insert({set.point(i)[0], set.point(i)[1]});
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) EXPECT_TRUE(pts.count({(a + 0.5) / 8, (b + 0.5) / 8}));
  EXPECT_DOUBLE_EQ(set.resolution(), std::sqrt(2.0) / 8);

  auto random = tree_to_pointset(simulate_surviving({2, 2, 0.7, 9, 3}));
  std::stringstream io;
  write_pointset(io, random);
  auto back = read_pointset(io);
  ASSERT_EQ(back.size(), random.size());
  EXPECT_EQ(back.coords(), random.coords());
  EXPECT_EQ(back.resolution(), random.resolution());
}

TEST(TreeToPointSet, CapExceeded) {
  auto tree = simulate({2, 2, 1.0 - 1e-12, 5, 0});
  EXPECT_EQ(kind_of([&] { tree_to_pointset(tree, 100); }), ErrorKind::cap_exceeded);
}

TEST(TreeToPointSet, BoxDimensionConcentrates) {
  PercolationConfig c{2, 2, 0.8, 11, 1};
  double total = 0;
  const int runs = 5;
  for (int i = 0; i < runs; ++i) {
    auto tree = simulate_surviving(c);
    total += fit_box_dimension(tree_to_pointset(tree), 1, 11).estimate;
    c.seed = tree.config.seed + 1;
  }
  EXPECT_NEAR(total / runs, c.box_dimension(), 0.1);
}

TEST(LargeDeviation, GenerousEpsilonNeverViolated) {
  auto rep = large_deviation_check({2, 2, 0.8, 10, 1}, 100, 1.0);
  EXPECT_EQ(rep.runs, 100u);
  EXPECT_EQ(rep.violations, 0u);
  EXPECT_EQ(rep.seeds.size(), 100u);
}

TEST(LargeDeviation, ViolationsThinOutWithDepth) {
  auto rep = large_deviation_check({2, 2, 0.8, 12, 1}, 100, 0.05);
  ASSERT_EQ(rep.per_level.size(), 13u);
  std::size_t sum = 0;
  for (auto v : rep.per_level) sum += v;
  EXPECT_EQ(sum, rep.violations);
  for (std::size_t k = 2; k < rep.per_level.size(); ++k) EXPECT_LE(rep.per_level[k], rep.per_level[k - 1]) << k;
  EXPECT_EQ(rep.per_level.back(), 0u);
}

TEST(LargeDeviation, RefusesSubcritical) {
  EXPECT_EQ(kind_of([] { large_deviation_check({2, 2, 0.2, 6, 0}, 10, 0.1); }), ErrorKind::invalid_argument);
  EXPECT_EQ(kind_of([] { large_deviation_check({2, 2, 0.8, 6, 0}, 10, 0.0); }), ErrorKind::invalid_argument);
}
