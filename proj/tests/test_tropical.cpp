#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "tropmech/errors.hpp"
#include "tropmech/tropical.hpp"

using namespace tropmech;

namespace {

SquareMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Rational>> r;
  for (auto row : rows) {
    std::vector<Rational> v;
    for (long x : row) v.emplace_back(x);
    r.push_back(std::move(v));
  }
  return SquareMatrix::from_rows(r);
}

SquareMatrix random_matrix(oracle::Rng& rng, std::size_t m, long lo, long hi, bool zero_diagonal) {
  SquareMatrix a(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (i != j || !zero_diagonal) a(i, j) = Rational(oracle::uniform(rng, lo, hi));
    }
  }
  return a;
}

std::vector<Rational> vec(std::initializer_list<long> xs) {
  std::vector<Rational> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST(SquareMatrix, RejectsBadShapes) {
  EXPECT_THROW(SquareMatrix(1), UsageError);
  EXPECT_THROW(SquareMatrix(2, vec({1, 2, 3})), UsageError);
  EXPECT_THROW(SquareMatrix::from_rows({vec({0, 1}), vec({0})}), UsageError);
  EXPECT_TRUE(SquareMatrix(3).has_zero_diagonal());
  EXPECT_FALSE(mat({{1, 0}, {0, 0}}).has_zero_diagonal());
}

TEST(MinPlusMatvec, Examples) {
  EXPECT_EQ(min_plus_matvec(SquareMatrix(2), vec({0, 5})), vec({0, 0}));
  EXPECT_EQ(min_plus_matvec(mat({{0, 2}, {3, 0}}), vec({0, 0})), vec({0, 0}));
  EXPECT_EQ(min_plus_matvec(mat({{0, 2}, {3, 0}}), vec({0, -5})), vec({-3, -5}));
  EXPECT_THROW(min_plus_matvec(SquareMatrix(2), vec({0, 1, 2})), UsageError);
}

TEST(MinPlusProduct, MatchesDefinition) {
  const auto a = mat({{0, 2}, {3, 0}});
  const auto b = mat({{1, -1}, {4, 0}});
  EXPECT_EQ(min_plus_product(a, b), mat({{1, -1}, {4, 0}}));
  EXPECT_THROW(min_plus_product(SquareMatrix(2), SquareMatrix(3)), UsageError);
}

TEST(MinCycleMean, Examples) {
  EXPECT_EQ(min_cycle_mean(SquareMatrix(2)), Rational(0));
  EXPECT_EQ(min_cycle_mean(mat({{5, 1}, {2, 5}})), Rational(3, 2));
  EXPECT_EQ(min_cycle_mean(mat({{0, 2}, {3, 0}})), Rational(0));
  EXPECT_EQ(min_cycle_mean(mat({{9, 1, 9}, {9, 9, 1}, {1, 9, 9}})), Rational(1));
}

TEST(MinCycleMean, AgreesWithCycleEnumeration) {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t m = static_cast<std::size_t>(oracle::uniform(rng, 2, 6));
    const auto a = random_matrix(rng, m, -9, 9, false);
    ASSERT_EQ(min_cycle_mean(a), oracle::min_cycle_mean(a)) << "trial " << trial;
  }
}

TEST(KleeneStar, Examples) {
  EXPECT_EQ(kleene_star(mat({{0, 2}, {3, 0}})), mat({{0, 2}, {3, 0}}));
  EXPECT_EQ(kleene_star(mat({{0, 1}, {-1, 0}})), mat({{0, 1}, {-1, 0}}));
  EXPECT_EQ(kleene_star(mat({{0, 5}, {3, 0}})), mat({{0, 5}, {3, 0}}));
  EXPECT_EQ(kleene_star(mat({{0, 5, 1}, {0, 0, 0}, {0, 1, 0}})), mat({{0, 2, 1}, {0, 0, 0}, {0, 1, 0}}));
  EXPECT_THROW(kleene_star(mat({{1, 0}, {0, 0}})), UsageError);
}

TEST(KleeneStar, NegativeCycleCarriesWitness) {
  try {
    kleene_star(mat({{0, 1}, {-2, 0}}));
    FAIL() << "expected NegativeCycleError";
  } catch (const NegativeCycleError& e) {
    EXPECT_EQ(e.cycle(), (std::vector<std::size_t>{0, 1}));
    EXPECT_STREQ(e.what(), "negative cycle: 1 -> 2 -> 1");
  }
}

TEST(KleeneStar, ClosureProperties) {
  oracle::Rng rng(12);
  int closed = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = static_cast<std::size_t>(oracle::uniform(rng, 2, 5));
    const auto a = random_matrix(rng, m, -3, 9, true);
    const bool feasible = oracle::difference_feasible(a);
    ASSERT_LE(min_cycle_mean(a), Rational(0));
    ASSERT_EQ(min_cycle_mean(a).is_zero(), feasible);
    if (!feasible) {
      try {
        kleene_star(a);
        FAIL() << "expected NegativeCycleError";
      } catch (const NegativeCycleError& e) {
        // the witness really is a negative cycle
        const auto& c = e.cycle();
        ASSERT_FALSE(c.empty());
        Rational w;
        for (std::size_t i = 0; i < c.size(); ++i) w += a(c[i], c[(i + 1) % c.size()]);
        EXPECT_LT(w, Rational(0));
        EXPECT_EQ(*std::min_element(c.begin(), c.end()), c.front());
      }
      EXPECT_FALSE(find_negative_cycle(a).empty());
      continue;
    }
    ++closed;
    EXPECT_TRUE(find_negative_cycle(a).empty());
    const auto s = kleene_star(a);
    EXPECT_EQ(s, oracle::shortest_paths(a));
    EXPECT_EQ(min_plus_product(s, s), s);
    EXPECT_EQ(kleene_star(s), s);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) EXPECT_LE(s(i, j), a(i, j));
    }
  }
  EXPECT_GT(closed, 50);
}

TEST(CriticalGraph, Examples) {
  const auto only_loops = critical_graph(mat({{0, 2}, {3, 0}}));
  EXPECT_EQ(only_loops.edge_count(), 2u);
  EXPECT_TRUE(only_loops.has_edge(0, 0));
  EXPECT_TRUE(only_loops.has_edge(1, 1));
  EXPECT_EQ(critical_graph(mat({{0, 2}, {-2, 0}})).edge_count(), 4u);
  EXPECT_EQ(critical_graph(SquareMatrix(2)).edge_count(), 4u);
  EXPECT_THROW(critical_graph(mat({{0, 1}, {-2, 0}})), NegativeCycleError);
}

TEST(CriticalGraph, TransitiveOnRandomInstances) {
  oracle::Rng rng(13);
  int tested = 0;
  while (tested < 200) {
    // small range so zero cycles are common
    const auto a = random_matrix(rng, 4, -2, 2, true);
    if (!oracle::difference_feasible(a)) continue;
    ++tested;
    const auto g = critical_graph(a);
    for (std::size_t i = 0; i < 4; ++i) {
      ASSERT_TRUE(g.has_edge(i, i));
      for (std::size_t j = 0; j < 4; ++j) {
        ASSERT_EQ(g.has_edge(i, j), g.has_edge(j, i));
        for (std::size_t k = 0; k < 4; ++k) {
          if (g.has_edge(i, j) && g.has_edge(j, k)) {
            ASSERT_TRUE(g.has_edge(i, k));
          }
        }
      }
    }
  }
}

TEST(Scc, Examples) {
  DiGraph complete(3);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) complete.add_edge(i, j);
  }
  using Parts = std::vector<std::vector<std::size_t>>;
  EXPECT_EQ(strongly_connected_components(complete), (Parts{{0, 1, 2}}));

  DiGraph chain(3);
  for (std::size_t i = 0; i < 3; ++i) chain.add_edge(i, i);
  chain.add_edge(0, 1);
  EXPECT_EQ(strongly_connected_components(chain), (Parts{{0}, {1}, {2}}));

  DiGraph two(3);
  two.add_edge(0, 1);
  two.add_edge(1, 0);
  two.add_edge(1, 2);
  EXPECT_EQ(strongly_connected_components(two), (Parts{{0, 1}, {2}}));
}

TEST(Scc, InvariantUnderInsertionOrderAndMatchesReachability) {
  oracle::Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = static_cast<std::size_t>(oracle::uniform(rng, 1, 7));
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        if (oracle::uniform(rng, 0, 3) == 0) edges.emplace_back(i, j);
      }
    }
    DiGraph a(m);
    for (auto [u, v] : edges) a.add_edge(u, v);
    std::shuffle(edges.begin(), edges.end(), rng);
    DiGraph b(m);
    for (auto [u, v] : edges) b.add_edge(u, v);
    const auto parts = strongly_connected_components(a);
    ASSERT_EQ(parts, strongly_connected_components(b));

    // reachability by Warshall
    std::vector<std::vector<char>> reach(m, std::vector<char>(m, 0));
    for (std::size_t i = 0; i < m; ++i) {
      reach[i][i] = 1;
      for (std::size_t j = 0; j < m; ++j) reach[i][j] |= a.has_edge(i, j) ? 1 : 0;
    }
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) reach[i][j] |= static_cast<char>(reach[i][k] & reach[k][j]);
      }
    }
    std::vector<std::size_t> comp(m);
    for (std::size_t c = 0; c < parts.size(); ++c) {
      for (std::size_t v : parts[c]) comp[v] = c;
    }
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        ASSERT_EQ(comp[i] == comp[j], reach[i][j] && reach[j][i]);
      }
    }
  }
}
