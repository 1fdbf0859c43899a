#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "oracles.hpp"
#include "tropmech/arrangement.hpp"
#include "tropmech/errors.hpp"

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

Point pt(std::vector<Rational> xs) { return Point(std::move(xs)); }

TypeSpace space(std::size_t m, const std::vector<std::vector<long>>& rows) {
  return oracle::type_space(oracle::coords_of(rows), m);
}

// Three generic points with g = identity the only IC outcome function.
const TypeSpace& three_generic() {
  static const TypeSpace t = space(3, {{0, 3, 2}, {0, 8, 1}, {0, 2, 4}});
  return t;
}

// Entries 1 and 3 agree in the second coordinate; not generic.
const TypeSpace& three_degenerate() {
  static const TypeSpace t = space(3, {{0, 7, 5}, {0, 3, 7}, {0, 7, 3}});
  return t;
}

std::vector<std::size_t> singletons_of(const Covector& c) {
  std::vector<std::size_t> g;
  for (std::size_t e = 0; e < c.entries(); ++e) {
    std::size_t count = 0;
    std::size_t last = 0;
    for (std::size_t i = 0; i < c.outcomes(); ++i) {
      if (c(i, e)) {
        ++count;
        last = i;
      }
    }
    if (count != 1) return {};
    g.push_back(last);
  }
  return g;
}

Point random_point(oracle::Rng& rng, std::size_t m, long lo, long hi) {
  std::vector<Rational> v(m);
  for (std::size_t i = 1; i < m; ++i) v[i] = Rational(oracle::uniform(rng, lo, hi), 2);
  return Point(std::move(v));
}

}  // namespace

TEST(Covector, SeparatesTheTwoPayments) {
  const Covector at_p = covector(three_generic(), pt({Rational(0), Rational(6), Rational(3)}));
  EXPECT_EQ(singletons_of(at_p), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_TRUE(at_p.contains(OutcomeFunction({0, 1, 2}, 3)));

  const Covector at_q = covector(three_generic(), pt({Rational(0), Rational(5, 2), Rational(4)}));
  Covector expected(3, 3);
  expected.set(1, 0);
  expected.set(1, 1);
  expected.set(0, 2);
  expected.set(2, 2);
  EXPECT_EQ(at_q, expected);
  for (const auto& g : oracle::surjections(3, 3)) EXPECT_FALSE(at_q.contains(OutcomeFunction(g, 3)));
}

TEST(Covector, ApexLiesInEverySector) {
  const Covector c = covector(space(3, {{0, 1, 2}}), pt({Rational(0), Rational(1), Rational(2)}));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(c(i, 0));
}

TEST(TropicalSingularity, Examples) {
  const std::vector<Rational> zeros(4, Rational(0));
  EXPECT_TRUE(is_tropically_singular(zeros, 2));
  const std::vector<Rational> diag{Rational(0), Rational(1), Rational(0), Rational(0)};
  EXPECT_FALSE(is_tropically_singular(diag, 2));
  EXPECT_THROW(is_tropically_singular(zeros, 3), UsageError);
}

TEST(TropicalSingularity, AgreesWithPermutationOracle) {
  oracle::Rng rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = static_cast<std::size_t>(oracle::uniform(rng, 1, 4));
    std::vector<Rational> sq(k * k);
    for (auto& x : sq) x = Rational(oracle::uniform(rng, -2, 2));
    ASSERT_EQ(is_tropically_singular(sq, k), oracle::singular(sq, k));
  }
}

TEST(Genericity, Examples) {
  EXPECT_TRUE(is_generic(three_generic()));
  EXPECT_FALSE(is_generic(three_degenerate()));
  EXPECT_FALSE(is_generic(space(3, {{0, 1, 2}, {0, 1, 2}, {0, 5, -3}})));
  // the maximum permutation sum 33 is attained twice, the minimum -21 once;
  // the tie is a zero-weight 3-cycle and a dimension-0 basic cell
  const TypeSpace max_tie = space(3, {{0, 15, 8}, {0, 16, 18}, {0, -29, 17}});
  EXPECT_FALSE(is_generic(max_tie));
  const std::vector<Rational> raw{Rational(0), Rational(15), Rational(8), Rational(0), Rational(16),
                                  Rational(18), Rational(0), Rational(-29), Rational(17)};
  EXPECT_FALSE(is_tropically_singular(raw, 3));
  EXPECT_EQ(binomial(5, 2), 10u);
  EXPECT_EQ(binomial(2, 3), 0u);
  EXPECT_EQ(binomial(7, 0), 1u);
}

TEST(Genericity, AgreesWithSubsetOracle) {
  oracle::Rng rng(42);
  int generic = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = static_cast<std::size_t>(oracle::uniform(rng, 2, 4));
    const std::size_t r = static_cast<std::size_t>(oracle::uniform(rng, 1, 6));
    const auto c = oracle::random_coords_with_copies(rng, m, r, -6, 6);
    const bool verdict = is_generic(oracle::type_space(c, m));
    ASSERT_EQ(verdict, oracle::generic(c, m)) << "trial " << trial;
    generic += verdict ? 1 : 0;
  }
  EXPECT_GT(generic, 30);
}

TEST(Enumerate, UniqueIcOutcomeOnThreeGenericPoints) {
  const auto set = enumerate_ic_outcomes(three_generic());
  EXPECT_EQ(set.ic_count, 1u);
  ASSERT_EQ(set.cells.size(), 1u);
  EXPECT_EQ(set.cells[0].outcome_functions, (std::vector<OutcomeFunction>{OutcomeFunction({0, 1, 2}, 3)}));
  EXPECT_EQ(set.cells[0].payments.closure(), mat({{0, -3, -2}, {8, 0, 6}, {4, 1, 0}}));
  EXPECT_EQ(set.cells[0].payments.dimension(), 2u);
}

TEST(Enumerate, DegenerateInstanceSharesALowerDimensionalCell) {
  const auto set = enumerate_ic_outcomes(three_degenerate());
  EXPECT_EQ(set.ic_count, 2u);
  ASSERT_EQ(set.cells.size(), 1u);
  EXPECT_EQ(set.cells[0].payments.closure(), mat({{0, -7, -5}, {7, 0, 2}, {7, 0, 0}}));
  EXPECT_EQ(set.cells[0].payments.dimension(), 1u);
  EXPECT_EQ(set.cells[0].outcome_functions,
            (std::vector<OutcomeFunction>{OutcomeFunction({0, 2, 1}, 3), OutcomeFunction({1, 2, 0}, 3)}));
  EXPECT_THROW(verify_generic_cells(three_degenerate(), set), CrossCheckViolation);
}

TEST(Enumerate, Errors) {
  EXPECT_THROW(enumerate_ic_outcomes(space(3, {{0, 1, 2}, {0, 2, 1}})), UsageError);
  try {
    enumerate_ic_outcomes(three_generic(), 26);
    FAIL() << "expected BudgetExceededError";
  } catch (const BudgetExceededError& e) {
    EXPECT_EQ(e.required(), "27");
    EXPECT_EQ(e.budget(), 26u);
  }
  EXPECT_NO_THROW(enumerate_ic_outcomes(three_generic(), 27));
}

TEST(Enumerate, AgreesWithBruteForce) {
  oracle::Rng rng(43);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t m = static_cast<std::size_t>(oracle::uniform(rng, 2, 3));
    const std::size_t r = static_cast<std::size_t>(oracle::uniform(rng, static_cast<long>(m), 6));
    const auto c = oracle::random_coords_with_copies(rng, m, r, -3, 3);
    std::map<std::vector<Rational>, std::vector<std::vector<std::size_t>>> expected;
    std::size_t count = 0;
    for (const auto& g : oracle::surjections(m, r)) {
      const auto l = oracle::allocation(c, g, m);
      if (!oracle::difference_feasible(l)) continue;
      ++count;
      const SquareMatrix closed = oracle::shortest_paths(l);
      const auto key = closed.entries();
      expected[std::vector<Rational>(key.begin(), key.end())].push_back(g);
    }
    const auto set = enumerate_ic_outcomes(oracle::type_space(c, m));
    ASSERT_EQ(set.ic_count, count);
    ASSERT_EQ(set.cells.size(), expected.size());
    for (const auto& cell : set.cells) {
      const SquareMatrix closed = cell.payments.closure();
      const auto key = closed.entries();
      auto it = expected.find(std::vector<Rational>(key.begin(), key.end()));
      ASSERT_NE(it, expected.end());
      std::vector<std::vector<std::size_t>> got;
      for (const auto& g : cell.outcome_functions) got.push_back(g.assignment());
      ASSERT_EQ(got, it->second);
      ASSERT_EQ(cell.payments.dimension(), oracle::polytrope_dimension(cell.payments.closure()));
    }
  }
}

TEST(Enumerate, GenericCountIsBinomial) {
  oracle::Rng rng(44);
  for (std::size_t m : {2u, 3u, 4u}) {
    for (std::size_t r = m; r <= m + 3; ++r) {
      const auto types = oracle::type_space(oracle::random_generic(rng, m, r, -20, 20), m);
      const auto cells = basic_cells(types);
      ASSERT_EQ(cells.size(), binomial(r - 1, m - 1)) << "m=" << m << " r=" << r;
      for (const auto& cell : cells) ASSERT_EQ(cell.dimension(), m - 1);
      ASSERT_EQ(enumerate_ic_outcomes(types).ic_count, cells.size());
    }
  }
}

TEST(Duality, PaymentsOfIcOutcomeFunctionsLieInTheirCovectors) {
  oracle::Rng rng(45);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = static_cast<std::size_t>(oracle::uniform(rng, 2, 3));
    const std::size_t r = static_cast<std::size_t>(oracle::uniform(rng, static_cast<long>(m), 5));
    const auto types = oracle::type_space(oracle::random_coords_with_copies(rng, m, r, -4, 4), m);
    for (const auto& cell : enumerate_ic_outcomes(types).cells) {
      const Point q = cell.payments.interior_point();
      const Covector c = covector(types, q);
      for (const auto& g : cell.outcome_functions) ASSERT_TRUE(c.contains(g));
      for (const Point& v : cell.payments.tropical_vertices()) {
        for (const auto& g : cell.outcome_functions) ASSERT_TRUE(covector(types, v).contains(g));
      }
    }
  }
}

TEST(Duality, EveryOutcomeGraphInACovectorIsIcThere) {
  oracle::Rng rng(46);
  int hits = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t m = static_cast<std::size_t>(oracle::uniform(rng, 2, 3));
    const std::size_t r = static_cast<std::size_t>(oracle::uniform(rng, static_cast<long>(m), 5));
    const auto types = oracle::type_space(oracle::random_coords_with_copies(rng, m, r, -4, 4), m);
    const Point p = random_point(rng, m, -10, 10);
    const Covector c = covector(types, p);
    for (const auto& a : oracle::surjections(m, r)) {
      const OutcomeFunction g(a, m);
      if (!c.contains(g)) continue;
      ++hits;
      ASSERT_TRUE(is_ic(types, g));
      ASSERT_TRUE(ic_payments(types, g).contains(p));
    }
  }
  EXPECT_GT(hits, 50);
}

TEST(Duality, MechanismFromPaymentIsComplete) {
  oracle::Rng rng(47);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = static_cast<std::size_t>(oracle::uniform(rng, 2, 4));
    const std::size_t r = static_cast<std::size_t>(oracle::uniform(rng, static_cast<long>(m), 7));
    const auto inst = oracle::random_ic_instance(rng, m, r, -4, 4);
    const auto types = oracle::type_space(inst.types, m);
    const OutcomeFunction g(inst.g, m);
    ASSERT_TRUE(is_ic(types, g));
    ASSERT_TRUE(ic_payments(types, g).contains(Point(inst.payment)));
    ASSERT_TRUE(covector(types, Point(inst.payment)).contains(g));
  }
}

TEST(Duality, CovectorIsConstantOnGenericCellInteriors) {
  oracle::Rng rng(48);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t m = static_cast<std::size_t>(oracle::uniform(rng, 2, 3));
    const std::size_t r = static_cast<std::size_t>(oracle::uniform(rng, static_cast<long>(m), 5));
    const auto types = oracle::type_space(oracle::random_generic(rng, m, r, -20, 20), m);
    for (const auto& cell : enumerate_ic_outcomes(types).cells) {
      ASSERT_EQ(cell.outcome_functions.size(), 1u);
      const auto& g = cell.outcome_functions.front();
      ASSERT_EQ(singletons_of(covector(types, cell.payments.interior_point())), g.assignment());
      // midpoints between the interior point and each vertex stay interior
      const Point q = cell.payments.interior_point();
      for (const Point& v : cell.payments.tropical_vertices()) {
        std::vector<Rational> mid(m);
        for (std::size_t i = 0; i < m; ++i) mid[i] = (q[i] + v[i]) / Rational(2);
        ASSERT_EQ(singletons_of(covector(types, Point(mid))), g.assignment());
      }
    }
  }
}

TEST(Perturbation, SeparatesRepeatedPoints) {
  for (std::size_t m : {3u, 4u}) {
    std::vector<std::vector<long>> rows(m + 1, std::vector<long>(m, 0));
    rows[m - 1][1] = 1;
    const TypeSpace types = space(m, rows);
    ASSERT_FALSE(is_generic(types));
    const Rational eps(1, 10);
    const auto pert = generic_perturbation(types, eps);
    EXPECT_TRUE(is_generic(pert.types));
    EXPECT_LE(pert.max_displacement, eps);
    EXPECT_GT(pert.scale, Rational(0));
    ASSERT_EQ(pert.types.size(), types.size());
    for (std::size_t e = 0; e < types.size(); ++e) {
      for (std::size_t i = 0; i < m; ++i) EXPECT_LE((pert.types[e][i] - types[e][i]).abs(), eps);
    }
    const auto again = generic_perturbation(types, eps);
    EXPECT_EQ(again.types.entries(), pert.types.entries());
    EXPECT_EQ(basic_cells(pert.types).size(), binomial(m, m - 1));
  }
}

TEST(Perturbation, RejectsBadArguments) {
  EXPECT_THROW(generic_perturbation(three_generic(), Rational(0)), UsageError);
  EXPECT_THROW(generic_perturbation(three_generic(), Rational(1), -1), UsageError);
}

TEST(Perturbation, RandomMultisetsBecomeGeneric) {
  oracle::Rng rng(49);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = static_cast<std::size_t>(oracle::uniform(rng, 2, 4));
    const std::size_t r = static_cast<std::size_t>(oracle::uniform(rng, 1, 6));
    const auto types = oracle::type_space(oracle::random_coords_with_copies(rng, m, r, -3, 3), m);
    const Rational eps(1, oracle::uniform(rng, 1, 50));
    const auto pert = generic_perturbation(types, eps);
    ASSERT_TRUE(oracle::generic(
        [&] {
          oracle::Coords c;
          for (const Point& t : pert.types.entries()) c.emplace_back(t.coords().begin(), t.coords().end());
          return c;
        }(),
        m));
    ASSERT_LE(pert.max_displacement, eps);
  }
}

TEST(Convergence, DegenerateInstanceConvergesWithinEnvelope) {
  const std::vector<Rational> eps{Rational(1, 4), Rational(1, 16), Rational(1, 64)};
  const auto report = convergence_harness(three_degenerate(), eps, Rational(12));
  ASSERT_EQ(report.cells.size(), 1u);
  ASSERT_EQ(report.steps.size(), 3u);
  EXPECT_TRUE(report.within_envelope);
  EXPECT_TRUE(report.non_increasing);
  for (const auto& step : report.steps) {
    ASSERT_EQ(step.perturbed_cells.size(), 1u);
    EXPECT_EQ(step.perturbed_cells[step.matched[0]].dimension(), 2u);
    EXPECT_TRUE(step.distances[0].at_most(Rational(12) * step.epsilon));
  }
  EXPECT_THROW(convergence_harness(space(2, {{0, 1}, {0, 2}}), eps), DimensionUnsupportedError);
}

TEST(ReTypeSpace, Examples) {
  EXPECT_TRUE(is_re_type_space(space(2, {{0, 1}, {0, 1}})).revenue_equivalent);
  EXPECT_TRUE(is_re_type_space(space(3, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}})).revenue_equivalent);

  const auto verdict = is_re_type_space(three_generic());
  EXPECT_FALSE(verdict.revenue_equivalent);
  ASSERT_TRUE(verdict.failure.has_value());
  EXPECT_EQ(verdict.failure->cell_index, 0u);
  EXPECT_EQ(verdict.failure->components.size(), 3u);
  EXPECT_EQ(verdict.failure->point, verdict.failure->cell.interior_point());

  const auto degenerate = is_re_type_space(three_degenerate());
  EXPECT_FALSE(degenerate.revenue_equivalent);
  EXPECT_EQ(degenerate.failure->components.size(), 2u);
}

TEST(ReTypeSpace, AgreesWithPointCellsAndGraphs) {
  oracle::Rng rng(50);
  int re = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t m = static_cast<std::size_t>(oracle::uniform(rng, 2, 3));
    const std::size_t r = static_cast<std::size_t>(oracle::uniform(rng, static_cast<long>(m), 5));
    // narrow range: copies and coincidences are common
    const auto types = oracle::type_space(oracle::random_coords_with_copies(rng, m, r, -1, 1), m);
    const auto verdict = is_re_type_space(types);
    bool all_points = true;
    for (const auto& cell : basic_cells(types)) {
      const std::size_t dim = oracle::polytrope_dimension(cell.closure());
      all_points = all_points && dim == 0;
      ASSERT_EQ(strongly_connected_components(graph_of_p(types, cell.interior_point())).size(), dim + 1);
    }
    ASSERT_EQ(verdict.revenue_equivalent, all_points) << "trial " << trial;
    ASSERT_EQ(verdict.failure.has_value(), !all_points);
    re += all_points ? 1 : 0;
  }
  EXPECT_GT(re, 3);
}

TEST(Duality, ContainedOutcomeGraphsAreExactlyTheIcMechanismsAtP) {
  oracle::Rng rng(51);
  int outside = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t m = static_cast<std::size_t>(oracle::uniform(rng, 2, 3));
    const std::size_t r = static_cast<std::size_t>(oracle::uniform(rng, static_cast<long>(m), 5));
    const auto types = oracle::type_space(oracle::random_coords_with_copies(rng, m, r, -3, 3), m);
    const auto set = enumerate_ic_outcomes(types);
    std::vector<Point> probes;
    for (int i = 0; i < 4; ++i) probes.push_back(random_point(rng, m, -8, 8));
    for (const auto& cell : set.cells) {
      probes.push_back(cell.payments.interior_point());
      for (const Point& v : cell.payments.tropical_vertices()) probes.push_back(v);
    }
    for (const Point& p : probes) {
      std::vector<std::vector<std::size_t>> expected;
      bool basic = false;
      for (const auto& cell : set.cells) {
        if (!cell.payments.contains(p)) continue;
        basic = true;
        for (const auto& g : cell.outcome_functions) expected.push_back(g.assignment());
      }
      std::sort(expected.begin(), expected.end());
      std::vector<std::vector<std::size_t>> contained;
      const Covector c = covector(types, p);
      for (const auto& a : oracle::surjections(m, r)) {
        if (c.contains(OutcomeFunction(a, m))) contained.push_back(a);
      }
      ASSERT_EQ(contained, expected);
      if (!basic) {
        ++outside;
        ASSERT_TRUE(contained.empty());
      }
    }
  }
  EXPECT_GT(outside, 50);
}
