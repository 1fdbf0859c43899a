#include "tropmech/arrangement.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <utility>

#include "tropmech/errors.hpp"

namespace tropmech {

bool Covector::contains(const OutcomeFunction& g) const {
  if (g.size() != r_ || g.outcomes() != m_) return false;
  for (std::size_t e = 0; e < r_; ++e) {
    if (!(*this)(g[e], e)) return false;
  }
  return true;
}

Covector covector(const TypeSpace& types, const Point& p) {
  const std::size_t m = types.outcomes();
  if (p.size() != m) throw UsageError("covector: dimension mismatch");
  Covector cv(m, types.size());
  for (std::size_t e = 0; e < types.size(); ++e) {
    const Point& t = types[e];
    Rational low = p[0] - t[0];
    for (std::size_t i = 1; i < m; ++i) low = min(low, p[i] - t[i]);
    for (std::size_t i = 0; i < m; ++i) {
      if (p[i] - t[i] == low) cv.set(i, e);
    }
  }
  return cv;
}

bool is_tropically_singular(std::span<const Rational> square, std::size_t k) {
  if (square.size() != k * k) throw UsageError("is_tropically_singular: not a k x k matrix");
  // best[mask]: minimum cost of matching the first popcount(mask) rows onto the
  // columns in mask, with the number of minimizers capped at 2.
  struct Cell {
    Rational cost;
    int count = 0;
  };
  const std::size_t full = (std::size_t{1} << k) - 1;
  std::vector<Cell> best(full + 1);
  best[0].count = 1;
  for (std::size_t mask = 0; mask < full; ++mask) {
    if (best[mask].count == 0) continue;
    const auto row = static_cast<std::size_t>(std::popcount(mask));
    for (std::size_t col = 0; col < k; ++col) {
      if (mask & (std::size_t{1} << col)) continue;
      Cell& next = best[mask | (std::size_t{1} << col)];
      Rational cost = best[mask].cost + square[row * k + col];
      if (next.count == 0 || cost < next.cost) {
        next.cost = std::move(cost);
        next.count = best[mask].count;
      } else if (cost == next.cost) {
        next.count = std::min(2, next.count + best[mask].count);
      }
    }
  }
  return best[full].count >= 2;
}

namespace {

// Calls visit(combination) for every k-subset of 0..n-1 in lexicographic
// order; stops early when visit returns false.
template <typename Visit>
bool for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    if (!visit(std::as_const(idx))) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

bool is_generic(const TypeSpace& types) {
  const std::size_t m = types.outcomes();
  std::vector<Rational> minor;
  for (std::size_t k = 2; k <= m; ++k) {
    minor.resize(k * k);
    const bool ok = for_each_combination(types.size(), k, [&](const std::vector<std::size_t>& rows) {
      return for_each_combination(m, k, [&](const std::vector<std::size_t>& cols) {
        for (std::size_t a = 0; a < k; ++a) {
          for (std::size_t b = 0; b < k; ++b) minor[a * k + b] = -types[rows[a]][cols[b]];
        }
        return !is_tropically_singular(minor, k);
      });
    });
    if (!ok) return false;
  }
  return true;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

namespace {

void check_budget(std::size_t m, std::size_t r, std::uint64_t budget) {
  mpz_class required;
  mpz_ui_pow_ui(required.get_mpz_t(), m, r);
  if (required > mpz_class(std::to_string(budget))) {
    throw BudgetExceededError(required.get_str(), budget);
  }
}

// Depth-first walk over assignments. Rows of the partial allocation matrix
// only decrease as entries are added, so a negative cycle among the finite
// entries can never disappear and the whole subtree is pruned.
class Enumerator {
 public:
  explicit Enumerator(const TypeSpace& types)
      : types_(types), m_(types.outcomes()), r_(types.size()),
        rows_(m_, std::vector<Rational>(m_)), filled_(m_, 0), assignment_(r_) {}

  std::map<SquareMatrix, BasicCell> run() {
    descend(0);
    return std::move(cells_);
  }

  std::size_t ic_count() const { return ic_count_; }

 private:
  std::size_t unused_outcomes() const {
    return static_cast<std::size_t>(std::count(filled_.begin(), filled_.end(), 0));
  }

  bool has_negative_cycle() const {
    // Floyd-Warshall over the finite entries of the partial matrix.
    std::vector<std::vector<std::optional<Rational>>> d(m_, std::vector<std::optional<Rational>>(m_));
    for (std::size_t i = 0; i < m_; ++i) {
      d[i][i] = Rational(0);
      if (!filled_[i]) continue;
      for (std::size_t j = 0; j < m_; ++j) d[i][j] = rows_[i][j];
    }
    for (std::size_t k = 0; k < m_; ++k) {
      for (std::size_t i = 0; i < m_; ++i) {
        if (!d[i][k]) continue;
        for (std::size_t j = 0; j < m_; ++j) {
          if (!d[k][j]) continue;
          Rational via = *d[i][k] + *d[k][j];
          if (!d[i][j] || via < *d[i][j]) d[i][j] = std::move(via);
        }
        if (d[i][i]->sign() < 0) return true;
      }
    }
    return false;
  }

  void descend(std::size_t e) {
    if (r_ - e < unused_outcomes()) return;
    if (e == r_) {
      OutcomeFunction g(assignment_, m_);
      if (!is_ic(types_, g)) return;
      SquareMatrix l(m_);
      for (std::size_t i = 0; i < m_; ++i) {
        for (std::size_t j = 0; j < m_; ++j) l(i, j) = rows_[i][j];
      }
      Polytrope payments = Polytrope::from_constraints(l);
      auto key = payments.closure();
      auto [it, inserted] = cells_.try_emplace(std::move(key), BasicCell{std::move(payments), {}});
      it->second.outcome_functions.push_back(std::move(g));
      ++ic_count_;
      return;
    }
    const Point& t = types_[e];
    for (std::size_t j = 0; j < m_; ++j) {
      const std::vector<Rational> saved = rows_[j];
      const char was_filled = filled_[j];
      for (std::size_t k = 0; k < m_; ++k) {
        if (k == j) continue;
        Rational v = t[j] - t[k];
        if (!was_filled || v < rows_[j][k]) rows_[j][k] = std::move(v);
      }
      filled_[j] = 1;
      assignment_[e] = j;
      if (!has_negative_cycle()) descend(e + 1);
      rows_[j] = saved;
      filled_[j] = was_filled;
    }
  }

  const TypeSpace& types_;
  std::size_t m_;
  std::size_t r_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<char> filled_;
  std::vector<std::size_t> assignment_;
  std::map<SquareMatrix, BasicCell> cells_;
  std::size_t ic_count_ = 0;
};

}  // namespace

BasicCellSet enumerate_ic_outcomes(const TypeSpace& types, std::uint64_t budget) {
  const std::size_t m = types.outcomes();
  const std::size_t r = types.size();
  if (r < m) throw UsageError("no surjective outcome function exists (r < m)");
  check_budget(m, r, budget);

  Enumerator walk(types);
  auto cells = walk.run();
  BasicCellSet out;
  out.ic_count = walk.ic_count();
  out.cells.reserve(cells.size());
  for (auto& [key, cell] : cells) out.cells.push_back(std::move(cell));
  return out;
}

void verify_generic_cells(const TypeSpace& types, const BasicCellSet& set) {
  const std::size_t m = types.outcomes();
  const auto expected = binomial(types.size() - 1, m - 1);
  if (set.cells.size() != expected) {
    throw CrossCheckViolation("generic type space has " + std::to_string(set.cells.size()) +
                              " basic cells, expected " + std::to_string(expected));
  }
  for (const auto& cell : set.cells) {
    if (cell.payments.dimension() != m - 1) {
      throw CrossCheckViolation("generic type space has a basic cell that is not full-dimensional");
    }
  }
}

std::vector<Polytrope> basic_cells(const TypeSpace& types, std::uint64_t budget) {
  auto set = enumerate_ic_outcomes(types, budget);
  if (is_generic(types)) verify_generic_cells(types, set);
  std::vector<Polytrope> out;
  out.reserve(set.cells.size());
  for (auto& cell : set.cells) out.push_back(std::move(cell.payments));
  return out;
}

Perturbation generic_perturbation(const TypeSpace& types, const Rational& epsilon, int attempt_limit) {
  if (epsilon.sign() <= 0) throw UsageError("epsilon must be positive");
  if (attempt_limit < 0) throw UsageError("attempt limit must be nonnegative");
  const std::size_t m = types.outcomes();
  const std::size_t r = types.size();

  // Largest offset is r^(m-1) * scale; start at the power-of-two scale that
  // keeps it within epsilon.
  Rational scale = epsilon;
  Rational largest(1);
  for (std::size_t c = 1; c < m; ++c) largest *= Rational(r == 0 ? 1 : r);
  while (epsilon < largest * scale) scale /= 2;

  for (int attempt = 0; attempt <= attempt_limit; ++attempt) {
    std::vector<Point> moved;
    moved.reserve(r);
    Rational displacement;
    for (std::size_t e = 0; e < r; ++e) {
      std::vector<Rational> coords(types[e].coords().begin(), types[e].coords().end());
      Rational power(1);
      for (std::size_t c = 1; c < m; ++c) {
        power *= Rational(e + 1);
        const Rational offset = power * scale;
        coords[c] += offset;
        displacement = max(displacement, offset);
      }
      moved.emplace_back(std::move(coords));
    }
    TypeSpace candidate(m, std::move(moved));
    if (is_generic(candidate)) return {std::move(candidate), scale, displacement};
    scale /= 2;
  }
  throw PerturbationFailedError("no generic perturbation found after " + std::to_string(attempt_limit) +
                                " halvings");
}

ConvergenceReport convergence_harness(const TypeSpace& types, std::span<const Rational> epsilons,
                                      std::optional<Rational> envelope_constant, std::uint64_t budget) {
  const std::size_t m = types.outcomes();
  if (m != 3) throw DimensionUnsupportedError("convergence harness needs m = 3");
  ConvergenceReport report;
  report.cells = basic_cells(types, budget);
  report.envelope_constant = envelope_constant.value_or(Rational(4 * m));

  for (const Rational& eps : epsilons) {
    ConvergenceStep step{eps, generic_perturbation(types, eps), {}, {}, {}, true};
    step.perturbed_cells = basic_cells(step.perturbation.types, budget);
    const Rational envelope = report.envelope_constant * eps;
    for (const Polytrope& cell : report.cells) {
      std::optional<HausdorffDistance> best;
      std::size_t best_index = 0;
      for (std::size_t c = 0; c < step.perturbed_cells.size(); ++c) {
        auto d = hausdorff_distance_2d(cell, step.perturbed_cells[c]);
        if (!best || d.squared < best->squared) {
          best = std::move(d);
          best_index = c;
        }
      }
      if (!best) throw CrossCheckViolation("generic perturbation has no basic cells");
      if (!best->at_most(envelope)) step.within_envelope = false;
      step.matched.push_back(best_index);
      step.distances.push_back(*std::move(best));
    }
    report.within_envelope = report.within_envelope && step.within_envelope;
    if (!report.steps.empty()) {
      const auto& prev = report.steps.back().distances;
      for (std::size_t i = 0; i < prev.size(); ++i) {
        if (prev[i].squared < step.distances[i].squared) report.non_increasing = false;
      }
    }
    report.steps.push_back(std::move(step));
  }
  return report;
}

ReVerdict is_re_type_space(const TypeSpace& types, std::uint64_t budget) {
  const auto set = enumerate_ic_outcomes(types, budget);
  ReVerdict verdict;
  for (std::size_t c = 0; c < set.cells.size(); ++c) {
    const Polytrope& cell = set.cells[c].payments;
    Point q = cell.interior_point();
    auto components = strongly_connected_components(graph_of_p(types, q));
    const bool connected = components.size() == 1;
    if (connected != (cell.dimension() == 0)) {
      throw CrossCheckViolation("graph of the interior point disagrees with payment-set dimension in cell " +
                                std::to_string(c + 1));
    }
    if (!connected && !verdict.failure) {
      verdict.revenue_equivalent = false;
      verdict.failure = ReFailure{c, cell, std::move(q), std::move(components)};
    }
  }
  return verdict;
}

}  // namespace tropmech
