#include "tropmech/mechanism.hpp"

#include <algorithm>

#include "tropmech/errors.hpp"

namespace tropmech {

TypeSpace::TypeSpace(std::size_t m, std::vector<Point> entries) : m_(m), entries_(std::move(entries)) {
  if (m_ < 2) throw UsageError("type space needs at least 2 outcomes");
  for (const auto& t : entries_) {
    if (t.size() != m_) throw UsageError("type has " + std::to_string(t.size()) +
                                         " coordinates, expected " + std::to_string(m_));
  }
}

OutcomeFunction::OutcomeFunction(std::vector<std::size_t> assignment, std::size_t m)
    : assignment_(std::move(assignment)), m_(m) {
  if (assignment_.size() < m_) throw UsageError("no surjective outcome function exists (r < m)");
  std::vector<char> hit(m_, 0);
  for (std::size_t a : assignment_) {
    if (a >= m_) throw UsageError("outcome " + std::to_string(a + 1) + " out of range");
    hit[a] = 1;
  }
  if (std::count(hit.begin(), hit.end(), 0) != 0) {
    throw UsageError("outcome function is not surjective");
  }
}

namespace {

void require_compatible(const TypeSpace& types, const OutcomeFunction& g) {
  if (types.size() != g.size()) throw UsageError("outcome function length does not match type space");
  if (types.outcomes() != g.outcomes()) throw UsageError("outcome count mismatch");
}

void require_sector_matrix(const SquareMatrix& l, std::size_t m) {
  if (l.size() != m) throw UsageError("matrix dimension does not match type space");
  if (!l.has_zero_diagonal()) throw UsageError("matrix must have zero diagonal");
}

bool in_sector(const SquareMatrix& l, std::size_t j, const Point& t) {
  for (std::size_t k = 0; k < l.size(); ++k) {
    if (t[j] - t[k] < l(j, k)) return false;
  }
  return true;
}

bool on_tight_face(const SquareMatrix& l, std::size_t j, std::size_t k, const Point& t) {
  return t[j] - t[k] == l(j, k) && in_sector(l, j, t);
}

// Entries e with t_e in sector j and on the face t_j - t_k = L_jk.
std::vector<std::vector<std::vector<std::size_t>>> tight_sets(const SquareMatrix& l,
                                                              const TypeSpace& types) {
  const std::size_t m = l.size();
  std::vector<std::vector<std::vector<std::size_t>>> sets(m, std::vector<std::vector<std::size_t>>(m));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      if (j == k) continue;
      for (std::size_t e = 0; e < types.size(); ++e) {
        if (on_tight_face(l, j, k, types[e])) sets[j][k].push_back(e);
      }
    }
  }
  return sets;
}

class RealizationSearch {
 public:
  RealizationSearch(const SquareMatrix& l, const TypeSpace& types)
      : l_(l), types_(types), m_(l.size()), r_(types.size()), tight_(tight_sets(l, types)) {
    options_.resize(r_);
    for (std::size_t e = 0; e < r_; ++e) {
      for (std::size_t j = 0; j < m_; ++j) {
        if (in_sector(l_, j, types_[e])) options_[e].push_back(j);
      }
    }
  }

  std::optional<OutcomeFunction> run() {
    if (r_ < m_) return std::nullopt;
    for (const auto& opts : options_) {
      if (opts.empty()) return std::nullopt;
    }
    for (std::size_t j = 0; j < m_; ++j) {
      for (std::size_t k = 0; k < m_; ++k) {
        if (j != k && tight_[j][k].empty()) return std::nullopt;
      }
    }
    assignment_.assign(r_, kUnassigned);
    if (!descend(0)) return std::nullopt;
    return OutcomeFunction(assignment_, m_);
  }

 private:
  static constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

  bool has_option(std::size_t e, std::size_t j) const {
    return std::find(options_[e].begin(), options_[e].end(), j) != options_[e].end();
  }

  // Every tight face (j,k) is covered by an entry assigned j, or can still be.
  bool coverable() const {
    for (std::size_t j = 0; j < m_; ++j) {
      for (std::size_t k = 0; k < m_; ++k) {
        if (j == k) continue;
        const bool ok = std::any_of(tight_[j][k].begin(), tight_[j][k].end(), [&](std::size_t e) {
          return assignment_[e] == j || (assignment_[e] == kUnassigned && has_option(e, j));
        });
        if (!ok) return false;
      }
    }
    return true;
  }

  bool descend(std::size_t e) {
    if (e == r_) {
      std::vector<char> hit(m_, 0);
      for (std::size_t a : assignment_) hit[a] = 1;
      if (std::count(hit.begin(), hit.end(), 0) != 0) return false;
      return allocation_matrix(types_, OutcomeFunction(assignment_, m_)) == l_;
    }
    for (std::size_t j : options_[e]) {
      assignment_[e] = j;
      if (coverable() && descend(e + 1)) return true;
    }
    assignment_[e] = kUnassigned;
    return false;
  }

  const SquareMatrix& l_;
  const TypeSpace& types_;
  std::size_t m_;
  std::size_t r_;
  std::vector<std::vector<std::vector<std::size_t>>> tight_;
  std::vector<std::vector<std::size_t>> options_;
  std::vector<std::size_t> assignment_;
};

}  // namespace

SquareMatrix allocation_matrix(const TypeSpace& types, const OutcomeFunction& g) {
  require_compatible(types, g);
  const std::size_t m = types.outcomes();
  SquareMatrix l(m);
  std::vector<char> seen(m, 0);
  for (std::size_t e = 0; e < types.size(); ++e) {
    const std::size_t j = g[e];
    const Point& t = types[e];
    for (std::size_t k = 0; k < m; ++k) {
      if (k == j) continue;
      Rational d = t[j] - t[k];
      if (!seen[j] || d < l(j, k)) l(j, k) = std::move(d);
    }
    seen[j] = 1;
  }
  return l;
}

bool is_ic(const TypeSpace& types, const OutcomeFunction& g) {
  return min_cycle_mean(allocation_matrix(types, g)).is_zero();
}

Polytrope ic_payments(const TypeSpace& types, const OutcomeFunction& g) {
  try {
    return Polytrope::from_constraints(allocation_matrix(types, g));
  } catch (const NegativeCycleError& e) {
    throw NotIcError(e.cycle());
  }
}

bool is_weakly_monotone(const SquareMatrix& l) {
  for (std::size_t j = 0; j < l.size(); ++j) {
    for (std::size_t k = j + 1; k < l.size(); ++k) {
      if ((l(j, k) + l(k, j)).sign() < 0) return false;
    }
  }
  return true;
}

bool is_weakly_monotone(const TypeSpace& types, const OutcomeFunction& g) {
  return is_weakly_monotone(allocation_matrix(types, g));
}

SectorMembership sector_membership(const SquareMatrix& l, std::size_t j, const Point& t) {
  if (!l.has_zero_diagonal()) throw UsageError("matrix must have zero diagonal");
  if (t.size() != l.size() || j >= l.size()) throw UsageError("sector_membership: dimension mismatch");
  SectorMembership out;
  for (std::size_t k = 0; k < l.size(); ++k) {
    if (k == j) continue;
    const auto c = t[j] - t[k] <=> l(j, k);
    if (c < 0) return {SectorMembership::Kind::Outside, {}};
    if (c == 0) out.tight.push_back(k);
  }
  out.kind = out.tight.empty() ? SectorMembership::Kind::Interior : SectorMembership::Kind::Boundary;
  return out;
}

SeparationReport separates(const SquareMatrix& l, const TypeSpace& types) {
  require_sector_matrix(l, types.outcomes());
  const std::size_t m = l.size();
  if (types.size() < m) return {false, "no surjective outcome function exists (r < m)"};
  for (std::size_t e = 0; e < types.size(); ++e) {
    bool covered = false;
    for (std::size_t j = 0; j < m && !covered; ++j) covered = in_sector(l, j, types[e]);
    if (!covered) return {false, "type " + std::to_string(e + 1) + " lies in no sector"};
  }
  const auto tight = tight_sets(l, types);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < m; ++k) {
      if (j == k) continue;
      const std::string pair = "(" + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")";
      if (tight[j][k].empty()) return {false, "no type on tight face " + pair};
      if (j < k && tight[j][k].size() == 1 && tight[j][k] == tight[k][j]) {
        return {false, "tight faces " + pair + " share the single type " +
                           std::to_string(tight[j][k].front() + 1)};
      }
    }
  }
  return {true, ""};
}

std::optional<OutcomeFunction> try_realize(const SquareMatrix& l, const TypeSpace& types) {
  require_sector_matrix(l, types.outcomes());
  return RealizationSearch(l, types).run();
}

bool is_realizable(const SquareMatrix& l, const TypeSpace& types) {
  if (!separates(l, types).separates) return false;
  return try_realize(l, types).has_value();
}

OutcomeFunction realize(const SquareMatrix& l, const TypeSpace& types) {
  auto g = try_realize(l, types);
  if (!g) {
    const auto report = separates(l, types);
    throw NotRealizableError(report.separates ? "no outcome function realizes the matrix"
                                              : "matrix does not separate the type space: " + report.reason);
  }
  return *std::move(g);
}

namespace {

// Max-plus sectors of the hyperplane at p containing t: argmax_i t_i - p_i.
std::vector<std::size_t> max_sectors(const Point& t, const Point& p) {
  std::vector<std::size_t> best{0};
  Rational top = t[0] - p[0];
  for (std::size_t i = 1; i < t.size(); ++i) {
    Rational v = t[i] - p[i];
    if (top < v) {
      top = std::move(v);
      best.assign(1, i);
    } else if (v == top) {
      best.push_back(i);
    }
  }
  return best;
}

}  // namespace

DiGraph graph_of_p(const TypeSpace& types, const Point& p) {
  const std::size_t m = types.outcomes();
  if (p.size() != m) throw UsageError("graph_of_p: dimension mismatch");
  DiGraph g(m);
  for (std::size_t i = 0; i < m; ++i) g.add_edge(i, i);
  for (const Point& t : types.entries()) {
    const auto sectors = max_sectors(t, p);
    for (std::size_t a : sectors) {
      for (std::size_t b : sectors) g.add_edge(a, b);
    }
  }
  return g;
}

bool is_revenue_equivalent_mechanism(const TypeSpace& types, const OutcomeFunction& g) {
  if (!is_ic(types, g)) return false;
  return ic_payments(types, g).dimension() == 0;
}

BoundarySlack boundary_slack(const TypeSpace& types, const OutcomeFunction& g, const Point& p) {
  const SquareMatrix l = allocation_matrix(types, g);
  const std::size_t m = l.size();
  if (p.size() != m) throw UsageError("payment has wrong dimension");

  SquareMatrix slack(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      slack(i, j) = l(i, j) - (p[i] - p[j]);
      if (slack(i, j).sign() < 0) throw UsageError("payment is not incentive compatible for g");
    }
  }

  DiGraph tight(m);
  for (std::size_t e = 0; e < types.size(); ++e) {
    const std::size_t i = g[e];
    for (std::size_t j : max_sectors(types[e], p)) tight.add_edge(i, j);
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (slack(i, j).is_zero() != tight.has_edge(i, j)) {
        throw CrossCheckViolation("zero slack and tight face disagree at (" + std::to_string(i + 1) +
                                  "," + std::to_string(j + 1) + ")");
      }
    }
  }
  return {std::move(slack), std::move(tight)};
}

}  // namespace tropmech
