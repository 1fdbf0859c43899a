#include "tropmech/tropical.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "tropmech/errors.hpp"

namespace tropmech {

SquareMatrix::SquareMatrix(std::size_t m) : SquareMatrix(m, std::vector<Rational>(m * m)) {}

SquareMatrix::SquareMatrix(std::size_t m, std::vector<Rational> row_major)
    : m_(m), entries_(std::move(row_major)) {
  if (m_ < 2) throw UsageError("matrix dimension must be at least 2");
  if (entries_.size() != m_ * m_) throw UsageError("matrix entry count does not match dimension");
}

SquareMatrix SquareMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  const std::size_t m = rows.size();
  std::vector<Rational> flat;
  flat.reserve(m * m);
  for (const auto& row : rows) {
    if (row.size() != m) throw UsageError("matrix is not square");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return SquareMatrix(m, std::move(flat));
}

bool SquareMatrix::has_zero_diagonal() const {
  for (std::size_t i = 0; i < m_; ++i) {
    if (!(*this)(i, i).is_zero()) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const SquareMatrix& a, const SquareMatrix& b) {
  if (auto c = a.m_ <=> b.m_; c != 0) return c;
  for (std::size_t k = 0; k < a.entries_.size(); ++k) {
    if (auto c = a.entries_[k] <=> b.entries_[k]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

void DiGraph::add_edge(std::size_t from, std::size_t to) {
  if (from >= m_ || to >= m_) throw UsageError("edge endpoint out of range");
  adj_[from * m_ + to] = 1;
}

std::size_t DiGraph::edge_count() const {
  return static_cast<std::size_t>(std::count(adj_.begin(), adj_.end(), 1));
}

std::vector<Rational> min_plus_matvec(const SquareMatrix& a, std::span<const Rational> x) {
  const std::size_t m = a.size();
  if (x.size() != m) throw UsageError("min_plus_matvec: dimension mismatch");
  std::vector<Rational> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    Rational best = a(i, 0) + x[0];
    for (std::size_t j = 1; j < m; ++j) {
      Rational v = a(i, j) + x[j];
      if (v < best) best = std::move(v);
    }
    out[i] = std::move(best);
  }
  return out;
}

SquareMatrix min_plus_product(const SquareMatrix& a, const SquareMatrix& b) {
  const std::size_t m = a.size();
  if (b.size() != m) throw UsageError("min_plus_product: dimension mismatch");
  SquareMatrix out(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      Rational best = a(i, 0) + b(0, j);
      for (std::size_t k = 1; k < m; ++k) {
        Rational v = a(i, k) + b(k, j);
        if (v < best) best = std::move(v);
      }
      out(i, j) = std::move(best);
    }
  }
  return out;
}

Rational min_cycle_mean(const SquareMatrix& a) {
  const std::size_t n = a.size();
  // walk[k][v]: minimum weight of a walk with exactly k edges from node 0 to v
  std::vector<std::vector<std::optional<Rational>>> walk(
      n + 1, std::vector<std::optional<Rational>>(n));
  walk[0][0] = Rational(0);
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t v = 0; v < n; ++v) {
      std::optional<Rational> best;
      for (std::size_t u = 0; u < n; ++u) {
        if (!walk[k - 1][u]) continue;
        Rational w = *walk[k - 1][u] + a(u, v);
        if (!best || w < *best) best = std::move(w);
      }
      walk[k][v] = std::move(best);
    }
  }

  std::optional<Rational> result;
  for (std::size_t v = 0; v < n; ++v) {
    if (!walk[n][v]) continue;
    std::optional<Rational> worst;
    for (std::size_t k = 0; k < n; ++k) {
      if (!walk[k][v]) continue;
      Rational mean = (*walk[n][v] - *walk[k][v]) / Rational(n - k);
      if (!worst || *worst < mean) worst = std::move(mean);
    }
    if (worst && (!result || *worst < *result)) result = std::move(worst);
  }
  // every node of a complete digraph is reachable, so result is always set
  return *result;
}

std::vector<std::size_t> find_negative_cycle(const SquareMatrix& a) {
  const std::size_t n = a.size();
  std::vector<Rational> dist(n);
  std::vector<std::size_t> pred(n, n);
  std::size_t last = n;
  for (std::size_t pass = 0; pass < n; ++pass) {
    last = n;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        Rational candidate = dist[u] + a(u, v);
        if (candidate < dist[v]) {
          dist[v] = std::move(candidate);
          pred[v] = u;
          last = v;
        }
      }
    }
    if (last == n) return {};
  }

  // Still relaxing after n passes: walking back n steps lands on a cycle.
  std::size_t x = last;
  for (std::size_t i = 0; i < n; ++i) x = pred[x];
  std::vector<std::size_t> cycle;
  std::size_t y = x;
  do {
    cycle.push_back(y);
    y = pred[y];
  } while (y != x);
  std::reverse(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  return cycle;
}

SquareMatrix kleene_star(const SquareMatrix& a) {
  if (!a.has_zero_diagonal()) throw UsageError("kleene_star requires a zero diagonal");
  if (auto cycle = find_negative_cycle(a); !cycle.empty()) {
    throw NegativeCycleError(std::move(cycle));
  }
  const std::size_t n = a.size();
  SquareMatrix d = a;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Rational via = d(i, k) + d(k, j);
        if (via < d(i, j)) d(i, j) = std::move(via);
      }
    }
  }
  return d;
}

DiGraph critical_graph(const SquareMatrix& a) {
  const SquareMatrix star = kleene_star(a);
  const std::size_t n = star.size();
  DiGraph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if ((star(i, j) + star(j, i)).is_zero()) g.add_edge(i, j);
    }
  }
  return g;
}

std::vector<std::vector<std::size_t>> strongly_connected_components(const DiGraph& g) {
  // Tarjan
  const std::size_t n = g.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  std::size_t counter = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (std::size_t w = 0; w < n; ++w) {
      if (!g.has_edge(v, w)) continue;
      if (index[w] == kUnvisited) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> component;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        component.push_back(w);
      } while (w != v);
      std::sort(component.begin(), component.end());
      components.push_back(std::move(component));
    }
  };

  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] == kUnvisited) visit(v);
  }
  std::sort(components.begin(), components.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return components;
}

}  // namespace tropmech
