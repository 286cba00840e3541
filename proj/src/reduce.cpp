#include "rank1/reduce.hpp"

#include <algorithm>
#include <deque>

#include "rank1/error.hpp"

namespace rank1 {

std::variant<ZeroPropagation, ThreeLineViolation> propagate_zeros(const PartialMatrix& input) {
  std::map<Position, Rational> entries = input.entries();
  const std::size_t m = input.rows();
  const std::size_t n = input.cols();
  std::vector<bool> zero_row(m, false);
  std::vector<bool> zero_col(n, false);

  auto nonzero_in_row = [&](std::size_t r) -> std::optional<Position> {
    for (auto it = entries.lower_bound({r, 0}); it != entries.end() && it->first.row == r; ++it)
      if (sgn(it->second) != 0) return it->first;
    return std::nullopt;
  };
  auto nonzero_in_col = [&](std::size_t c) -> std::optional<Position> {
    for (std::size_t r = 0; r < m; ++r) {
      auto it = entries.find({r, c});
      if (it != entries.end() && sgn(it->second) != 0) return it->first;
    }
    return std::nullopt;
  };

  for (bool changed = true; changed;) {
    changed = false;
    std::vector<Position> zeros;
    for (const auto& [p, v] : entries)
      if (sgn(v) == 0) zeros.push_back(p);
    for (const auto& p : zeros) {
      auto in_row = nonzero_in_row(p.row);
      auto in_col = nonzero_in_col(p.col);
      if (in_row && in_col) return ThreeLineViolation{{p, *in_row, *in_col}};
      if (in_row && !zero_col[p.col]) {
        zero_col[p.col] = true;
        for (std::size_t r = 0; r < m; ++r) entries[{r, p.col}] = 0;
        changed = true;
      } else if (in_col && !zero_row[p.row]) {
        zero_row[p.row] = true;
        for (std::size_t c = 0; c < n; ++c) entries[{p.row, c}] = 0;
        changed = true;
      }
    }
  }
  ZeroPropagation out{PartialMatrix(m, n, std::move(entries)), {}, {}};
  for (std::size_t r = 0; r < m; ++r)
    if (zero_row[r]) out.zero_rows.push_back(r);
  for (std::size_t c = 0; c < n; ++c)
    if (zero_col[c]) out.zero_cols.push_back(c);
  return out;
}

std::optional<CycleViolation> check_cycle_singularity(const PartialMatrix& m) {
  for (auto& cycle : fundamental_cycles(from_partial_matrix(m))) {
    Rational lhs = 1;
    Rational rhs = 1;
    for (std::size_t k = 0; k < cycle.edges.size(); ++k) (k % 2 == 0 ? lhs : rhs) *= *m.find(cycle.edges[k]);
    if (lhs != rhs) return CycleViolation{std::move(cycle), lhs, rhs};
  }
  return std::nullopt;
}

namespace {

// Vertex potentials with u_i * v_j = m_ij along a spanning forest; the root
// of each component gets potential one.
std::vector<Rational> potentials(const PartialMatrix& m, const BipartiteGraph& g) {
  std::vector<Rational> pot(g.vertex_count());
  std::vector<bool> seen(g.vertex_count(), false);
  for (std::size_t root = 0; root < g.vertex_count(); ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    pot[root] = 1;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      std::size_t x = queue.front();
      queue.pop_front();
      for (auto [y, e] : g.neighbours(x)) {
        if (seen[y]) continue;
        seen[y] = true;
        const Rational& w = *m.find({g.edges()[e].row, g.edges()[e].col});
        pot[y] = w / pot[x];
        queue.push_back(y);
      }
    }
  }
  return pot;
}

}  // namespace

PartialMatrix complete_by_cycles(const PartialMatrix& m) {
  for (const auto& [p, v] : m.entries())
    if (sgn(v) <= 0)
      throw Error(ErrorCode::NonPositiveEntry,
                  "entry (" + std::to_string(p.row) + "," + std::to_string(p.col) + ") is not positive");
  BipartiteGraph g = from_partial_matrix(m);
  std::vector<Rational> pot = potentials(m, g);
  for (const auto& [p, v] : m.entries())
    if (pot[p.row] * pot[g.col_vertex(p.col)] != v)
      throw Error(ErrorCode::InternalInconsistency, "pattern entries are not cycle singular");
  std::map<Position, Rational> filled;
  for (const auto& p : transitive_closure(g)) filled.emplace(p, pot[p.row] * pot[g.col_vertex(p.col)]);
  return PartialMatrix(m.rows(), m.cols(), std::move(filled));
}

ReducedForm contract_blocks(const PartialMatrix& filled) {
  ComponentSummary summary = components(from_partial_matrix(filled));
  std::vector<Rational> diagonal;
  std::vector<BlockFactor> factors;
  for (const auto& c : summary.edge_components) {
    if (c.edges.size() != c.rows.size() * c.cols.size())
      throw Error(ErrorCode::NotBlockComplete, "component is not a complete block");
    const Rational& b = c.block_sum;
    diagonal.push_back(b);
    BlockFactor f;
    if (sgn(b) != 0) {
      for (auto r : c.rows) {
        Rational s = 0;
        for (auto col : c.cols) s += *filled.find({r, col});
        f.row_weights.push_back(s / b);
      }
      for (auto col : c.cols) {
        Rational s = 0;
        for (auto r : c.rows) s += *filled.find({r, col});
        f.col_weights.push_back(s / b);
      }
      for (std::size_t k = 0; k < c.rows.size(); ++k)
        for (std::size_t l = 0; l < c.cols.size(); ++l)
          if (b * f.row_weights[k] * f.col_weights[l] != *filled.find({c.rows[k], c.cols[l]}))
            throw Error(ErrorCode::NotBlockComplete, "block is not rank one");
    } else {
      for (const auto& p : c.edges)
        if (sgn(*filled.find(p)) != 0) throw Error(ErrorCode::NotBlockComplete, "block is not rank one");
    }
    factors.push_back(std::move(f));
  }
  return ReducedForm{filled, {}, {}, std::move(diagonal), std::move(summary), std::move(factors), {}};
}

ReducedForm reduce_positive(const PartialMatrix& m) {
  ReducedForm r = contract_blocks(complete_by_cycles(m));
  for (const auto& [p, v] : r.filled.entries())
    if (!m.contains(p)) r.implied.insert(p);
  return r;
}

PartialMatrix restrict_to(const PartialMatrix& m, const std::vector<std::size_t>& rows,
                          const std::vector<std::size_t>& cols) {
  std::vector<std::size_t> row_index(m.rows(), static_cast<std::size_t>(-1));
  std::vector<std::size_t> col_index(m.cols(), static_cast<std::size_t>(-1));
  for (std::size_t k = 0; k < rows.size(); ++k) row_index[rows[k]] = k;
  for (std::size_t k = 0; k < cols.size(); ++k) col_index[cols[k]] = k;
  std::map<Position, Rational> entries;
  for (const auto& [p, v] : m.entries())
    if (row_index[p.row] != static_cast<std::size_t>(-1) && col_index[p.col] != static_cast<std::size_t>(-1))
      entries.emplace(Position{row_index[p.row], col_index[p.col]}, v);
  return PartialMatrix(rows.size(), cols.size(), std::move(entries));
}

}  // namespace rank1
