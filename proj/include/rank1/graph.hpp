#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <vector>

#include "rank1/model.hpp"

namespace rank1 {

// Pattern graph with row vertices 0..m-1 and column vertices m..m+n-1.
class BipartiteGraph {
 public:
  struct Edge {
    std::size_t row;
    std::size_t col;
    std::optional<Rational> weight;
  };

  BipartiteGraph(std::size_t rows, std::size_t cols, std::vector<Edge> edges);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t vertex_count() const { return rows_ + cols_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Neighbouring vertex ids together with the edge index.
  const std::vector<std::pair<std::size_t, std::size_t>>& neighbours(std::size_t vertex) const {
    return adjacency_[vertex];
  }
  std::size_t row_vertex(std::size_t r) const { return r; }
  std::size_t col_vertex(std::size_t c) const { return rows_ + c; }
  bool is_row(std::size_t vertex) const { return vertex < rows_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adjacency_;
};

BipartiteGraph from_partial_matrix(const PartialMatrix& m);
BipartiteGraph from_pattern(std::size_t rows, std::size_t cols, const std::set<Position>& pattern);

struct EdgeComponent {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  std::vector<Position> edges;
  Rational block_sum;
};

struct ComponentSummary {
  std::vector<EdgeComponent> edge_components;
  std::vector<std::size_t> isolated_rows;
  std::vector<std::size_t> isolated_cols;

  std::size_t s_edges() const { return edge_components.size(); }
  std::size_t isolated_count() const { return isolated_rows.size() + isolated_cols.size(); }
};

/// Components ordered by their smallest vertex (rows first). Missing
/// weights count as zero in block sums.
ComponentSummary components(const BipartiteGraph& g);

/// One cycle per non-tree edge of a breadth-first spanning forest.
std::vector<Cycle> fundamental_cycles(const BipartiteGraph& g);

std::set<Position> transitive_closure(const BipartiteGraph& g);

}  // namespace rank1
