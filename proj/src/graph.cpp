#include "rank1/graph.hpp"

#include <algorithm>
#include <deque>

#include "rank1/error.hpp"

namespace rank1 {

BipartiteGraph::BipartiteGraph(std::size_t rows, std::size_t cols, std::vector<Edge> edges)
    : rows_(rows), cols_(cols), edges_(std::move(edges)), adjacency_(rows + cols) {
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); });
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const auto& e = edges_[k];
    if (e.row >= rows || e.col >= cols) throw Error(ErrorCode::OutOfRange, "edge endpoint outside the graph");
    if (k > 0 && edges_[k - 1].row == e.row && edges_[k - 1].col == e.col)
      throw Error(ErrorCode::DuplicatePosition, "repeated edge");
    adjacency_[e.row].emplace_back(rows + e.col, k);
    adjacency_[rows + e.col].emplace_back(e.row, k);
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

BipartiteGraph from_partial_matrix(const PartialMatrix& m) {
  std::vector<BipartiteGraph::Edge> edges;
  for (const auto& [p, v] : m.entries()) edges.push_back({p.row, p.col, v});
  return BipartiteGraph(m.rows(), m.cols(), std::move(edges));
}

BipartiteGraph from_pattern(std::size_t rows, std::size_t cols, const std::set<Position>& pattern) {
  std::vector<BipartiteGraph::Edge> edges;
  for (const auto& p : pattern) edges.push_back({p.row, p.col, std::nullopt});
  return BipartiteGraph(rows, cols, std::move(edges));
}

namespace {

struct Forest {
  std::vector<std::size_t> component;        // component id per vertex
  std::vector<std::size_t> parent;           // parent vertex, self for roots
  std::vector<std::size_t> parent_edge;      // edge to parent
  std::vector<std::size_t> depth;
  std::vector<bool> tree_edge;
  std::size_t count = 0;
};

Forest bfs_forest(const BipartiteGraph& g) {
  const std::size_t nv = g.vertex_count();
  const std::size_t none = static_cast<std::size_t>(-1);
  Forest f{std::vector<std::size_t>(nv, none), std::vector<std::size_t>(nv), std::vector<std::size_t>(nv, none),
           std::vector<std::size_t>(nv, 0), std::vector<bool>(g.edges().size(), false), 0};
  for (std::size_t root = 0; root < nv; ++root) {
    if (f.component[root] != none) continue;
    f.component[root] = f.count;
    f.parent[root] = root;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      std::size_t x = queue.front();
      queue.pop_front();
      for (auto [y, e] : g.neighbours(x)) {
        if (f.component[y] != none) continue;
        f.component[y] = f.count;
        f.parent[y] = x;
        f.parent_edge[y] = e;
        f.depth[y] = f.depth[x] + 1;
        f.tree_edge[e] = true;
        queue.push_back(y);
      }
    }
    ++f.count;
  }
  return f;
}

}  // namespace

ComponentSummary components(const BipartiteGraph& g) {
  Forest f = bfs_forest(g);
  std::vector<EdgeComponent> comps(f.count);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (g.is_row(v))
      comps[f.component[v]].rows.push_back(v);
    else
      comps[f.component[v]].cols.push_back(v - g.rows());
  }
  for (const auto& e : g.edges()) {
    auto& c = comps[f.component[e.row]];
    c.edges.push_back({e.row, e.col});
    if (e.weight) c.block_sum += *e.weight;
  }
  ComponentSummary out;
  for (auto& c : comps) {
    if (!c.edges.empty()) {
      out.edge_components.push_back(std::move(c));
    } else if (!c.rows.empty()) {
      out.isolated_rows.push_back(c.rows.front());
    } else {
      out.isolated_cols.push_back(c.cols.front());
    }
  }
  return out;
}

std::vector<Cycle> fundamental_cycles(const BipartiteGraph& g) {
  Forest f = bfs_forest(g);
  auto position = [&](std::size_t e) { return Position{g.edges()[e].row, g.edges()[e].col}; };
  std::vector<Cycle> cycles;
  for (std::size_t k = 0; k < g.edges().size(); ++k) {
    if (f.tree_edge[k]) continue;
    // Walk both endpoints up to their lowest common ancestor.
    std::size_t a = g.edges()[k].row;
    std::size_t b = g.col_vertex(g.edges()[k].col);
    std::vector<std::size_t> from_a;
    std::vector<std::size_t> from_b;
    while (a != b) {
      if (f.depth[a] >= f.depth[b]) {
        from_a.push_back(f.parent_edge[a]);
        a = f.parent[a];
      } else {
        from_b.push_back(f.parent_edge[b]);
        b = f.parent[b];
      }
    }
    // Closed walk: across the non-tree edge, up from its column end, then
    // back down to its row.
    Cycle c;
    c.edges.push_back(position(k));
    for (auto it = from_b.begin(); it != from_b.end(); ++it) c.edges.push_back(position(*it));
    for (auto it = from_a.rbegin(); it != from_a.rend(); ++it) c.edges.push_back(position(*it));
    cycles.push_back(std::move(c));
  }
  return cycles;
}

std::set<Position> transitive_closure(const BipartiteGraph& g) {
  std::set<Position> out;
  for (const auto& c : components(g).edge_components)
    for (auto r : c.rows)
      for (auto col : c.cols) out.insert({r, col});
  return out;
}

}  // namespace rank1
