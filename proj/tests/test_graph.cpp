#include <doctest.h>

#include <random>

#include "rank1/graph.hpp"

using namespace rank1;

namespace {

std::set<Position> full(std::size_t m, std::size_t n) {
  std::set<Position> s;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) s.insert({i, j});
  return s;
}

bool valid_cycle(const Cycle& c) {
  const auto& e = c.edges;
  if (e.size() < 4 || e.size() % 2) return false;
  for (std::size_t k = 0; k < e.size(); ++k) {
    const auto& a = e[k];
    const auto& b = e[(k + 1) % e.size()];
    bool share_row = a.row == b.row, share_col = a.col == b.col;
    if (share_row == share_col) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("graph of a partial matrix") {
  auto m = make_partial_matrix(3, 3, {{0, 0, Rational(1, 10)}, {0, 1, Rational(1, 10)}, {1, 1, Rational(1, 10)},
                                      {2, 2, Rational(1, 10)}});
  auto g = from_partial_matrix(m);
  CHECK(g.edges().size() == 4);
  auto s = components(g);
  REQUIRE(s.s_edges() == 2);
  CHECK(s.edge_components[0].rows == std::vector<std::size_t>{0, 1});
  CHECK(s.edge_components[0].cols == std::vector<std::size_t>{0, 1});
  CHECK(s.edge_components[0].block_sum == Rational(3, 10));
  CHECK(s.edge_components[1].rows == std::vector<std::size_t>{2});

  auto empty = components(from_pattern(2, 3, {}));
  CHECK(empty.s_edges() == 0);
  CHECK(empty.isolated_count() == 5);

  auto k = from_pattern(2, 3, full(2, 3));
  for (std::size_t r = 0; r < 2; ++r) CHECK(k.neighbours(k.row_vertex(r)).size() == 3);
}

TEST_CASE("components of diagonal and single-entry patterns") {
  auto m = make_partial_matrix(4, 4, {{0, 0, Rational(4, 25)}, {1, 1, Rational(9, 100)}, {2, 2, Rational(1, 25)},
                                      {3, 3, Rational(1, 100)}});
  auto s = components(from_partial_matrix(m));
  CHECK(s.s_edges() == 4);
  CHECK(s.isolated_count() == 0);
  std::vector<Rational> b;
  for (auto& c : s.edge_components) b.push_back(c.block_sum);
  CHECK(b == std::vector<Rational>{Rational(4, 25), Rational(9, 100), Rational(1, 25), Rational(1, 100)});

  auto one = components(from_pattern(2, 2, {{0, 0}}));
  CHECK(one.s_edges() == 1);
  CHECK(one.isolated_rows == std::vector<std::size_t>{1});
  CHECK(one.isolated_cols == std::vector<std::size_t>{1});
}

TEST_CASE("fundamental cycles") {
  auto c22 = fundamental_cycles(from_pattern(2, 2, full(2, 2)));
  REQUIRE(c22.size() == 1);
  CHECK(c22[0].edges.size() == 4);
  CHECK(valid_cycle(c22[0]));
  CHECK(fundamental_cycles(from_pattern(3, 3, {{0, 0}, {1, 1}, {2, 2}})).empty());
  auto c33 = fundamental_cycles(from_pattern(3, 3, full(3, 3)));
  CHECK(c33.size() == 4);
  for (auto& c : c33) CHECK(valid_cycle(c));
}

TEST_CASE("transitive closure") {
  CHECK(transitive_closure(from_pattern(2, 2, {{0, 0}, {0, 1}, {1, 0}})) == full(2, 2));
  std::set<Position> diag{{0, 0}, {1, 1}, {2, 2}};
  CHECK(transitive_closure(from_pattern(3, 3, diag)) == diag);
  std::set<Position> expect = full(2, 2);
  expect.insert({2, 2});
  CHECK(transitive_closure(from_pattern(3, 3, {{0, 0}, {0, 1}, {1, 0}, {2, 2}})) == expect);
}

TEST_CASE("graph properties on random patterns") {
  std::mt19937_64 g(3);
  for (int k = 0; k < 300; ++k) {
    std::size_t m = 1 + g() % 6, n = 1 + g() % 6;
    std::set<Position> p;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (g() % 3 == 0) p.insert({i, j});
    auto graph = from_pattern(m, n, p);
    auto s = components(graph);
    std::size_t covered = s.isolated_count();
    for (auto& c : s.edge_components) covered += c.rows.size() + c.cols.size();
    CHECK(covered == m + n);
    auto cycles = fundamental_cycles(graph);
    long betti = static_cast<long>(p.size()) - static_cast<long>(m + n) +
                 static_cast<long>(s.s_edges() + s.isolated_count());
    CHECK(static_cast<long>(cycles.size()) == betti);
    for (auto& c : cycles) {
      CHECK(valid_cycle(c));
      for (auto& e : c.edges) CHECK(p.count(e) == 1);
    }
    auto closure = transitive_closure(graph);
    for (auto& e : p) CHECK(closure.count(e) == 1);
    CHECK(transitive_closure(from_pattern(m, n, closure)) == closure);
  }
}
