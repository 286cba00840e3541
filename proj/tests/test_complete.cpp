#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rank1/complete.hpp"
#include "rank1/error.hpp"

using namespace rank1;

namespace {

PartialMatrix diag(std::vector<Rational> a) {
  std::vector<Entry> es;
  for (std::size_t i = 0; i < a.size(); ++i) es.push_back({i, i, a[i]});
  return make_partial_matrix(a.size(), a.size(), es);
}

double dist(const RankOneFactorization& a, const RankOneFactorization& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.u.size(); ++i)
    for (std::size_t j = 0; j < a.v.size(); ++j) d = std::max(d, std::abs(a.entry(i, j).to_double() - b.entry(i, j).to_double()));
  return d;
}

bool in_simplex(const RankOneFactorization& f) {
  double su = 0, sv = 0;
  for (auto& x : f.u) su += x.to_double();
  for (auto& x : f.v) sv += x.to_double();
  return std::abs(su - 1) < 1e-12 && std::abs(sv - 1) < 1e-12;
}

}  // namespace

TEST_CASE("f_sum") {
  std::vector<Rational> a{Rational(1, 4), Rational(1, 25), Rational(1, 36)};
  std::vector<Real> u{Rational(15, 26), Rational(3, 13), Rational(5, 26)};
  auto f = f_sum(u, a);
  REQUIRE(f.is_exact());
  CHECK(*f.exact() == Rational(169, 225));
  std::vector<Real> uni{Rational(1, 3), Rational(1, 3), Rational(1, 3)};
  CHECK(*f_sum(uni, a).exact() == 3 * (a[0] + a[1] + a[2]));
  std::vector<Rational> zero{0, 0, 0};
  CHECK(*f_sum(uni, zero).exact() == 0);
  std::vector<Real> bad{Rational(0), Rational(1, 2), Rational(1, 2)};
  CHECK_THROWS_AS(f_sum(bad, a), Error);
}

TEST_CASE("classify_completions") {
  auto intro = diag({Rational(4, 25), Rational(9, 100), Rational(1, 25), Rational(1, 100)});
  auto d = classify_completions(intro);
  CHECK(d.kind == CompletionKind::Unique);
  REQUIRE(d.completions.size() == 1);
  std::vector<Rational> expect{Rational(2, 5), Rational(3, 10), Rational(1, 5), Rational(1, 10)};
  for (std::size_t i = 0; i < 4; ++i) {
    REQUIRE(d.completions[0].u[i].is_exact());
    CHECK(*d.completions[0].u[i].exact() == expect[i]);
    CHECK(*d.completions[0].v[i].exact() == expect[i]);
  }

  auto pair = classify_completions(diag({Rational(1, 9), Rational(1, 16)}));
  CHECK(pair.kind == CompletionKind::Pair);
  REQUIRE(pair.completions.size() == 2);
  CHECK(dist(pair.completions[0], pair.completions[1]) > 1e-3);

  auto fam = classify_completions(diag({Rational(1, 4), Rational(1, 25), Rational(1, 36)}));
  CHECK(fam.kind == CompletionKind::Family);
  CHECK(fam.dimension == 1);

  auto down = classify_completions(diag({Rational(4, 25) - Rational(1, 1000), Rational(9, 100), Rational(1, 25),
                                         Rational(1, 100)}));
  CHECK(down.kind == CompletionKind::Family);
  CHECK(down.dimension == 2);

  auto empty = classify_completions(diag({Rational(1, 2), Rational(1, 2)}));
  CHECK(empty.kind == CompletionKind::Empty);

  // One block plus one isolated column: the row-copy construction.
  auto iso = classify_completions(make_partial_matrix(1, 2, {{0, 0, Rational(1, 4)}}));
  CHECK(iso.kind == CompletionKind::Unique);
}

TEST_CASE("every returned completion verifies") {
  std::mt19937_64 g(7);
  for (int k = 0; k < 150; ++k) {
    std::size_t n = 2 + g() % 3;
    std::vector<Rational> a;
    for (std::size_t i = 0; i < n; ++i) a.push_back(oracle::frac(1 + g() % 5, 10 + g() % 90));
    auto m = diag(a);
    auto d = classify_completions(m);
    CHECK((d.kind == CompletionKind::Empty) == !decide(m).completable());
    for (auto& f : d.completions) {
      CHECK(verify_completion(m, f, 1e-9));
      CHECK(in_simplex(f));
    }
  }
}

TEST_CASE("complete_unique_boundary") {
  std::vector<Rational> b{Rational(4, 25), Rational(9, 100), Rational(1, 25), Rational(1, 100)};
  auto f = complete_unique_boundary(b);
  CHECK(*f.u[0].exact() == Rational(2, 5));
  CHECK(*f.v[3].exact() == Rational(1, 10));
  std::vector<Rational> one{1};
  CHECK(*complete_unique_boundary(one).u[0].exact() == 1);
  std::vector<Rational> quarter{Rational(1, 4), Rational(1, 4)};
  CHECK(*complete_unique_boundary(quarter).u[1].exact() == Rational(1, 2));
  std::vector<Rational> inside{Rational(1, 9), Rational(1, 9)};
  CHECK_THROWS_AS(complete_unique_boundary(inside), Error);
}

TEST_CASE("pair walk") {
  std::vector<Rational> rest{Rational(1, 36)};
  auto w = complete_pair_walk(Rational(1, 4), Rational(1, 25), rest);
  auto z = w.parameters.integer_coefficients();
  REQUIRE(z.has_value());
  CHECK((*z)[0] == 9295);
  CHECK((*z)[1] == 936);
  CHECK((*z)[2] == -360);
  auto m = diag({Rational(1, 4), Rational(1, 25), Rational(1, 36)});
  for (auto& f : w.completions) CHECK(verify_completion(m, f, 1e-12));
  CHECK_THROWS_AS(complete_pair_walk(Rational(1, 4), Rational(1, 4), {}), Error);
}

TEST_CASE("walk roots stay in the segment") {
  std::mt19937_64 g(13);
  for (int k = 0; k < 1000; ++k) {
    std::size_t n = 2 + g() % 3;
    std::vector<Rational> a;
    for (std::size_t i = 0; i < n; ++i) a.push_back(oracle::frac(1 + g() % 4, 20 + g() % 200));
    if (compare_sqrt_sum(a, 1) != Comparison::Less) continue;
    auto w = walk_parameters(a);
    Real r1 = sqrt(Real(a[0])), r2 = sqrt(Real(a[1]));
    Real lo = -(r1 / w.S), hi = r2 / w.S;
    for (auto& t : w.roots) {
      CHECK((t - lo).enclosure().compare(Rational(0)) >= 0);
      CHECK((hi - t).enclosure().compare(Rational(0)) >= 0);
    }
  }
}

TEST_CASE("walk coefficients match the printed quadratic on perfect squares") {
  std::mt19937_64 g(19);
  for (int k = 0; k < 200; ++k) {
    std::vector<Rational> r{oracle::frac(1 + g() % 9, 40), oracle::frac(1 + g() % 9, 40), oracle::frac(1 + g() % 9, 40)};
    std::vector<Rational> a;
    for (auto& x : r) a.push_back(x * x);
    auto z = walk_parameters(a).integer_coefficients();
    REQUIRE(z.has_value());
    CHECK(*z == oracle::walk_coefficients(r));
  }
}

TEST_CASE("complete_isolated") {
  auto f = complete_isolated(Rational(1, 4), Side::Col);
  CHECK(*f.u[0].exact() == 1);
  CHECK(*f.v[0].exact() == Rational(1, 4));
  CHECK(*f.v[1].exact() == Rational(3, 4));
  auto g = complete_isolated(Rational(1), Side::Row);
  CHECK(*g.u[1].exact() == 0);
}

TEST_CASE("sample_family") {
  auto m = diag({Rational(1, 10), Rational(1, 10), Rational(1, 10)});
  auto s = sample_family(m, 8, 42);
  REQUIRE(s.size() == 8);
  for (auto& f : s) CHECK(verify_completion(m, f, 1e-9));
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(dist(s[0], s[i]) > 1e-9);
  auto again = sample_family(m, 8, 42);
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(dist(s[i], again[i]) == 0);
  CHECK(sample_family(m, 0, 1).empty());
  CHECK_THROWS_AS(sample_family(diag({Rational(1, 9), Rational(1, 16)}), 3, 1), Error);

  // Column 3 branch of diag(.16,.16,0): its base point is matrix B.
  auto z = diag({Rational(4, 25), Rational(4, 25), Rational(0)});
  auto zs = sample_family(z, 6, 3);
  bool has_b = false;
  for (auto& f : zs) {
    CHECK(verify_completion(z, f, 1e-9));
    bool b = true;
    Rational expect[3][3] = {{Rational(4, 25), Rational(4, 25), 0},
                             {Rational(4, 25), Rational(4, 25), 0},
                             {Rational(9, 50), Rational(9, 50), 0}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Real e = f.entry(i, j);
        b = b && e.is_exact() && *e.exact() == expect[i][j];
      }
    has_b = has_b || b;
  }
  CHECK(has_b);
}
