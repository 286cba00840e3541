#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rank1/decide.hpp"
#include "rank1/error.hpp"
#include "rank1/tensor.hpp"

using namespace rank1;

namespace {

double product_at(const TensorFactors& f, std::size_t i) {
  double p = 1;
  for (auto& u : f) p *= u[i].to_double();
  return p;
}

void check_factors(const TensorFactors& f, const std::vector<Rational>& a) {
  for (auto& u : f) {
    double s = 0;
    for (auto& x : u) {
      CHECK(x.to_double() >= -1e-12);
      s += x.to_double();
    }
    CHECK(s == doctest::Approx(1).epsilon(1e-12));
  }
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(product_at(f, i) - to_double(a[i])) < 1e-10);
}

}  // namespace

TEST_CASE("diagonal tensors") {
  CHECK(decide_diagonal_tensor({3, {Rational(1, 27), Rational(1, 27)}}).completable());
  CHECK(decide_diagonal_tensor({2, {Rational(1, 4), Rational(1, 25), Rational(1, 36)}}).completable());
  auto n = decide_diagonal_tensor({3, {Rational(1, 8), Rational(1, 8), Rational(1, 8)}});
  CHECK_FALSE(n.completable());
  CHECK(std::holds_alternative<NormExcess>(n.evidence()));
  CHECK_THROWS_AS(decide_diagonal_tensor({0, {Rational(1, 2)}}), Error);

  auto f = complete_diagonal_tensor({3, {Rational(8, 27), Rational(1, 27)}});
  REQUIRE(f.size() == 3);
  for (auto& u : f) {
    CHECK(*u[0].exact() == Rational(2, 3));
    CHECK(*u[1].exact() == Rational(1, 3));
  }
  auto one = complete_diagonal_tensor({1, {Rational(1, 3), Rational(2, 3)}});
  REQUIRE(one.size() == 1);
  CHECK(*one[0][1].exact() == Rational(2, 3));
  CHECK_FALSE(decide_diagonal_tensor({1, {Rational(1, 3), Rational(1, 3)}}).completable());
  CHECK_THROWS_AS(complete_diagonal_tensor({3, {Rational(1, 8), Rational(1, 8), Rational(1, 8)}}), Error);
}

TEST_CASE("interior tensor completions") {
  std::mt19937_64 g(23);
  for (int k = 0; k < 100; ++k) {
    unsigned d = 2 + g() % 3;
    std::size_t n = 1 + g() % 4;
    std::vector<Rational> a;
    for (std::size_t i = 0; i < n; ++i) a.push_back(oracle::frac(g() % 4 == 0 ? 0 : 1 + g() % 3, 40 + g() % 400));
    DiagonalTensorInstance t{d, a};
    if (!decide_diagonal_tensor(t).completable()) continue;
    check_factors(complete_diagonal_tensor(t), a);
  }
}

TEST_CASE("d = 2 tensors match the matrix decider") {
  std::mt19937_64 g(31);
  for (int k = 0; k < 300; ++k) {
    std::size_t n = 1 + g() % 4;
    std::vector<Rational> a;
    std::vector<Entry> es;
    for (std::size_t i = 0; i < n; ++i) {
      a.push_back(oracle::frac(1 + g() % 5, 4 + g() % 60));
      es.push_back({i, i, a.back()});
    }
    CHECK(decide_diagonal_tensor({2, a}).verdict() == decide(make_partial_matrix(n, n, es)).verdict());
  }
}

TEST_CASE("2x2x2 cases") {
  auto at = [](std::initializer_list<std::pair<unsigned, Rational>> xs) {
    Pattern222 p;
    for (auto& [k, v] : xs) p.entries[k] = v;
    return p;
  };
  CHECK(decide_222(at({{0, Rational(1, 8)}, {7, Rational(1, 8)}})).completable());
  CHECK(classify_222(at({{0, Rational(1, 8)}, {7, Rational(1, 8)}})) == Case222::PairOpposite);
  CHECK_FALSE(decide_222(at({{0, Rational(1, 2)}, {3, Rational(1, 2)}})).completable());
  CHECK(classify_222(at({{0, Rational(1, 2)}, {3, Rational(1, 2)}})) == Case222::PairFace);
  Rational a(1, 5), b(1, 10), c(1, 10);
  REQUIRE(a + b + c + b * c / a <= 1);
  auto corner = at({{0, a}, {1, b}, {2, c}});
  CHECK(classify_222(corner) == Case222::TripleCorner);
  CHECK(decide_222(corner).completable());
  CHECK_FALSE(decide_222(at({{0, Rational(1, 5)}, {1, Rational(2, 5)}, {2, Rational(2, 5)}})).completable());
  CHECK(classify_222(at({{5, Rational(1, 9)}})) == Case222::Single);
  CHECK(classify_222(at({{0, a}, {5, b}, {3, c}})) == Case222::TripleScattered);
  CHECK(classify_222(at({{0, a}, {1, b}, {6, c}})) == Case222::TripleSkew);
  CHECK_THROWS_AS(classify_222(at({{0, a}, {1, b}, {2, c}, {3, a}})), Error);
}

TEST_CASE("2x2x2 witnesses reproduce the entries") {
  std::mt19937_64 g(37);
  for (int k = 0; k < 500; ++k) {
    std::array<std::vector<Rational>, 3> f;
    for (auto& u : f) u = oracle::random_simplex(g, 2, 0.15);
    Pattern222 p;
    for (unsigned idx = 0; idx < 8; ++idx)
      if (g() % 3 == 0 && p.entries.size() < 3) p.entries[idx] = f[0][idx >> 2] * f[1][(idx >> 1) & 1] * f[2][idx & 1];
    if (p.entries.empty()) continue;
    Case222 kind;
    try {
      kind = classify_222(p);
    } catch (const Error&) {
      continue;
    }
    (void)kind;
    auto cert = decide_222(p);
    REQUIRE(cert.completable());
    const auto& w = std::get<Witness>(cert.evidence());
    REQUIRE(w.tensor_factors.size() == 3);
    for (auto& [idx, v] : p.entries) {
      double e = tensor_entry(w.tensor_factors, {idx >> 2, (idx >> 1) & 1, idx & 1}).to_double();
      CHECK(std::abs(e - to_double(v)) < 1e-10);
    }
  }
}

TEST_CASE("rank-2 example") {
  std::array<Rational, 7> v{Rational(7, 100), Rational(9, 100), Rational(9, 100), Rational(3, 25),
                            Rational(3, 20), Rational(1, 25), Rational(4, 25)};
  auto a = complete_rank2_3x3(v, Rank2Pattern::A);
  CHECK(a.completable);
  REQUIRE(a.X.has_value());
  // Rational X: the completed matrix is singular and sums to one exactly.
  REQUIRE(a.X->is_exact());
  Rational m[3][3];
  Rational total = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      REQUIRE(a.matrix[i][j].is_exact());
      m[i][j] = *a.matrix[i][j].exact();
      total += m[i][j];
    }
  CHECK(total == 1);
  Rational det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                 m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  CHECK(det == 0);
  auto b = complete_rank2_3x3(v, Rank2Pattern::B);
  CHECK_FALSE(b.completable);
  CHECK(b.roots.empty());
}

TEST_CASE("Sturm root counting") {
  // (x - 1/2)(x - 1/3)(x + 1) = x^3 + x^2/6 - 2x/3 + 1/6... expanded below.
  std::vector<Rational> p{Rational(1, 6), Rational(-2, 3), Rational(1, 6), 1};
  CHECK(count_roots(p, 0, 1) == 2);
  CHECK(count_roots(p, Rational(-2), 1) == 3);
  CHECK(count_roots(p, Rational(1, 2), 1) == 0);
  CHECK(count_roots(p, Rational(1, 3), Rational(1, 2)) == 1);
}
