#include <doctest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "rank1/error.hpp"
#include "rank1/semialg.hpp"
#include "rank1/tensor.hpp"

using namespace rank1;

namespace {

MultivariatePolynomial parse(std::size_t n, std::initializer_list<std::pair<Rational, Exponent>> terms) {
  MultivariatePolynomial p(n);
  for (auto& [c, e] : terms) p.add_term(e, c);
  return p;
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
  using P = MultivariatePolynomial;
  P x = P::variable(2, 0), y = P::variable(2, 1);
  P s = (x + y).pow(3);
  CHECK(s.total_degree() == 3);
  CHECK(s.coefficient({2, 1}) == 3);
  CHECK(s.divide_exact(x + y) == (x + y) * (x + y));
  CHECK_THROWS_AS(s.divide_exact(x - y), Error);
  CHECK(s.leading().first == Exponent{3, 0});
  P r = (x * x * x - y).reduce_power(0, 2, y);
  CHECK(r == x * y - y);
  CHECK(resultant(x * x - y, x - P::constant(2, Rational(3)), 0) == P::constant(2, Rational(9)) - y);
}

TEST_CASE("small boundary polynomials") {
  auto p12 = boundary_polynomial(1, 2);
  CHECK(p12 == parse(2, {{1, {0, 0}}, {-1, {1, 0}}, {-1, {0, 1}}}));
  auto p22 = boundary_polynomial(2, 2);
  CHECK(p22 == parse(2, {{1, {2, 0}}, {1, {0, 2}}, {1, {0, 0}}, {-2, {1, 0}}, {-2, {0, 1}}, {-2, {1, 1}}}));
  CHECK(p22.to_text() == "1 2 0\n-2 1 1\n1 0 2\n-2 1 0\n-2 0 1\n1 0 0\n");
  std::vector<Rational> quarter{Rational(1, 4), Rational(1, 4)};
  CHECK(evaluate(p22, quarter) == 0);
  std::vector<Rational> origin{0, 0};
  CHECK(evaluate(p22, origin) == 1);
  std::vector<Rational> half{Rational(1, 2), Rational(1, 2)};
  CHECK(evaluate(p12, half) == 0);
  CHECK(evaluate(p22, half) == -1);
  std::vector<Rational> three{1, 2, 3};
  CHECK_THROWS_AS(evaluate(p22, three), Error);
  CHECK_THROWS_AS(boundary_polynomial(2, 40), Error);

  auto p23 = boundary_polynomial(2, 3);
  CHECK(p23.total_degree() == 4);
  CHECK(p23.constant_term() == 1);
  std::vector<Rational> b{Rational(1, 4), Rational(1, 4), 0};
  CHECK(evaluate(p23, b) == 0);
}

TEST_CASE("boundary polynomial matches the root product") {
  std::mt19937_64 g(43);
  std::uniform_real_distribution<double> u(0.0, 0.6);
  for (auto [d, n] : {std::pair{2u, 3u}, {3u, 2u}, {2u, 4u}, {3u, 3u}}) {
    auto p = boundary_polynomial(d, n);
    for (int k = 0; k < 20; ++k) {
      std::vector<Rational> x;
      std::vector<double> xd;
      for (unsigned i = 0; i < n; ++i) {
        x.push_back(oracle::frac(static_cast<long>(u(g) * 1000), 1000));
        xd.push_back(to_double(x.back()));
      }
      double expect = oracle::boundary_product(d, xd);
      CHECK(to_double(evaluate(p, x)) == doctest::Approx(expect).epsilon(1e-9));
      CHECK(boundary_value(d, x) == evaluate(p, x));
    }
  }
}

TEST_CASE("membership_with_chamber") {
  std::vector<Rational> ninth{Rational(1, 9), Rational(1, 9), Rational(1, 9)};
  CHECK(membership_with_chamber(2, ninth).region == Region::Boundary);
  CHECK(membership_with_chamber(2, ninth).polynomial_sign == 0);
  std::vector<Rational> small{Rational(1, 100), Rational(1, 100)};
  CHECK(membership_with_chamber(2, small).region == Region::Inside);
  std::vector<Rational> big{Rational(3, 5), Rational(3, 5)};
  auto m = membership_with_chamber(2, big);
  CHECK(m.region == Region::Outside);
  // p_{2,2}(0.6, 0.6) = 0.04 - 1.44 < 0 while (1/100,1/100) gives p > 0.
  CHECK(m.polynomial_sign < 0);
  CHECK(membership_with_chamber(2, small).polynomial_sign > 0);
  // A point outside with p > 0: another chamber of {p >= 0}.
  std::vector<Rational> far{Rational(4), Rational(1, 100)};
  auto f = membership_with_chamber(2, far);
  CHECK(f.region == Region::Outside);
  CHECK(f.polynomial_sign > 0);
  std::vector<Rational> neg{Rational(-1, 2), Rational(1, 2)};
  CHECK_THROWS_AS(membership_with_chamber(2, neg), Error);
}

TEST_CASE("membership agrees with the tensor decider") {
  std::mt19937_64 g(47);
  for (int k = 0; k < 1000; ++k) {
    unsigned d = 2 + g() % 2;
    std::size_t n = 2 + g() % 2;
    std::vector<Rational> x;
    if (g() % 4 == 0) {
      auto r = oracle::random_simplex(g, n, 0.2);
      for (auto& v : r) {
        Rational p = 1;
        for (unsigned j = 0; j < d; ++j) p *= v;
        x.push_back(p);
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) x.push_back(oracle::frac(g() % 40, 100 + g() % 200));
    }
    auto m = membership_with_chamber(d, x);
    auto c = decide_diagonal_tensor({d, x});
    CHECK((m.region != Region::Outside) == c.completable());
    bool equal = compare_root_sum(x, d, Rational(1)).result == Comparison::Equal;
    CHECK((m.region == Region::Boundary) == equal);
    if (m.region == Region::Boundary) CHECK(m.polynomial_sign == 0);
  }
}
