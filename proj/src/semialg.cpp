#include "rank1/semialg.hpp"

#include <algorithm>

#include "rank1/error.hpp"

namespace rank1 {

namespace {

using Poly = MultivariatePolynomial;

// (1 - y_first - ... - y_{first+count-1})^d - x_last in `vars` variables.
Poly defining_generator(std::size_t vars, std::size_t first, std::size_t count, std::size_t last, unsigned d) {
  Poly base = Poly::constant(vars, Rational(1));
  for (std::size_t i = 0; i < count; ++i) base -= Poly::variable(vars, first + i);
  return base.pow(d) - Poly::variable(vars, last);
}

// Index of a basis monomial y^a (a_i < d) in the quotient algebra.
std::size_t flat_index(const Exponent& a, unsigned d) {
  std::size_t k = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) k = k * d + *it;
  return k;
}

Rational rational_determinant(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && sgn(a[p][k]) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(a[i][k]) == 0) continue;
      Rational f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

}  // namespace

const char* to_string(Region r) {
  switch (r) {
    case Region::Inside: return "Inside";
    case Region::Boundary: return "Boundary";
    case Region::Outside: return "Outside";
  }
  return "?";
}

MultivariatePolynomial boundary_polynomial(unsigned d, unsigned n, unsigned degree_cap) {
  if (d < 1 || n < 2) throw Error(ErrorCode::InvalidArgument, "boundary polynomial needs d >= 1 and n >= 2");
  unsigned long long degree = 1;
  for (unsigned i = 1; i < n; ++i) {
    degree *= d;
    if (degree > degree_cap)
      throw Error(ErrorCode::DegreeCapExceeded, "degree " + std::to_string(d) + "^" + std::to_string(n - 1) +
                                                    " exceeds the cap " + std::to_string(degree_cap));
  }
  // Variables x_1..x_n followed by y_1..y_{n-1}.
  const std::size_t vars = 2 * n - 1;
  auto y = [n](std::size_t i) { return n + i; };
  Poly f = defining_generator(vars, n, n - 1, n - 1, d);
  for (std::size_t i = 0; i < n - 1; ++i) {
    // Reducing first keeps every Sylvester matrix at size at most 2d - 1.
    for (std::size_t j = i; j < n - 1; ++j) f = f.reduce_power(y(j), d, Poly::variable(vars, j));
    Poly g = Poly::variable(vars, y(i)).pow(d) - Poly::variable(vars, i);
    f = resultant(f, g, y(i));
  }
  Poly p = f.truncate_variables(n);
  Rational c = p.constant_term();
  if (sgn(c) == 0) throw Error(ErrorCode::InternalInconsistency, "boundary polynomial has zero constant term");
  p *= Rational(1) / c;
  return p;
}

Rational boundary_value(unsigned d, std::span<const Rational> x) {
  if (d < 1 || x.size() < 1) throw Error(ErrorCode::InvalidArgument, "boundary value needs d >= 1 and a point");
  const std::size_t n = x.size();
  if (n == 1) {
    // p_{d,1} = 1 - x_1 up to normalization.
    return 1 - x[0];
  }
  const std::size_t k = n - 1;
  std::size_t dim = 1;
  for (std::size_t i = 0; i < k; ++i) dim *= d;

  // Work in the y variables only, with x substituted.
  Poly g = Poly::constant(k, Rational(1));
  for (std::size_t i = 0; i < k; ++i) g -= Poly::variable(k, i);
  g = g.pow(d) - Poly::constant(k, x[n - 1]);
  for (std::size_t j = 0; j < k; ++j) g = g.reduce_power(j, d, Poly::constant(k, x[j]));

  std::vector<std::vector<Rational>> mat(dim, std::vector<Rational>(dim, Rational(0)));
  Exponent a(k, 0);
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t t = col;
    for (std::size_t i = 0; i < k; ++i) {
      a[i] = static_cast<unsigned>(t % d);
      t /= d;
    }
    Exponent e(k);
    for (const auto& [ge, gc] : g.terms()) {
      Rational c = gc;
      for (std::size_t i = 0; i < k; ++i) {
        unsigned s = ge[i] + a[i];
        for (unsigned w = 0; w < s / d; ++w) c *= x[i];
        e[i] = s % d;
      }
      mat[flat_index(e, d)][col] += c;
    }
  }
  return rational_determinant(std::move(mat));
}

Rational evaluate(const MultivariatePolynomial& p, std::span<const Rational> point) { return p.evaluate(point); }

Membership membership_with_chamber(unsigned d, std::span<const Rational> point, const NumericPolicy& policy) {
  for (const auto& v : point)
    if (sgn(v) < 0) throw Error(ErrorCode::NegativeValue, "membership needs a nonnegative point");
  Comparison c = compare_root_sum(point, d, Rational(1), policy).result;
  Region r = c == Comparison::Less ? Region::Inside : c == Comparison::Equal ? Region::Boundary : Region::Outside;
  int s = point.empty() ? 1 : sgn(boundary_value(d, point));
  return {r, s};
}

}  // namespace rank1
