#include "rank1/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "rank1/error.hpp"

namespace rank1 {

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const {
  unsigned da = std::accumulate(a.begin(), a.end(), 0u);
  unsigned db = std::accumulate(b.begin(), b.end(), 0u);
  if (da != db) return da < db;
  return a < b;
}

MultivariatePolynomial MultivariatePolynomial::constant(std::size_t variables, const Rational& c) {
  MultivariatePolynomial p(variables);
  p.add_term(Exponent(variables, 0), c);
  return p;
}

MultivariatePolynomial MultivariatePolynomial::variable(std::size_t variables, std::size_t index) {
  if (index >= variables) throw Error(ErrorCode::OutOfRange, "variable index out of range");
  MultivariatePolynomial p(variables);
  Exponent e(variables, 0);
  e[index] = 1;
  p.add_term(e, Rational(1));
  return p;
}

unsigned MultivariatePolynomial::total_degree() const {
  if (terms_.empty()) return 0;
  const auto& e = terms_.rbegin()->first;
  return std::accumulate(e.begin(), e.end(), 0u);
}

unsigned MultivariatePolynomial::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

Rational MultivariatePolynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational MultivariatePolynomial::constant_term() const { return coefficient(Exponent(vars_, 0)); }

const std::pair<const Exponent, Rational>& MultivariatePolynomial::leading() const {
  if (terms_.empty()) throw Error(ErrorCode::InvalidArgument, "zero polynomial has no leading term");
  return *terms_.rbegin();
}

void MultivariatePolynomial::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != vars_) throw Error(ErrorCode::DimensionMismatch, "exponent length differs from variable count");
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

MultivariatePolynomial MultivariatePolynomial::operator-() const {
  MultivariatePolynomial p = *this;
  for (auto& [e, c] : p.terms_) c = -c;
  return p;
}

MultivariatePolynomial& MultivariatePolynomial::operator+=(const MultivariatePolynomial& o) {
  if (o.vars_ != vars_) throw Error(ErrorCode::DimensionMismatch, "variable counts differ");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultivariatePolynomial& MultivariatePolynomial::operator-=(const MultivariatePolynomial& o) {
  if (o.vars_ != vars_) throw Error(ErrorCode::DimensionMismatch, "variable counts differ");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultivariatePolynomial& MultivariatePolynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, x] : terms_) x *= c;
  return *this;
}

MultivariatePolynomial operator*(const MultivariatePolynomial& a, const MultivariatePolynomial& b) {
  if (a.vars_ != b.vars_) throw Error(ErrorCode::DimensionMismatch, "variable counts differ");
  MultivariatePolynomial p(a.vars_);
  Exponent e(a.vars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      p.add_term(e, ca * cb);
    }
  return p;
}

MultivariatePolynomial MultivariatePolynomial::divide_exact(const MultivariatePolynomial& b) const {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZeroMass, "division by the zero polynomial");
  const auto& [lb, cb] = b.leading();
  MultivariatePolynomial q(vars_);
  MultivariatePolynomial r = *this;
  Exponent e(vars_);
  while (!r.is_zero()) {
    const auto& [lr, cr] = r.leading();
    for (std::size_t k = 0; k < vars_; ++k) {
      if (lr[k] < lb[k]) throw Error(ErrorCode::InternalInconsistency, "polynomial division is not exact");
      e[k] = lr[k] - lb[k];
    }
    MultivariatePolynomial t(vars_);
    t.add_term(e, cr / cb);
    q += t;
    r -= t * b;
  }
  return q;
}

MultivariatePolynomial MultivariatePolynomial::pow(unsigned e) const {
  MultivariatePolynomial result = constant(vars_, Rational(1));
  MultivariatePolynomial base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

std::vector<MultivariatePolynomial> MultivariatePolynomial::coefficients_in(std::size_t var) const {
  std::vector<MultivariatePolynomial> out(degree_in(var) + 1, MultivariatePolynomial(vars_));
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    f[var] = 0;
    out[e[var]].add_term(f, c);
  }
  return out;
}

MultivariatePolynomial MultivariatePolynomial::reduce_power(std::size_t var, unsigned d,
                                                            const MultivariatePolynomial& value) const {
  std::vector<MultivariatePolynomial> value_pows{constant(vars_, Rational(1))};
  MultivariatePolynomial out(vars_);
  for (const auto& [e, c] : terms_) {
    unsigned q = e[var] / d;
    while (value_pows.size() <= q) value_pows.push_back(value_pows.back() * value);
    Exponent f = e;
    f[var] = e[var] % d;
    MultivariatePolynomial t(vars_);
    t.add_term(f, c);
    out += t * value_pows[q];
  }
  return out;
}

MultivariatePolynomial MultivariatePolynomial::truncate_variables(std::size_t k) const {
  MultivariatePolynomial out(k);
  for (const auto& [e, c] : terms_) {
    for (std::size_t v = k; v < vars_; ++v)
      if (e[v] != 0) throw Error(ErrorCode::InternalInconsistency, "dropped variable still occurs");
    out.add_term(Exponent(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(k)), c);
  }
  return out;
}

MultivariatePolynomial MultivariatePolynomial::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != vars_) throw Error(ErrorCode::DimensionMismatch, "permutation length");
  MultivariatePolynomial out(vars_);
  for (const auto& [e, c] : terms_) {
    Exponent f(vars_);
    for (std::size_t i = 0; i < vars_; ++i) f[perm[i]] = e[i];
    out.add_term(f, c);
  }
  return out;
}

Rational MultivariatePolynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != vars_)
    throw Error(ErrorCode::DimensionMismatch, "point has " + std::to_string(point.size()) + " coordinates, need " +
                                                  std::to_string(vars_));
  Rational total = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t k = 0; k < vars_; ++k)
      for (unsigned j = 0; j < e[k]; ++j) t *= point[k];
    total += t;
  }
  return total;
}

std::string MultivariatePolynomial::to_text() const {
  std::ostringstream os;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    os << rank1::to_string(it->second);
    for (auto x : it->first) os << ' ' << x;
    os << '\n';
  }
  return os.str();
}

MultivariatePolynomial bareiss_determinant(std::vector<std::vector<MultivariatePolynomial>> m) {
  const std::size_t n = m.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty matrix");
  const std::size_t vars = m[0][0].variables();
  bool negate = false;
  MultivariatePolynomial prev = MultivariatePolynomial::constant(vars, Rational(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k].is_zero()) ++swap;
      if (swap == n) return MultivariatePolynomial(vars);
      std::swap(m[k], m[swap]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).divide_exact(prev);
      m[i][k] = MultivariatePolynomial(vars);
    }
    prev = m[k][k];
  }
  MultivariatePolynomial det = m[n - 1][n - 1];
  return negate ? -det : det;
}

MultivariatePolynomial resultant(const MultivariatePolynomial& f, const MultivariatePolynomial& g, std::size_t var) {
  const std::size_t vars = f.variables();
  if (f.is_zero() || g.is_zero()) return MultivariatePolynomial(vars);
  auto fc = f.coefficients_in(var);
  auto gc = g.coefficients_in(var);
  const std::size_t m = fc.size() - 1;
  const std::size_t n = gc.size() - 1;
  if (m + n == 0) return MultivariatePolynomial::constant(vars, Rational(1));
  std::vector<std::vector<MultivariatePolynomial>> s(m + n,
                                                     std::vector<MultivariatePolynomial>(m + n, MultivariatePolynomial(vars)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k <= m; ++k) s[i][i + m - k] = fc[k];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k <= n; ++k) s[n + i][i + n - k] = gc[k];
  return bareiss_determinant(std::move(s));
}

}  // namespace rank1
