#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "rank1/rational.hpp"

namespace rank1 {

using Exponent = std::vector<unsigned>;

// Graded lexicographic order: total degree first, then lexicographic.
struct GrlexLess {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

// Sparse polynomial with rational coefficients; zero coefficients are never
// stored.
class MultivariatePolynomial {
 public:
  explicit MultivariatePolynomial(std::size_t variables = 0) : vars_(variables) {}
  static MultivariatePolynomial constant(std::size_t variables, const Rational& c);
  static MultivariatePolynomial variable(std::size_t variables, std::size_t index);

  std::size_t variables() const { return vars_; }
  const std::map<Exponent, Rational, GrlexLess>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;
  Rational coefficient(const Exponent& e) const;
  Rational constant_term() const;
  /// Largest term in graded lexicographic order. Throws on zero.
  const std::pair<const Exponent, Rational>& leading() const;

  void add_term(const Exponent& e, const Rational& c);

  MultivariatePolynomial operator-() const;
  MultivariatePolynomial& operator+=(const MultivariatePolynomial& o);
  MultivariatePolynomial& operator-=(const MultivariatePolynomial& o);
  MultivariatePolynomial& operator*=(const Rational& c);
  friend MultivariatePolynomial operator+(MultivariatePolynomial a, const MultivariatePolynomial& b) { return a += b; }
  friend MultivariatePolynomial operator-(MultivariatePolynomial a, const MultivariatePolynomial& b) { return a -= b; }
  friend MultivariatePolynomial operator*(const MultivariatePolynomial& a, const MultivariatePolynomial& b);
  friend MultivariatePolynomial operator*(MultivariatePolynomial a, const Rational& c) { return a *= c; }
  friend bool operator==(const MultivariatePolynomial& a, const MultivariatePolynomial& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  /// Exact quotient; throws InternalInconsistency when b does not divide.
  MultivariatePolynomial divide_exact(const MultivariatePolynomial& b) const;
  MultivariatePolynomial pow(unsigned e) const;

  /// Coefficients of var^k as polynomials in the same variables.
  std::vector<MultivariatePolynomial> coefficients_in(std::size_t var) const;
  /// Remainder modulo var^d - (polynomial free of var).
  MultivariatePolynomial reduce_power(std::size_t var, unsigned d, const MultivariatePolynomial& value) const;
  /// Keeps the first k variables; the dropped ones must not occur.
  MultivariatePolynomial truncate_variables(std::size_t k) const;
  /// Variables renamed: new index perm[i] for old index i.
  MultivariatePolynomial permuted(std::span<const std::size_t> perm) const;

  /// Throws DimensionMismatch.
  Rational evaluate(std::span<const Rational> point) const;

  /// One term per line, "coef e1 e2 ...", largest term first.
  std::string to_text() const;

 private:
  std::size_t vars_;
  std::map<Exponent, Rational, GrlexLess> terms_;
};

/// Determinant by fraction-free elimination.
MultivariatePolynomial bareiss_determinant(std::vector<std::vector<MultivariatePolynomial>> m);

/// Resultant of f and g in the given variable, via the Sylvester matrix.
MultivariatePolynomial resultant(const MultivariatePolynomial& f, const MultivariatePolynomial& g, std::size_t var);

}  // namespace rank1
