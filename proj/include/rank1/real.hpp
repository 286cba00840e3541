#pragma once

#include <optional>
#include <string>

#include "rank1/interval.hpp"
#include "rank1/rational.hpp"

namespace rank1 {

// A real number carried as an outward-rounded enclosure, plus its exact
// rational value whenever every step that produced it was rational
// (including square and d-th roots of perfect powers).
class Real {
 public:
  Real();
  Real(const Rational& value, unsigned bits = AlgebraicInterval::kDefaultBits);
  explicit Real(AlgebraicInterval enclosure);
  static Real from_double(double x);

  bool is_exact() const { return exact_.has_value(); }
  const std::optional<Rational>& exact() const { return exact_; }
  const AlgebraicInterval& enclosure() const { return enclosure_; }
  unsigned precision_bits() const { return enclosure_.precision_bits(); }

  double to_double() const;
  /// Exact value when known, else the certified decimal of the enclosure.
  std::string to_string() const;

  Real operator-() const;
  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);

  friend Real sqrt(const Real& x);
  friend Real root(const Real& x, unsigned d);

 private:
  std::optional<Rational> exact_;
  AlgebraicInterval enclosure_;
};

}  // namespace rank1
