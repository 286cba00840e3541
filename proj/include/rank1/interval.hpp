#pragma once

#include <mpfr.h>

#include <string>

#include "rank1/rational.hpp"

namespace rank1 {

// Closed interval [lower, upper] of MPFR floats. Every operation rounds the
// lower end down and the upper end up, so the true value of any expression
// built from enclosures stays enclosed.
class AlgebraicInterval {
 public:
  static constexpr unsigned kDefaultBits = 128;

  AlgebraicInterval();
  explicit AlgebraicInterval(unsigned bits);
  AlgebraicInterval(const Rational& value, unsigned bits);
  AlgebraicInterval(double value, unsigned bits);
  AlgebraicInterval(const Rational& lower, const Rational& upper, unsigned bits);

  AlgebraicInterval(const AlgebraicInterval& other);
  AlgebraicInterval(AlgebraicInterval&& other) noexcept;
  AlgebraicInterval& operator=(const AlgebraicInterval& other);
  AlgebraicInterval& operator=(AlgebraicInterval&& other) noexcept;
  ~AlgebraicInterval();

  unsigned precision_bits() const { return bits_; }

  double lower_double() const;  // rounded down
  double upper_double() const;  // rounded up
  double mid_double() const;
  double width() const;         // rounded up
  Rational lower_rational() const;
  Rational upper_rational() const;
  Rational mid_rational() const;

  bool contains(const Rational& q) const;
  bool contains(const AlgebraicInterval& other) const;
  bool overlaps(const AlgebraicInterval& other) const;
  /// +1 if the whole interval lies above q, -1 if below, 0 if q is inside.
  int compare(const Rational& q) const;

  /// Decimal rendering of the midpoint with as many digits after the point
  /// as the width certifies (capped at max_digits).
  std::string certified_decimal(int max_digits = 30) const;
  std::string to_string() const;

  AlgebraicInterval operator-() const;
  friend AlgebraicInterval operator+(const AlgebraicInterval& a, const AlgebraicInterval& b);
  friend AlgebraicInterval operator-(const AlgebraicInterval& a, const AlgebraicInterval& b);
  friend AlgebraicInterval operator*(const AlgebraicInterval& a, const AlgebraicInterval& b);
  /// Throws DivisionByZeroMass when b contains zero.
  friend AlgebraicInterval operator/(const AlgebraicInterval& a, const AlgebraicInterval& b);

  /// Enclosure of sqrt over the nonnegative part of x.
  friend AlgebraicInterval sqrt(const AlgebraicInterval& x);
  /// Enclosure of the real nonnegative d-th root over the nonnegative part of x.
  friend AlgebraicInterval root(const AlgebraicInterval& x, unsigned d);
  friend AlgebraicInterval pow(const AlgebraicInterval& x, unsigned e);
  friend AlgebraicInterval hull(const AlgebraicInterval& a, const AlgebraicInterval& b);

  mpfr_srcptr lower_ptr() const { return lo_; }
  mpfr_srcptr upper_ptr() const { return hi_; }

 private:
  void init(unsigned bits);

  unsigned bits_;
  mpfr_t lo_;
  mpfr_t hi_;
};

}  // namespace rank1
