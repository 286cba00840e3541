#include "rank1/real.hpp"

#include <algorithm>

#include "rank1/error.hpp"

namespace rank1 {

Real::Real() : exact_(Rational(0)), enclosure_(Rational(0), AlgebraicInterval::kDefaultBits) {}

Real::Real(const Rational& value, unsigned bits) : exact_(value), enclosure_(value, bits) {}

Real::Real(AlgebraicInterval enclosure) : enclosure_(std::move(enclosure)) {}

Real Real::from_double(double x) { return Real(from_double_exact(x)); }

double Real::to_double() const {
  if (exact_) return rank1::to_double(*exact_);
  return enclosure_.mid_double();
}

std::string Real::to_string() const {
  if (exact_) return rank1::to_string(*exact_);
  return enclosure_.certified_decimal();
}

Real Real::operator-() const {
  Real r(-enclosure_);
  if (exact_) r.exact_ = -*exact_;
  return r;
}

Real operator+(const Real& a, const Real& b) {
  if (a.exact_ && b.exact_)
    return Real(Rational(*a.exact_ + *b.exact_), std::max(a.precision_bits(), b.precision_bits()));
  return Real(a.enclosure_ + b.enclosure_);
}

Real operator-(const Real& a, const Real& b) {
  if (a.exact_ && b.exact_)
    return Real(Rational(*a.exact_ - *b.exact_), std::max(a.precision_bits(), b.precision_bits()));
  return Real(a.enclosure_ - b.enclosure_);
}

Real operator*(const Real& a, const Real& b) {
  if (a.exact_ && b.exact_)
    return Real(Rational(*a.exact_ * *b.exact_), std::max(a.precision_bits(), b.precision_bits()));
  // An exact zero annihilates regardless of the other operand's width.
  if ((a.exact_ && sgn(*a.exact_) == 0) || (b.exact_ && sgn(*b.exact_) == 0))
    return Real(Rational(0), std::max(a.precision_bits(), b.precision_bits()));
  return Real(a.enclosure_ * b.enclosure_);
}

Real operator/(const Real& a, const Real& b) {
  if (b.exact_ && sgn(*b.exact_) == 0) throw Error(ErrorCode::DivisionByZeroMass, "division by exact zero");
  if (a.exact_ && b.exact_)
    return Real(Rational(*a.exact_ / *b.exact_), std::max(a.precision_bits(), b.precision_bits()));
  if (a.exact_ && sgn(*a.exact_) == 0) return Real(Rational(0), std::max(a.precision_bits(), b.precision_bits()));
  return Real(a.enclosure_ / b.enclosure_);
}

Real sqrt(const Real& x) { return root(x, 2); }

Real root(const Real& x, unsigned d) {
  if (x.exact_) {
    if (sgn(*x.exact_) < 0) throw Error(ErrorCode::InvalidArgument, "root of a negative number");
    if (auto r = exact_root(*x.exact_, d)) return Real(*r, x.precision_bits());
    return Real(root(AlgebraicInterval(*x.exact_, x.precision_bits()), d));
  }
  return Real(root(x.enclosure_, d));
}

}  // namespace rank1
