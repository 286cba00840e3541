#pragma once

#include <span>

#include "rank1/model.hpp"
#include "rank1/polynomial.hpp"

namespace rank1 {

inline constexpr unsigned kDefaultDegreeCap = 64;

/// p_{d,n}: vanishes where some choice of complex d-th roots of x_1..x_n sums
/// to one. Degree d^(n-1), constant term 1. Throws DegreeCapExceeded when
/// d^(n-1) > degree_cap, InvalidArgument for d < 1 or n < 2.
MultivariatePolynomial boundary_polynomial(unsigned d, unsigned n, unsigned degree_cap = kDefaultDegreeCap);

/// p_{d,n}(x) without building the polynomial: the determinant of
/// multiplication by (1 - y_1 - ... - y_{n-1})^d - x_n on
/// Q[y]/(y_i^d - x_i).
Rational boundary_value(unsigned d, std::span<const Rational> x);

/// Throws DimensionMismatch.
Rational evaluate(const MultivariatePolynomial& p, std::span<const Rational> point);

enum class Region { Inside, Boundary, Outside };
const char* to_string(Region r);

struct Membership {
  Region region;
  int polynomial_sign;  // sign of p_{d,n} at the point
};

/// Region of the point relative to {sum x_i^(1/d) <= 1}. Throws
/// NegativeValue for negative coordinates.
Membership membership_with_chamber(unsigned d, std::span<const Rational> point, const NumericPolicy& policy = {});

}  // namespace rank1
