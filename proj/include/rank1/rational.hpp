#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace rank1 {

// Exact rational in lowest terms with a positive denominator. gmpxx keeps
// arithmetic results canonical; parse_rational canonicalizes input.
using Rational = mpq_class;

/// Parses "p/q", an integer, or a finite decimal such as "0.16", "-.5" or
/// "1.25e-3" into an exact rational ("0.16" gives 4/25).
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

/// The rational d-th root of q >= 0 when it exists.
std::optional<Rational> exact_root(const Rational& q, unsigned d);

/// Correctly rounded (to nearest) double.
double to_double(const Rational& q);

/// Exact value of a finite double.
Rational from_double_exact(double x);

}  // namespace rank1
