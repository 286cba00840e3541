#include "rank1/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include <mpfr.h>

#include "rank1/error.hpp"

namespace rank1 {

namespace {

[[noreturn]] void parse_failure(std::string_view text, const char* why) {
  throw Error(ErrorCode::Parse, std::string("cannot parse number '") + std::string(text) + "': " + why);
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

mpz_class ten_pow(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) parse_failure(text, "bad exponent");
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
  }
  std::string_view int_part = s;
  std::string_view frac_part;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) parse_failure(text, "no digits");
  if (!int_part.empty() && !all_digits(int_part)) parse_failure(text, "bad integer part");
  if (!frac_part.empty() && !all_digits(frac_part)) parse_failure(text, "bad fractional part");

  std::string digits = std::string(int_part) + std::string(frac_part);
  mpz_class mantissa(digits.empty() ? std::string("0") : digits, 10);
  long scale = exponent - static_cast<long>(frac_part.size());
  Rational q;
  if (scale >= 0) {
    q = Rational(mantissa * ten_pow(static_cast<unsigned long>(scale)));
  } else {
    q = Rational(mantissa, ten_pow(static_cast<unsigned long>(-scale)));
    q.canonicalize();
  }
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) parse_failure(text, "empty");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    std::string_view num_digits = num;
    if (!num_digits.empty() && (num_digits.front() == '-' || num_digits.front() == '+'))
      num_digits.remove_prefix(1);
    if (!all_digits(num_digits) || !all_digits(den)) parse_failure(text, "expected p/q with integer p, q");
    mpz_class p(std::string(num_digits), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) parse_failure(text, "zero denominator");
    if (!num.empty() && num.front() == '-') p = -p;
    Rational q(p, d);
    q.canonicalize();
    return q;
  }
  return parse_decimal(s);
}

std::string to_string(const Rational& q) { return q.get_str(10); }

std::optional<Rational> exact_root(const Rational& q, unsigned d) {
  if (d == 0 || sgn(q) < 0) return std::nullopt;
  if (d == 1) return q;
  mpz_class num, den;
  if (mpz_root(num.get_mpz_t(), q.get_num_mpz_t(), d) == 0) return std::nullopt;
  if (mpz_root(den.get_mpz_t(), q.get_den_mpz_t(), d) == 0) return std::nullopt;
  Rational r(num, den);
  r.canonicalize();
  return r;
}

double to_double(const Rational& q) {
  mpfr_t x;
  mpfr_init2(x, 53);
  mpfr_set_q(x, q.get_mpq_t(), MPFR_RNDN);
  double d = mpfr_get_d(x, MPFR_RNDN);
  mpfr_clear(x);
  return d;
}

Rational from_double_exact(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "non-finite double");
  Rational q(x);  // exact: mpq_set_d
  return q;
}

}  // namespace rank1
