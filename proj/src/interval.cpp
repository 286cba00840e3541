#include "rank1/interval.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rank1/error.hpp"

namespace rank1 {

namespace {

Rational to_rational(mpfr_srcptr x) {
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  Rational q(m);
  if (e >= 0)
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  else
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  return q;
}

}  // namespace

void AlgebraicInterval::init(unsigned bits) {
  bits_ = std::max(bits, 2u);
  mpfr_init2(lo_, static_cast<mpfr_prec_t>(bits_));
  mpfr_init2(hi_, static_cast<mpfr_prec_t>(bits_));
}

AlgebraicInterval::AlgebraicInterval() : AlgebraicInterval(kDefaultBits) {}

AlgebraicInterval::AlgebraicInterval(unsigned bits) {
  init(bits);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

AlgebraicInterval::AlgebraicInterval(const Rational& value, unsigned bits) {
  init(bits);
  mpfr_set_q(lo_, value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, value.get_mpq_t(), MPFR_RNDU);
}

AlgebraicInterval::AlgebraicInterval(double value, unsigned bits) {
  init(std::max(bits, 53u));
  mpfr_set_d(lo_, value, MPFR_RNDD);
  mpfr_set_d(hi_, value, MPFR_RNDU);
}

AlgebraicInterval::AlgebraicInterval(const Rational& lower, const Rational& upper, unsigned bits) {
  if (lower > upper) throw Error(ErrorCode::InvalidArgument, "interval with lower > upper");
  init(bits);
  mpfr_set_q(lo_, lower.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, upper.get_mpq_t(), MPFR_RNDU);
}

AlgebraicInterval::AlgebraicInterval(const AlgebraicInterval& other) {
  init(other.bits_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

AlgebraicInterval::AlgebraicInterval(AlgebraicInterval&& other) noexcept {
  init(other.bits_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

AlgebraicInterval& AlgebraicInterval::operator=(const AlgebraicInterval& other) {
  if (this != &other) {
    bits_ = other.bits_;
    mpfr_set_prec(lo_, static_cast<mpfr_prec_t>(bits_));
    mpfr_set_prec(hi_, static_cast<mpfr_prec_t>(bits_));
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

AlgebraicInterval& AlgebraicInterval::operator=(AlgebraicInterval&& other) noexcept {
  std::swap(bits_, other.bits_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

AlgebraicInterval::~AlgebraicInterval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

double AlgebraicInterval::lower_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double AlgebraicInterval::upper_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double AlgebraicInterval::mid_double() const {
  mpfr_t m;
  mpfr_init2(m, static_cast<mpfr_prec_t>(bits_ + 1));
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  double d = mpfr_get_d(m, MPFR_RNDN);
  mpfr_clear(m);
  return d;
}

double AlgebraicInterval::width() const {
  mpfr_t w;
  mpfr_init2(w, 53);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  double d = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return d;
}

Rational AlgebraicInterval::lower_rational() const { return to_rational(lo_); }
Rational AlgebraicInterval::upper_rational() const { return to_rational(hi_); }
Rational AlgebraicInterval::mid_rational() const { return (lower_rational() + upper_rational()) / 2; }

bool AlgebraicInterval::contains(const Rational& q) const { return compare(q) == 0; }

bool AlgebraicInterval::contains(const AlgebraicInterval& other) const {
  return mpfr_lessequal_p(lo_, other.lo_) && mpfr_lessequal_p(other.hi_, hi_);
}

bool AlgebraicInterval::overlaps(const AlgebraicInterval& other) const {
  return mpfr_lessequal_p(lo_, other.hi_) && mpfr_lessequal_p(other.lo_, hi_);
}

int AlgebraicInterval::compare(const Rational& q) const {
  if (mpfr_cmp_q(lo_, q.get_mpq_t()) > 0) return 1;
  if (mpfr_cmp_q(hi_, q.get_mpq_t()) < 0) return -1;
  return 0;
}

std::string AlgebraicInterval::certified_decimal(int max_digits) const {
  double w = width();
  int digits = max_digits;
  if (w > 0) digits = std::clamp(static_cast<int>(std::floor(-std::log10(w))) - 1, 0, max_digits);
  mpfr_t m;
  mpfr_init2(m, static_cast<mpfr_prec_t>(bits_ + 1));
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  std::vector<char> buf(static_cast<std::size_t>(max_digits) + 64 +
                        static_cast<std::size_t>(std::max<long>(0, mpfr_get_exp(m))));
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rf", digits, m);
  mpfr_clear(m);
  std::string s(buf.data());
  if (s == "-0" || s.rfind("-0.", 0) == 0) {
    bool all_zero = std::all_of(s.begin() + 1, s.end(), [](char c) { return c == '0' || c == '.'; });
    if (all_zero) s.erase(0, 1);
  }
  return s;
}

std::string AlgebraicInterval::to_string() const {
  std::vector<char> buf(128);
  mpfr_snprintf(buf.data(), buf.size(), "[%.20Re, %.20Re]", lo_, hi_);
  return std::string(buf.data());
}

AlgebraicInterval AlgebraicInterval::operator-() const {
  AlgebraicInterval r(bits_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

AlgebraicInterval operator+(const AlgebraicInterval& a, const AlgebraicInterval& b) {
  AlgebraicInterval r(std::max(a.bits_, b.bits_));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

AlgebraicInterval operator-(const AlgebraicInterval& a, const AlgebraicInterval& b) {
  AlgebraicInterval r(std::max(a.bits_, b.bits_));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

AlgebraicInterval operator*(const AlgebraicInterval& a, const AlgebraicInterval& b) {
  unsigned bits = std::max(a.bits_, b.bits_);
  AlgebraicInterval r(bits);
  mpfr_t t;
  mpfr_init2(t, static_cast<mpfr_prec_t>(bits));
  mpfr_srcptr as[2] = {a.lo_, a.hi_};
  mpfr_srcptr bs[2] = {b.lo_, b.hi_};
  mpfr_set_inf(r.lo_, 1);
  mpfr_set_inf(r.hi_, -1);
  for (auto x : as) {
    for (auto y : bs) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    }
  }
  mpfr_clear(t);
  return r;
}

AlgebraicInterval operator/(const AlgebraicInterval& a, const AlgebraicInterval& b) {
  if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0)
    throw Error(ErrorCode::DivisionByZeroMass, "interval divisor contains zero");
  unsigned bits = std::max(a.bits_, b.bits_);
  AlgebraicInterval r(bits);
  mpfr_t t;
  mpfr_init2(t, static_cast<mpfr_prec_t>(bits));
  mpfr_srcptr as[2] = {a.lo_, a.hi_};
  mpfr_srcptr bs[2] = {b.lo_, b.hi_};
  mpfr_set_inf(r.lo_, 1);
  mpfr_set_inf(r.hi_, -1);
  for (auto x : as) {
    for (auto y : bs) {
      mpfr_div(t, x, y, MPFR_RNDD);
      mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
      mpfr_div(t, x, y, MPFR_RNDU);
      mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
    }
  }
  mpfr_clear(t);
  return r;
}

AlgebraicInterval sqrt(const AlgebraicInterval& x) {
  if (mpfr_sgn(x.hi_) < 0) throw Error(ErrorCode::InvalidArgument, "sqrt of a negative interval");
  AlgebraicInterval r(x.bits_);
  if (mpfr_sgn(x.lo_) <= 0)
    mpfr_set_zero(r.lo_, 1);
  else
    mpfr_sqrt(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

AlgebraicInterval root(const AlgebraicInterval& x, unsigned d) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "zeroth root");
  if (d == 1) return x;
  if (mpfr_sgn(x.hi_) < 0) throw Error(ErrorCode::InvalidArgument, "root of a negative interval");
  AlgebraicInterval r(x.bits_);
  if (mpfr_sgn(x.lo_) <= 0)
    mpfr_set_zero(r.lo_, 1);
  else
    mpfr_rootn_ui(r.lo_, x.lo_, d, MPFR_RNDD);
  mpfr_rootn_ui(r.hi_, x.hi_, d, MPFR_RNDU);
  return r;
}

AlgebraicInterval pow(const AlgebraicInterval& x, unsigned e) {
  AlgebraicInterval r(Rational(1), x.bits_);
  for (unsigned i = 0; i < e; ++i) r = r * x;
  return r;
}

AlgebraicInterval hull(const AlgebraicInterval& a, const AlgebraicInterval& b) {
  AlgebraicInterval r(std::max(a.bits_, b.bits_));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

}  // namespace rank1
