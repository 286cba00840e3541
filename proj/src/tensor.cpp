#include "rank1/tensor.hpp"

#include <algorithm>
#include <functional>

#include "rank1/complete.hpp"
#include "rank1/decide.hpp"
#include "rank1/error.hpp"

namespace rank1 {

namespace {

void validate(const DiagonalTensorInstance& t) {
  if (t.order == 0) throw Error(ErrorCode::InvalidArgument, "tensor order must be positive");
  if (t.diag.empty()) throw Error(ErrorCode::InvalidArgument, "tensor diagonal is empty");
  for (const auto& a : t.diag)
    if (sgn(a) < 0) throw Error(ErrorCode::NegativeValue, "negative diagonal value " + to_string(a));
}

// With one mode or side one every cell is observed, so the values must sum
// to one exactly.
bool fully_observed(const DiagonalTensorInstance& t) { return t.order == 1 || t.size() == 1; }

std::vector<Real> unit(std::size_t n, std::size_t k) {
  std::vector<Real> e(n, Real(0));
  e[k] = Real(1);
  return e;
}

}  // namespace

TensorFactors complete_diagonal_tensor(const DiagonalTensorInstance& t, const NumericPolicy& policy) {
  validate(t);
  const unsigned d = t.order;
  const std::size_t n = t.size();
  const unsigned bits = policy.working_bits;
  if (fully_observed(t)) {
    Rational total = 0;
    for (const auto& a : t.diag) total += a;
    if (total != 1) throw Error(ErrorCode::NotCompletable, "observed tensor does not sum to one");
    if (d == 1) {
      std::vector<Real> f;
      for (const auto& a : t.diag) f.emplace_back(a);
      return {f};
    }
    return TensorFactors(d, std::vector<Real>{Real(1)});
  }
  Comparison cmp = compare_root_sum(t.diag, d, Rational(1), policy).result;
  if (cmp == Comparison::Greater) throw Error(ErrorCode::NotCompletable, "root sum exceeds one");
  std::vector<Real> r;
  Real S;
  for (const auto& a : t.diag) {
    r.push_back(root(Real(a, bits), d));
    S = S + r.back();
  }
  if (cmp == Comparison::Equal) return TensorFactors(d, r);

  std::vector<std::size_t> zeros;
  for (std::size_t i = 0; i < n; ++i)
    if (sgn(t.diag[i]) == 0) zeros.push_back(i);
  if (zeros.size() == n) {
    TensorFactors f(d, unit(n, 1));
    f[0] = unit(n, 0);
    return f;
  }
  std::vector<Real> scaled;  // r / S
  for (const auto& x : r) scaled.push_back(x / S);
  Real S_pow(Rational(1), bits);
  for (unsigned k = 0; k + 1 < d; ++k) S_pow = S_pow * S;

  if (!zeros.empty()) {
    // The first d-1 factors vanish on the zero coordinates; the last factor
    // puts its leftover mass there.
    TensorFactors f(d, scaled);
    Real rest = Real(1) - S_pow * S;
    for (std::size_t i = 0; i < n; ++i) f[d - 1][i] = r[i] * S_pow;
    for (auto i : zeros) f[d - 1][i] = rest / Real(Rational(static_cast<long>(zeros.size())));
    return f;
  }

  if (d == 2) {
    std::vector<Rational> rest(t.diag.begin() + 2, t.diag.end());
    auto walk = complete_pair_walk(t.diag[0], t.diag[1], rest, policy);
    return {walk.completions[0].u, walk.completions[0].v};
  }

  // Middle factors stay at r / S. The first moves along e0 - e1 and the last
  // is determined coordinatewise; bisect until the last sums to one.
  std::vector<Real> c;
  for (std::size_t i = 0; i < n; ++i) {
    Real mid(Rational(1), bits);
    for (unsigned k = 0; k + 2 < d; ++k) mid = mid * scaled[i];
    c.push_back(Real(t.diag[i], bits) / mid);
  }
  auto first = [&](const Rational& tau) {
    std::vector<Real> u = scaled;
    u[0] = u[0] + Real(tau, bits);
    u[1] = u[1] - Real(tau, bits);
    return u;
  };
  auto last = [&](const std::vector<Real>& u) {
    std::vector<Real> v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(c[i] / u[i]);
    return v;
  };
  auto excess = [&](const Rational& tau) {
    Real s;
    for (const auto& x : last(first(tau))) s = s + x;
    return (s - Real(1)).enclosure();
  };
  Rational lo = 0;
  Rational hi = scaled[1].enclosure().lower_rational();
  hi -= hi / (mpz_class(1) << 40);
  while (excess(hi).compare(Rational(0)) <= 0) hi += (scaled[1].enclosure().lower_rational() - hi) / 2;
  for (int it = 0; it < 200; ++it) {
    Rational m = (lo + hi) / 2;
    int sgn_m = excess(m).compare(Rational(0));
    if (sgn_m == 0) {
      lo = hi = m;
      break;
    }
    (sgn_m < 0 ? lo : hi) = m;
  }
  std::vector<Real> u = first(hi);
  TensorFactors f(d, scaled);
  f[0] = u;
  f[d - 1] = last(u);
  return f;
}

Certificate decide_diagonal_tensor(const DiagonalTensorInstance& t, const NumericPolicy& policy) {
  validate(t);
  if (fully_observed(t)) {
    Rational total = 0;
    for (const auto& a : t.diag) total += a;
    if (total != 1) return Certificate(SumNotOne{total});
  } else {
    auto cmp = compare_root_sum(t.diag, t.order, Rational(1), policy);
    if (cmp.result == Comparison::Greater) return Certificate(NormExcess{cmp.sum});
  }
  Witness w;
  w.tensor_factors = complete_diagonal_tensor(t, policy);
  if (t.order == 2) w.factorization = {w.tensor_factors[0], w.tensor_factors[1]};
  return Certificate(std::move(w));
}

Real tensor_entry(const TensorFactors& f, const std::vector<std::size_t>& index) {
  if (index.size() != f.size()) throw Error(ErrorCode::DimensionMismatch, "index length differs from the order");
  Real p(Rational(1));
  for (std::size_t k = 0; k < f.size(); ++k) p = p * f[k].at(index[k]);
  return p;
}

// ---------------------------------------------------------------------------
// Sturm sequences over the rationals.

namespace {

using Poly = std::vector<Rational>;  // constant term first

void trim(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
  trim(d);
  return d;
}

// Remainder and quotient of a by b.
std::pair<Poly, Poly> divide(Poly a, const Poly& b) {
  trim(a);
  Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0);
  while (a.size() >= b.size() && !a.empty()) {
    Rational coef = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    q[shift] = coef;
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= coef * b[k];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {a, q};
}

Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divide(a, b).first;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Rational evaluate(const Poly& p, const Rational& x) {
  Rational v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + *it;
  return v;
}

std::vector<Poly> sturm_sequence(Poly p) {
  trim(p);
  Poly g = gcd(p, derivative(p));
  if (g.size() > 1) p = divide(p, g).second;
  std::vector<Poly> seq{p, derivative(p)};
  while (!seq.back().empty()) {
    Poly r = divide(seq[seq.size() - 2], seq.back()).first;
    for (auto& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  seq.pop_back();
  return seq;
}

int variations(const std::vector<Poly>& seq, const Rational& x) {
  int count = 0;
  int last = 0;
  for (const auto& p : seq) {
    int s = sgn(evaluate(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

std::size_t count_roots(const std::vector<Rational>& poly, const Rational& lower, const Rational& upper) {
  Poly p = poly;
  trim(p);
  if (p.empty()) throw Error(ErrorCode::InvalidArgument, "zero polynomial has every point as a root");
  if (p.size() == 1) return 0;
  auto seq = sturm_sequence(p);
  int diff = variations(seq, lower) - variations(seq, upper);
  return diff > 0 ? static_cast<std::size_t>(diff) : 0;
}

// ---------------------------------------------------------------------------
// 2x2x2 patterns.

const char* to_string(Case222 c) {
  switch (c) {
    case Case222::Single: return "Single";
    case Case222::PairEdge: return "PairEdge";
    case Case222::PairFace: return "PairFace";
    case Case222::PairOpposite: return "PairOpposite";
    case Case222::TripleCorner: return "TripleCorner";
    case Case222::TripleSkew: return "TripleSkew";
    case Case222::TripleScattered: return "TripleScattered";
  }
  return "?";
}

namespace {

struct Symmetry {
  std::array<unsigned, 3> perm;
  unsigned flip;

  unsigned apply(unsigned p) const {
    unsigned out = 0;
    for (unsigned a = 0; a < 3; ++a) {
      unsigned bit = ((p >> (2 - perm[a])) & 1u) ^ ((flip >> (2 - a)) & 1u);
      out |= bit << (2 - a);
    }
    return out;
  }
};

struct Representative {
  Case222 kind;
  std::vector<unsigned> positions;
};

const std::vector<Representative>& representatives() {
  static const std::vector<Representative> reps = {
      {Case222::Single, {0}},          {Case222::PairEdge, {0, 1}},        {Case222::PairFace, {0, 3}},
      {Case222::PairOpposite, {0, 7}}, {Case222::TripleCorner, {0, 1, 2}}, {Case222::TripleSkew, {0, 1, 6}},
      {Case222::TripleScattered, {0, 5, 3}},
  };
  return reps;
}

struct Canonical {
  Case222 kind;
  Symmetry g;
  std::vector<Rational> values;  // in the order of the representative's positions
};

Canonical canonicalize(const Pattern222& p) {
  for (const auto& [pos, v] : p.entries) {
    if (pos > 7) throw Error(ErrorCode::OutOfRange, "2x2x2 position out of range");
    if (sgn(v) < 0) throw Error(ErrorCode::NegativeValue, "negative tensor entry");
  }
  std::array<unsigned, 3> perm{0, 1, 2};
  do {
    for (unsigned flip = 0; flip < 8; ++flip) {
      Symmetry g{perm, flip};
      std::map<unsigned, Rational> image;
      for (const auto& [pos, v] : p.entries) image.emplace(g.apply(pos), v);
      for (const auto& rep : representatives()) {
        if (rep.positions.size() != image.size()) continue;
        if (!std::all_of(rep.positions.begin(), rep.positions.end(),
                         [&](unsigned q) { return image.count(q) != 0; }))
          continue;
        Canonical c{rep.kind, g, {}};
        for (auto q : rep.positions) c.values.push_back(image.at(q));
        return c;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  throw Error(ErrorCode::UnsupportedPattern, "pattern is not one of the listed 2x2x2 orbits");
}

// Factors in the original frame from factors in the representative frame.
TensorFactors pull_back(const TensorFactors& rep, const Symmetry& g) {
  TensorFactors out(3, std::vector<Real>(2));
  for (unsigned a = 0; a < 3; ++a) {
    unsigned flip = (g.flip >> (2 - a)) & 1u;
    for (unsigned v = 0; v < 2; ++v) out[g.perm[a]][v] = rep[a][v ^ flip];
  }
  return out;
}

std::vector<Real> pair(const Rational& x) { return {Real(x), Real(Rational(1) - x)}; }

Certificate tensor_witness(const TensorFactors& f, const Symmetry& g) {
  Witness w;
  w.tensor_factors = pull_back(f, g);
  return Certificate(std::move(w));
}

PartialMatrix two_by_two(const std::vector<Entry>& entries, std::size_t rows = 2) {
  return make_partial_matrix(rows, 2, entries);
}

Certificate via_matrix(const PartialMatrix& m, const NumericPolicy& policy,
                       const std::function<TensorFactors(const RankOneFactorization&)>& lift, const Symmetry& g) {
  Certificate c = decide(m, policy);
  if (!c.completable()) return c;
  return tensor_witness(lift(*c.witness()), g);
}

}  // namespace

Case222 classify_222(const Pattern222& p) { return canonicalize(p).kind; }

Certificate decide_222(const Pattern222& p, const NumericPolicy& policy) {
  Canonical c = canonicalize(p);
  const auto& v = c.values;
  const Symmetry& g = c.g;
  const std::vector<Real> e0{Real(1), Real(0)};
  switch (c.kind) {
    case Case222::Single: {
      if (v[0] > 1) return Certificate(NormExcess{AlgebraicInterval(v[0], policy.working_bits)});
      return tensor_witness({pair(v[0]), e0, e0}, g);
    }
    case Case222::PairEdge: {
      Rational s = v[0] + v[1];
      if (s > 1) return Certificate(NormExcess{AlgebraicInterval(s, policy.working_bits)});
      std::vector<Real> z = sgn(s) > 0 ? std::vector<Real>{Real(v[0] / s), Real(v[1] / s)} : e0;
      return tensor_witness({pair(s), e0, z}, g);
    }
    case Case222::PairFace:
      return via_matrix(two_by_two({{0, 0, v[0]}, {1, 1, v[1]}}), policy,
                        [&](const RankOneFactorization& f) { return TensorFactors{e0, f.u, f.v}; }, g);
    case Case222::PairOpposite: {
      Certificate d = decide_diagonal_tensor({3, {v[0], v[1]}}, policy);
      if (!d.completable()) return d;
      return tensor_witness(std::get<Witness>(d.evidence()).tensor_factors, g);
    }
    case Case222::TripleCorner:
      // Slice i = 0 is sigma * y z^T; a free third row carries 1 - sigma.
      return via_matrix(two_by_two({{0, 0, v[0]}, {0, 1, v[1]}, {1, 0, v[2]}}, 3), policy,
                        [&](const RankOneFactorization& f) {
                          Real sigma = f.u[0] + f.u[1];
                          bool empty = sigma.is_exact() && sgn(*sigma.exact()) == 0;
                          std::vector<Real> y = empty ? e0 : std::vector<Real>{f.u[0] / sigma, f.u[1] / sigma};
                          return TensorFactors{{sigma, f.u[2]}, y, f.v};
                        },
                        g);
    case Case222::TripleSkew: {
      const Rational &a = v[0], &b = v[1], &cc = v[2];
      std::vector<Real> z;
      Rational w00, w11;
      if (sgn(a) > 0) {
        z = {Real(a / (a + b)), Real(b / (a + b))};
        w00 = a + b;
        w11 = cc * (a + b) / a;
      } else if (sgn(b) > 0 && sgn(cc) > 0) {
        // Rows of the (ij) x k flattening: t000 = 0 sees t001 and t110.
        return Certificate(ThreeLineViolation{{Position{0, 0}, Position{0, 1}, Position{3, 0}}});
      } else if (sgn(b) == 0) {
        z = e0;
        w11 = cc;
      } else {
        z = {Real(0), Real(1)};
        w00 = b;
      }
      return via_matrix(two_by_two({{0, 0, w00}, {1, 1, w11}}), policy,
                        [&](const RankOneFactorization& f) { return TensorFactors{f.u, f.v, z}; }, g);
    }
    case Case222::TripleScattered: {
      const Rational &a = v[0], &b = v[1], &cc = v[2];
      if (sgn(a) == 0)
        return via_matrix(two_by_two({{1, 0, b}, {0, 1, cc}}), policy,
                          [&](const RankOneFactorization& f) {
                            return TensorFactors{f.u, f.v, {Real(0), Real(1)}};
                          },
                          g);
      if (sgn(b) == 0)
        return via_matrix(two_by_two({{0, 0, a}, {1, 1, cc}}), policy,
                          [&](const RankOneFactorization& f) { return TensorFactors{e0, f.u, f.v}; }, g);
      if (sgn(cc) == 0)
        return via_matrix(two_by_two({{0, 0, a}, {1, 1, b}}), policy,
                          [&](const RankOneFactorization& f) { return TensorFactors{f.u, e0, f.v}; }, g);
      // x = t001 solves (x + a)(x + b)(x + c) = x^2.
      std::vector<Rational> poly{a * b * cc, a * b + a * cc + b * cc, a + b + cc - 1, Rational(1)};
      if (count_roots(poly, 0, 1) == 0) return Certificate(PolynomialNoRoot{poly, 0, 1});
      Rational lo = 0, hi = 1;
      const Rational width(1, mpz_class(1) << 120);
      while (hi - lo > width && sgn(evaluate(poly, hi)) != 0) {
        Rational mid = (lo + hi) / 2;
        if (count_roots(poly, lo, mid) > 0)
          hi = mid;
        else
          lo = mid;
      }
      Real x = sgn(evaluate(poly, hi)) == 0 ? Real(hi) : Real(AlgebraicInterval(lo, hi, policy.working_bits));
      Real x0 = x / (x + Real(b));
      Real y0 = x / (x + Real(cc));
      Real z1 = x / (x + Real(a));
      const Real one(1);
      return tensor_witness({{x0, one - x0}, {y0, one - y0}, {one - z1, z1}}, g);
    }
  }
  throw Error(ErrorCode::UnsupportedPattern, "unhandled 2x2x2 case");
}

// ---------------------------------------------------------------------------
// Rank two completions of 3x3 matrices.

Rank2Completion complete_rank2_3x3(const std::array<Rational, 7>& values, Rank2Pattern pattern) {
  for (const auto& x : values)
    if (sgn(x) < 0) throw Error(ErrorCode::NegativeValue, "negative observed value");
  const auto& [a, b, c, d, e, f, g] = values;
  Rational R = 1;
  for (const auto& x : values) R -= x;
  if (sgn(R) < 0) throw Error(ErrorCode::InvalidArgument, "observed values sum to more than one");

  Rank2Completion out;
  auto fill = [&](const Real& X) {
    const Real RX = Real(R) - X;
    if (pattern == Rank2Pattern::A)
      out.matrix = {{{Real(a), Real(b), Real(c)}, {Real(d), Real(e), Real(f)}, {Real(g), X, RX}}};
    else
      out.matrix = {{{Real(a), Real(b), Real(c)}, {Real(d), X, Real(f)}, {Real(g), Real(e), RX}}};
  };
  if (pattern == Rank2Pattern::A) {
    Rational den = (a * e - b * d) + (a * f - c * d);
    if (sgn(den) == 0) throw Error(ErrorCode::DegenerateDenominator, "(ae - bd) + (af - cd) vanishes");
    Rational X = (g * (b * f - c * e) + R * (a * e - b * d)) / den;
    out.roots.emplace_back(X);
    if (sgn(X) >= 0 && X <= R) {
      out.completable = true;
      out.X = Real(X);
      fill(*out.X);
    }
    return out;
  }

  // a X^2 - p X + q = 0 from the determinant.
  Rational p = a * R + b * d - c * g;
  Rational q = a * e * f + b * d * R - b * f * g - c * d * e;
  if (sgn(a) == 0) {
    if (sgn(p) == 0) throw Error(ErrorCode::DegenerateDenominator, "determinant does not depend on X");
    out.roots.emplace_back(Rational(q / p));
  } else {
    Rational disc = p * p - 4 * a * q;
    if (sgn(disc) < 0) return out;
    for (unsigned bits = AlgebraicInterval::kDefaultBits;; bits *= 2) {
      Real root_disc = sqrt(Real(disc, bits));
      std::vector<Real> roots{(Real(p, bits) + root_disc) / Real(Rational(2 * a), bits),
                              (Real(p, bits) - root_disc) / Real(Rational(2 * a), bits)};
      bool settled = true;
      for (const auto& x : roots)
        if (!x.is_exact() && (x.enclosure().contains(Rational(0)) || x.enclosure().contains(R))) settled = false;
      if (settled || bits >= 8192) {
        out.roots = std::move(roots);
        break;
      }
    }
  }
  for (const auto& x : out.roots) {
    bool inside = x.is_exact() ? (sgn(*x.exact()) >= 0 && *x.exact() <= R)
                               : (x.enclosure().compare(Rational(0)) > 0 && x.enclosure().compare(R) < 0);
    if (inside) {
      out.completable = true;
      out.X = x;
      fill(x);
      break;
    }
  }
  return out;
}

}  // namespace rank1
