#include "rank1/complete.hpp"

#include <algorithm>

#include "rank1/error.hpp"
#include "rank1/random.hpp"

namespace rank1 {

Real f_sum(std::span<const Real> u, std::span<const Rational> a) {
  if (u.size() != a.size()) throw Error(ErrorCode::DimensionMismatch, "u and a differ in length");
  Real total;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    if ((u[i].is_exact() && sgn(*u[i].exact()) == 0) || u[i].enclosure().upper_rational() <= 0)
      throw Error(ErrorCode::DivisionByZeroMass, "u_" + std::to_string(i) + " is zero where a is positive");
    total = total + Real(a[i]) / u[i];
  }
  return total;
}

const char* to_string(CompletionKind k) {
  switch (k) {
    case CompletionKind::Empty: return "Empty";
    case CompletionKind::Unique: return "Unique";
    case CompletionKind::Pair: return "Pair";
    case CompletionKind::Finite: return "Finite";
    case CompletionKind::Family: return "Family";
  }
  return "?";
}

namespace {

ContractedInstance diagonal_instance(std::span<const Rational> b) {
  ContractedInstance c;
  c.m = c.n = b.size();
  for (std::size_t i = 0; i < b.size(); ++i) c.blocks.push_back({b[i], {i}, {i}, {{Rational(1)}, {Rational(1)}}});
  return c;
}

std::vector<Real> sqrt_all(std::span<const Rational> b, unsigned bits) {
  std::vector<Real> r;
  for (const auto& x : b) r.push_back(sqrt(Real(x, bits)));
  return r;
}

}  // namespace

RankOneFactorization complete_unique_boundary(const ContractedInstance& c, const NumericPolicy& policy) {
  auto b = c.block_sums();
  if (b.empty() || compare_root_sum(b, 2, Rational(1), policy).result != Comparison::Equal)
    throw Error(ErrorCode::NotOnBoundary, "block roots do not sum to one");
  auto r = sqrt_all(b, policy.working_bits);
  return expand(c, r, r, std::vector<Real>(c.free_rows.size(), Real(0)),
                std::vector<Real>(c.free_cols.size(), Real(0)));
}

RankOneFactorization complete_unique_boundary(std::span<const Rational> b, const NumericPolicy& policy) {
  return complete_unique_boundary(diagonal_instance(b), policy);
}

std::optional<std::array<mpz_class, 3>> WalkParameters::integer_coefficients() const {
  if (!A.is_exact() || !B.is_exact() || !C.is_exact()) return std::nullopt;
  std::array<Rational, 3> q{*A.exact(), *B.exact(), *C.exact()};
  mpz_class l = 1;
  for (const auto& x : q) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::array<mpz_class, 3> z;
  mpz_class g = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    z[k] = q[k].get_num() * (l / q[k].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[k].get_mpz_t());
  }
  if (g != 0)
    for (auto& x : z) x /= g;
  return z;
}

WalkParameters walk_parameters(std::span<const Rational> a, const NumericPolicy& policy) {
  if (a.size() < 2) throw Error(ErrorCode::InvalidArgument, "the walk needs at least two coordinates");
  for (const auto& x : a)
    if (sgn(x) <= 0) throw Error(ErrorCode::InvalidArgument, "walk coordinates must be positive");
  if (compare_root_sum(a, 2, Rational(1), policy).result != Comparison::Less)
    throw Error(ErrorCode::NotStrictlyInterior, "root sum is not below one");
  auto r = sqrt_all(a, policy.working_bits);
  Real S;
  for (const auto& x : r) S = S + x;
  const Real one(1);
  Real S2 = S * S;
  Real A = S2 * (S * (r[0] + r[1]) - S2 + one);
  Real B = -(S * (S2 - one) * (r[0] - r[1]));
  Real C = (S2 - one) * r[0] * r[1];
  Real root_disc = sqrt(B * B - Real(4) * A * C);
  Real two_a = Real(2) * A;
  return {S, A, B, C, {(-B + root_disc) / two_a, (-B - root_disc) / two_a}};
}

std::array<RankOneFactorization, 2> pair_walk(const ContractedInstance& c, const NumericPolicy& policy) {
  if (c.s() < 2 || c.isolated() != 0)
    throw Error(ErrorCode::InvalidArgument, "the walk needs two or more blocks and no free vertices");
  auto b = c.block_sums();
  WalkParameters w = walk_parameters(b, policy);
  auto r = sqrt_all(b, policy.working_bits);
  std::array<RankOneFactorization, 2> out;
  for (std::size_t k = 0; k < 2; ++k) {
    std::vector<Real> U;
    for (const auto& x : r) U.push_back(x / w.S);
    U[0] = U[0] + w.roots[k];
    U[1] = U[1] - w.roots[k];
    std::vector<Real> V;
    for (std::size_t i = 0; i < b.size(); ++i) V.push_back(Real(b[i]) / U[i]);
    out[k] = expand(c, U, V, {}, {});
  }
  return out;
}

PairWalk complete_pair_walk(const Rational& a1, const Rational& a2, std::span<const Rational> rest,
                            const NumericPolicy& policy) {
  std::vector<Rational> a{a1, a2};
  a.insert(a.end(), rest.begin(), rest.end());
  ContractedInstance c = diagonal_instance(a);
  WalkParameters params = walk_parameters(a, policy);
  return {std::move(params), pair_walk(c, policy)};
}

RankOneFactorization complete_isolated(const Rational& b1, Side which) {
  if (sgn(b1) <= 0 || b1 > 1) throw Error(ErrorCode::InvalidArgument, "observed mass must lie in (0, 1]");
  ContractedInstance c;
  c.m = which == Side::Row ? 2 : 1;
  c.n = which == Side::Col ? 2 : 1;
  c.blocks.push_back({b1, {0}, {0}, {{Rational(1)}, {Rational(1)}}});
  (which == Side::Row ? c.free_rows : c.free_cols).push_back(1);
  return construct_witness(c);
}

BranchDescription describe_branch(const ContractedInstance& c, const NumericPolicy& policy) {
  BranchDescription d;
  d.support = c.zero;
  d.instance = c;
  const std::size_t s = c.s();
  const std::size_t iso = c.isolated();
  const bool has_rows = s > 0 || !c.free_rows.empty();
  const bool has_cols = s > 0 || !c.free_cols.empty();
  if (!has_rows || !has_cols) return d;
  d.root_sum = s == 0 ? Comparison::Less : compare_root_sum(c.block_sums(), 2, Rational(1), policy).result;
  if (d.root_sum == Comparison::Greater) return d;
  if (s == 1 && iso == 0 && c.blocks[0].b != 1) return d;
  if (s >= 1 && d.root_sum == Comparison::Equal) {
    d.kind = CompletionKind::Unique;
    d.completions.push_back(complete_unique_boundary(c, policy));
    return d;
  }
  const long dof = c.degrees_of_freedom();
  if (dof <= 0) {
    if (s == 2) {
      d.kind = CompletionKind::Pair;
      auto both = pair_walk(c, policy);
      d.completions.assign(both.begin(), both.end());
    } else {
      d.kind = CompletionKind::Unique;
      d.completions.push_back(construct_witness(c, policy));
    }
    return d;
  }
  d.kind = CompletionKind::Family;
  d.dimension = static_cast<std::size_t>(dof);
  d.completions.push_back(construct_witness(c, policy));
  return d;
}

namespace {

bool same_point(const RankOneFactorization& a, const RankOneFactorization& b) {
  auto close = [](const std::vector<Real>& x, const std::vector<Real>& y) {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (!x[i].enclosure().overlaps(y[i].enclosure())) return false;
    return true;
  };
  return close(a.u, b.u) && close(a.v, b.v);
}

}  // namespace

CompletionSetDescription classify_completions(const PartialMatrix& m, const NumericPolicy& policy,
                                              std::size_t cover_cap) {
  CompletionSetDescription out;
  Certificate cert = decide(m, policy);
  if (!cert.completable()) return out;

  if (!m.has_zero()) {
    out.branches.push_back(describe_branch(contract_branch(m, {}), policy));
    out.branches.back().minimal = true;
  } else {
    SupportEnumeration e = enumerate_zero_supports(m, cover_cap, policy);
    out.cap_exceeded = e.cap_exceeded;
    for (std::size_t k = 0; k < e.supports.size(); ++k) {
      out.branches.push_back(describe_branch(contract_branch(m, e.supports[k]), policy));
      out.branches.back().minimal = e.minimal[k];
    }
  }
  if (out.branches.empty()) {
    // Enumeration was capped: report the decision's witness on its own.
    out.kind = CompletionKind::Unique;
    out.completions.push_back(*cert.witness());
    return out;
  }

  for (const auto& b : out.branches) {
    if (b.kind != CompletionKind::Family) continue;
    out.kind = CompletionKind::Family;
    out.dimension = std::max(out.dimension, b.dimension);
    out.completions.push_back(b.completions.front());
  }
  if (out.kind == CompletionKind::Family) return out;

  for (const auto& b : out.branches)
    for (const auto& f : b.completions)
      if (std::none_of(out.completions.begin(), out.completions.end(),
                       [&](const RankOneFactorization& g) { return same_point(f, g); }))
        out.completions.push_back(f);
  switch (out.completions.size()) {
    case 0: out.kind = CompletionKind::Empty; break;
    case 1: out.kind = CompletionKind::Unique; break;
    case 2: out.kind = CompletionKind::Pair; break;
    default: out.kind = CompletionKind::Finite; break;
  }
  return out;
}

namespace {

Rational exact(double x) { return from_double_exact(x); }

Rational f_exact(const std::vector<Rational>& w, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) s += b[i] / w[i];
  return s;
}

std::vector<Rational> along(const std::vector<Rational>& w0, const std::vector<Rational>& d, const Rational& tau) {
  std::vector<Rational> w(w0.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = w0[i] + tau * d[i];
  return w;
}

std::vector<Rational> dirichlet(std::size_t count, RandomStream& rng) {
  std::vector<Rational> e;
  Rational total = 0;
  for (std::size_t k = 0; k < count; ++k) {
    e.push_back(exact(rng.exponential()) + Rational(1, 1 << 20));
    total += e.back();
  }
  for (auto& x : e) x /= total;
  return e;
}

std::vector<Real> to_reals(const std::vector<Rational>& q, const Rational& scale = 1) {
  std::vector<Real> out;
  for (const auto& x : q) out.emplace_back(Rational(x * scale));
  return out;
}

// Block level point u with f(u) <= 1 on a random ray from the minimizer.
// With exact_level set, the point is pushed to f(u) = 1 up to 2^-80.
std::vector<Rational> ray_point(const std::vector<Rational>& b, RandomStream& rng, bool exact_level,
                                const NumericPolicy& policy) {
  const std::size_t s = b.size();
  if (s == 1) return {Rational(1)};
  std::vector<Rational> w0;
  {
    auto r = sqrt_all(b, policy.working_bits);
    Real S;
    for (const auto& x : r) S = S + x;
    Rational total = 0;
    for (const auto& x : r) {
      w0.push_back((x / S).enclosure().mid_rational());
      total += w0.back();
    }
    for (auto& x : w0) x /= total;
  }
  std::vector<Rational> d;
  Rational mean = 0;
  for (std::size_t i = 0; i < s; ++i) {
    d.push_back(exact(rng.normal()));
    mean += d.back();
  }
  mean /= static_cast<long>(s);
  for (auto& x : d) x -= mean;
  Rational tau_max = -1;
  for (std::size_t i = 0; i < s; ++i) {
    if (sgn(d[i]) >= 0) continue;
    Rational t = -w0[i] / d[i];
    if (tau_max < 0 || t < tau_max) tau_max = t;
  }
  if (tau_max < 0 || f_exact(w0, b) >= 1) return w0;

  Rational lo = 0;
  Rational hi = tau_max / 2;
  while (f_exact(along(w0, d, hi), b) < 1) {
    lo = hi;
    hi = (hi + tau_max) / 2;
  }
  const Rational tol(1, mpz_class(1) << 80);
  for (int it = 0; it < 400; ++it) {
    Rational mid = (lo + hi) / 2;
    Rational fm = f_exact(along(w0, d, mid), b);
    if (fm < 1)
      lo = mid;
    else
      hi = mid;
    if (!exact_level && it >= 60) break;
    if (exact_level && abs(f_exact(along(w0, d, hi), b) - 1) <= tol) break;
  }
  if (exact_level) return along(w0, d, hi);
  return along(w0, d, lo * exact(rng.uniform()));
}

RankOneFactorization sample_one(const ContractedInstance& c, std::uint64_t index, std::uint64_t seed,
                                const NumericPolicy& policy) {
  if (index == 0) return construct_witness(c, policy);
  RandomStream rng(seed, index);
  auto b = c.block_sums();
  const std::size_t fr = c.free_rows.size();
  const std::size_t fc = c.free_cols.size();
  if (fr + fc == 0) {
    auto U = ray_point(b, rng, true, policy);
    std::vector<Real> V;
    for (std::size_t i = 0; i < b.size(); ++i) V.emplace_back(Rational(b[i] / U[i]));
    return expand(c, to_reals(U), V, {}, {});
  }
  if (b.empty()) return expand(c, {}, {}, to_reals(dirichlet(fr, rng)), to_reals(dirichlet(fc, rng)));

  auto w = ray_point(b, rng, false, policy);
  const Rational fw = f_exact(w, b);
  Rational lambda = fw;
  if (fr > 0 && fc > 0) lambda = fw + exact(rng.uniform()) * (1 - fw);
  std::vector<Rational> U;
  std::vector<Rational> V;
  if (fr > 0) {
    for (std::size_t i = 0; i < b.size(); ++i) {
      U.push_back(lambda * w[i]);
      V.push_back(b[i] / U.back());
    }
  } else {
    for (std::size_t i = 0; i < b.size(); ++i) {
      V.push_back(fw * w[i]);
      U.push_back(b[i] / V.back());
    }
  }
  Rational row_rest = 1;
  Rational col_rest = 1;
  for (const auto& x : U) row_rest -= x;
  for (const auto& x : V) col_rest -= x;
  return expand(c, to_reals(U), to_reals(V), to_reals(dirichlet(fr, rng), row_rest),
                to_reals(dirichlet(fc, rng), col_rest));
}

}  // namespace

std::vector<RankOneFactorization> sample_branch(const ContractedInstance& c, std::size_t k, std::uint64_t seed,
                                                const NumericPolicy& policy) {
  std::vector<RankOneFactorization> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(sample_one(c, i, seed, policy));
  return out;
}

std::vector<RankOneFactorization> sample_family(const PartialMatrix& m, std::size_t k, std::uint64_t seed,
                                                const NumericPolicy& policy) {
  CompletionSetDescription d = classify_completions(m, policy);
  if (d.kind != CompletionKind::Family) throw Error(ErrorCode::NotAFamily, std::string("completion set is ") +
                                                                               to_string(d.kind));
  std::vector<const BranchDescription*> families;
  for (const auto& b : d.branches)
    if (b.kind == CompletionKind::Family) families.push_back(&b);
  std::vector<RankOneFactorization> out;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t branch = i % families.size();
    out.push_back(sample_one(families[branch]->instance, i / families.size(), splitmix64(seed + branch), policy));
  }
  return out;
}

}  // namespace rank1
