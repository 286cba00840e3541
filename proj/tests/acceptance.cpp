// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <iomanip>
#include <sstream>

#include "oracles.hpp"
#include "rank1/complete.hpp"
#include "rank1/decide.hpp"
#include "rank1/error.hpp"
#include "rank1/optimize.hpp"
#include "rank1/semialg.hpp"
#include "rank1/tensor.hpp"

using namespace rank1;

namespace {

// Collects failure reasons for one criterion.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 5) failures.push_back(what);
  }
};

PartialMatrix diag(const std::vector<Rational>& a) {
  std::vector<Entry> es;
  for (std::size_t i = 0; i < a.size(); ++i) es.push_back({i, i, a[i]});
  return make_partial_matrix(a.size(), a.size(), es);
}

RankOneFactorization from_matrix(const std::vector<std::vector<Rational>>& m) {
  RankOneFactorization f;
  for (auto& row : m) f.u.emplace_back(std::accumulate(row.begin(), row.end(), Rational(0)));
  for (std::size_t j = 0; j < m[0].size(); ++j) {
    Rational s = 0;
    for (auto& row : m) s += row[j];
    f.v.emplace_back(s);
  }
  return f;
}

bool matches(const RankOneFactorization& f, const double (&m)[3][3], double tol) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (std::abs(f.entry(i, j).to_double() - m[i][j]) > tol) return false;
  return true;
}

void criterion1(Check& c) {
  std::vector<Rational> a{Rational(4, 25), Rational(9, 100), Rational(1, 25), Rational(1, 100)};
  auto d = classify_completions(diag(a));
  c.expect(d.kind == CompletionKind::Unique && d.completions.size() == 1, "intro example is not Unique");
  if (d.completions.size() == 1) {
    const Rational printed[4][4] = {
        {Rational(4, 25), Rational(3, 25), Rational(2, 25), Rational(1, 25)},
        {Rational(3, 25), Rational(9, 100), Rational(3, 50), Rational(3, 100)},
        {Rational(2, 25), Rational(3, 50), Rational(1, 25), Rational(1, 50)},
        {Rational(1, 25), Rational(3, 100), Rational(1, 50), Rational(1, 100)}};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        Real e = d.completions[0].entry(i, j);
        c.expect(e.is_exact() && *e.exact() == printed[i][j], "completion entry differs from the printed matrix");
      }
  }
  for (std::size_t k = 0; k < 4; ++k) {
    auto up = a, down = a;
    up[k] += Rational(1, 1000);
    down[k] -= Rational(1, 1000);
    auto cu = decide(diag(up));
    c.expect(!cu.completable() && std::holds_alternative<NormExcess>(cu.evidence()), "raised entry not NormExcess");
    auto dd = classify_completions(diag(down));
    c.expect(dd.kind == CompletionKind::Family && dd.dimension == 2, "lowered entry not a 2-dimensional family");
  }
}

void criterion2(Check& c) {
  std::vector<Rational> rest{Rational(1, 36)};
  auto w = complete_pair_walk(Rational(1, 4), Rational(1, 25), rest);
  auto z = w.parameters.integer_coefficients();
  c.expect(z && (*z)[0] == 9295 && (*z)[1] == 936 && (*z)[2] == -360, "scaled quadratic differs");
  const unsigned bits = 256;
  AlgebraicInterval s = AlgebraicInterval(Rational(6), bits) * sqrt(AlgebraicInterval(Rational(586), bits));
  AlgebraicInterval plus = (s - AlgebraicInterval(Rational(36), bits)) / AlgebraicInterval(Rational(715), bits);
  AlgebraicInterval minus = (-s - AlgebraicInterval(Rational(36), bits)) / AlgebraicInterval(Rational(715), bits);
  c.expect(w.parameters.roots[0].enclosure().overlaps(plus), "larger root misses (6 sqrt 586 - 36)/715");
  c.expect(w.parameters.roots[1].enclosure().overlaps(minus), "smaller root misses (-6 sqrt 586 - 36)/715");
  c.expect(w.parameters.roots[0].enclosure().width() < 1e-30, "root enclosure is wide");
  const double printed[3][3] = {{0.250, 0.374, 0.105}, {0.027, 0.040, 0.011}, {0.066, 0.098, 0.028}};
  c.expect(matches(w.completions[0], printed, 1e-3), "completion does not match the printed matrix");
  c.expect(verify_completion(diag({Rational(1, 4), Rational(1, 25), Rational(1, 36)}), w.completions[0], 1e-12),
           "walk completion does not verify");
}

void criterion3(Check& c) {
  OptimizationProblem p(diag({Rational(1, 4), Rational(1, 25), Rational(1, 36)}));
  auto r = optimize_distance(p);
  c.expect(std::abs(r.objective - 0.276) <= 0.005, "objective " + std::to_string(r.objective));
  const double printed[3][3] = {{0.250, 0.049, 0.215}, {0.204, 0.040, 0.176}, {0.032, 0.006, 0.028}};
  c.expect(matches(r.best, printed, 1e-3) || matches(r.best.transposed(), printed, 1e-3),
           "optimum differs from the printed matrix");
  c.expect(verify_completion(p.M, r.best, 1e-8), "optimum does not verify");
  c.expect(r.stationary_count() >= 2, "fewer than 2 stationary points: " + std::to_string(r.stationary_count()));
}

void criterion4(Check& c) {
  auto m = diag({Rational(4, 25), Rational(4, 25), Rational(0)});
  auto e = enumerate_zero_supports(m);
  std::vector<ZeroSupport> minimal;
  for (std::size_t k = 0; k < e.supports.size(); ++k)
    if (e.minimal[k]) minimal.push_back(e.supports[k]);
  c.expect(minimal.size() == 2, "expected two minimal supports");
  c.expect(std::find(minimal.begin(), minimal.end(), ZeroSupport{{2}, {}}) != minimal.end(), "row 3 missing");
  c.expect(std::find(minimal.begin(), minimal.end(), ZeroSupport{{}, {2}}) != minimal.end(), "column 3 missing");

  const Rational z = 0, s = Rational(4, 25);
  std::vector<std::vector<std::vector<Rational>>> printed = {
      {{s, Rational(16, 25), z}, {Rational(1, 25), s, z}, {z, z, z}},
      {{s, s, z}, {s, s, z}, {Rational(9, 50), Rational(9, 50), z}},
      {{s, Rational(8, 75), z}, {Rational(6, 25), s, z}, {Rational(1, 5), Rational(2, 15), z}},
      {{s, Rational(1, 25), z}, {Rational(16, 25), s, z}, {z, z, z}}};
  auto description = classify_completions(m);
  for (std::size_t k = 0; k < printed.size(); ++k) {
    const auto& mat = printed[k];
    std::string name(1, static_cast<char>('A' + k));
    c.expect(oracle::is_rank_at_most_one(mat), name + " is not rank one");
    auto f = from_matrix(mat);
    c.expect(verify_completion(m, f, 1e-12), name + " fails verify_completion");
    // Printed along the column-3 curve: column 3 vanishes; the transpose
    // lies on the row-3 curve.
    bool col3 = mat[0][2] == 0 && mat[1][2] == 0 && mat[2][2] == 0;
    c.expect(col3, name + " is not on the column 3 branch");
    c.expect(verify_completion(m, f.transposed(), 1e-12), name + "^T fails verify_completion");
  }
  // Matrix B is the base point of the column branch.
  bool found_b = false;
  for (auto& br : description.branches)
    if (br.support == ZeroSupport{{}, {2}} && !br.completions.empty()) {
      const auto& f = br.completions[0];
      bool same = true;
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
          Real x = f.entry(i, j);
          same = same && x.is_exact() && *x.exact() == printed[1][i][j];
        }
      found_b = found_b || same;
    }
  c.expect(found_b, "column branch base point is not matrix B");
}

void criterion5(Check& c) {
  auto pattern = [](Rational m11, Rational m12, Rational m22, Rational m23) {
    return make_partial_matrix(2, 3, {{0, 0, m11}, {0, 1, m12}, {1, 1, m22}, {1, 2, m23}});
  };
  // (no rows, column 2): sqrt(m11) + sqrt(m23) <= 1.
  c.expect(decide(pattern(Rational(1, 4), 0, 0, Rational(1, 4))).completable(), "C at equality");
  c.expect(decide(pattern(Rational(1, 9), 0, 0, Rational(1, 4))).completable(), "C strictly inside");
  c.expect(!decide(pattern(Rational(1, 4), 0, 0, Rational(9, 25))).completable(), "C violated but completable");
  // (row 1, no columns): m22 + m23 <= 1.
  c.expect(decide(pattern(0, 0, Rational(1, 3), Rational(1, 3))).completable(), "F inside");
  c.expect(decide(pattern(0, 0, Rational(1, 2), Rational(1, 2))).completable(), "F at equality");
  c.expect(!decide(pattern(0, 0, Rational(2, 3), Rational(1, 2))).completable(), "F violated but completable");
  // (row 1, columns 1 and 2): m23 = 1 exactly, checked on that branch.
  ZeroSupport g{{0}, {0, 1}};
  auto at_one = pattern(0, 0, 0, Rational(1));
  auto below = pattern(0, 0, 0, Rational(1, 2));
  c.expect(decide(at_one).completable(), "G with m23 = 1");
  c.expect(describe_branch(contract_branch(at_one, g)).kind != CompletionKind::Empty, "G branch empty at m23 = 1");
  c.expect(describe_branch(contract_branch(below, g)).kind == CompletionKind::Empty, "G branch nonempty at m23 = 1/2");
  c.expect(!decide(pattern(0, 0, 0, Rational(3, 2))).completable(), "m23 = 3/2 completable");
}

void criterion6(Check& c) {
  std::mt19937_64 g(2024);
  for (int k = 0; k < 10000; ++k) {
    std::size_t m = 1 + g() % 6, n = 1 + g() % 6;
    auto u = oracle::random_simplex(g, m, 0.15), v = oracle::random_simplex(g, n, 0.15);
    double density = std::uniform_real_distribution<double>(0.1, 0.9)(g);
    std::bernoulli_distribution keep(density);
    std::vector<Entry> es;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (keep(g)) es.push_back({i, j, u[i] * v[j]});
    auto pm = make_partial_matrix(m, n, es);
    auto cert = decide(pm);
    if (!cert.completable()) {
      c.expect(false, "instance " + std::to_string(k) + " judged " + cert.evidence_kind());
      continue;
    }
    c.expect(verify_completion(pm, *cert.witness(), 1e-9), "witness " + std::to_string(k) + " fails to verify");
  }
}

void criterion7(Check& c) {
  std::mt19937_64 g(77);
  std::uniform_real_distribution<double> root(0.02, 0.9);
  int outside = 0;
  while (outside < 1000) {
    Rational a = oracle::frac(static_cast<long>(std::pow(root(g), 2) * 100000), 100000);
    Rational b = oracle::frac(static_cast<long>(std::pow(root(g), 2) * 100000), 100000);
    if (a == 0 || b == 0) continue;
    double ad = to_double(a), bd = to_double(b);
    double gap = std::sqrt(ad) + std::sqrt(bd) - 1;
    if (std::abs(gap) < 1e-3) continue;
    ++outside;
    bool grid = oracle::grid_completable_2x2(ad, bd);
    c.expect(decide(diag({a, b})).completable() == grid, "grid disagrees at " + to_string(a) + ", " + to_string(b));
  }
  // Inside the band: exact trichotomy on perfect squares.
  for (int k = 0; k < 300; ++k) {
    long q = 1000 + static_cast<long>(g() % 9000);
    long p = 1 + static_cast<long>(g() % (q - 1));
    long offset = static_cast<long>(g() % 3) - 1;  // -1, 0, +1 in units of 1/q^2
    Rational r1 = oracle::frac(p, q), r2 = oracle::frac(q - p, q) + oracle::frac(offset, q * q);
    if (r2 <= 0) continue;
    std::vector<Rational> sq{r1 * r1, r2 * r2};
    Comparison expect = offset < 0 ? Comparison::Less : offset == 0 ? Comparison::Equal : Comparison::Greater;
    c.expect(compare_sqrt_sum(sq, 1) == expect, "trichotomy wrong in band");
    c.expect(decide(diag(sq)).completable() == (expect != Comparison::Greater), "band decision wrong");
  }
}

unsigned apply_symmetry(unsigned idx, const std::array<int, 3>& perm, unsigned flips) {
  unsigned bits[3] = {idx >> 2 & 1u, idx >> 1 & 1u, idx & 1u};
  unsigned out[3];
  for (int k = 0; k < 3; ++k) out[perm[k]] = bits[k] ^ (flips >> k & 1u);
  return out[0] << 2 | out[1] << 1 | out[2];
}

void criterion8(Check& c) {
  std::mt19937_64 g(88);
  for (int k = 0; k < 1000; ++k) {
    std::size_t n = 1 + g() % 5;
    std::vector<Rational> a;
    for (std::size_t i = 0; i < n; ++i) a.push_back(oracle::frac(static_cast<long>(g() % 30), 40 + static_cast<long>(g() % 100)));
    if (std::all_of(a.begin(), a.end(), [](const Rational& x) { return x == 0; })) a[0] = Rational(1, 5);
    c.expect(decide_diagonal_tensor({2, a}).verdict() == decide(diag(a)).verdict(), "d = 2 disagrees with matrices");
  }
  const std::vector<std::vector<unsigned>> reps = {{0}, {0, 1}, {0, 3}, {0, 7}, {0, 1, 2}, {0, 1, 6}, {0, 5, 3}};
  const std::vector<Case222> kinds = {Case222::Single, Case222::PairEdge, Case222::PairFace, Case222::PairOpposite,
                                      Case222::TripleCorner, Case222::TripleSkew, Case222::TripleScattered};
  for (int k = 0; k < 10000; ++k) {
    std::array<std::vector<Rational>, 3> f;
    for (auto& u : f) u = oracle::random_simplex(g, 2, 0.1);
    auto value = [&](unsigned idx) -> Rational { return f[0][idx >> 2] * f[1][idx >> 1 & 1] * f[2][idx & 1]; };
    std::array<int, 3> perm{0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), g);
    unsigned flips = static_cast<unsigned>(g() % 8);
    for (std::size_t r = 0; r < reps.size(); ++r) {
      Pattern222 p;
      for (unsigned idx : reps[r]) {
        unsigned moved = apply_symmetry(idx, perm, flips);
        p.entries[moved] = value(moved);
      }
      c.expect(classify_222(p) == kinds[r], "orbit misclassified");
      c.expect(decide_222(p).completable(), std::string("rank-one projection rejected in case ") + to_string(kinds[r]));
    }
  }
  std::array<Rational, 7> v{Rational(7, 100), Rational(9, 100), Rational(9, 100), Rational(3, 25),
                            Rational(3, 20), Rational(1, 25), Rational(4, 25)};
  c.expect(complete_rank2_3x3(v, Rank2Pattern::A).completable, "rank-2 pattern A not completable");
  c.expect(!complete_rank2_3x3(v, Rank2Pattern::B).completable, "rank-2 pattern B completable");
}

void criterion9(Check& c) {
  using P = MultivariatePolynomial;
  P x1 = P::variable(2, 0), x2 = P::variable(2, 1), one = P::constant(2, Rational(1));
  c.expect(boundary_polynomial(1, 2) == one - x1 - x2, "p_{1,2} differs");
  c.expect(boundary_polynomial(2, 2) == (x1 + x2 - one).pow(2) - x1 * x2 * Rational(4), "p_{2,2} differs");
  std::mt19937_64 g(99);
  for (auto [d, n] : {std::pair{2u, 3u}, {3u, 2u}, {2u, 4u}}) {
    std::string tag = "(" + std::to_string(d) + "," + std::to_string(n) + ")";
    auto p = boundary_polynomial(d, n);
    unsigned degree = 1;
    for (unsigned i = 1; i < n; ++i) degree *= d;
    c.expect(p.total_degree() == degree, tag + " degree");
    c.expect(p.constant_term() == 1, tag + " constant term");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      c.expect(p.permuted(perm) == p, tag + " not symmetric");
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (int k = 0; k < 100; ++k) {
      auto r = oracle::random_simplex(g, n, 0.15);
      std::vector<Rational> x;
      for (auto& ri : r) {
        Rational pw = 1;
        for (unsigned j = 0; j < d; ++j) pw *= ri;
        x.push_back(pw);
      }
      c.expect(evaluate(p, x) == 0, tag + " does not vanish on a boundary point");
    }
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;  // 0 means no runtime requirement
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "intro example unique, perturbations flip", 1.0, criterion1},
      {2, "quadratic walk coefficients, roots and matrix", 0.0, criterion2},
      {3, "distance optimization", 30.0, criterion3},
      {4, "zeros example branches and matrices", 0.0, criterion4},
      {5, "boundary table spot checks", 0.0, criterion5},
      {6, "round-trip property suite", 60.0, criterion6},
      {7, "grid oracle on 2x2 diagonals", 0.0, criterion7},
      {8, "tensor checks", 0.0, criterion8},
      {9, "boundary polynomials", 120.0, criterion9},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check check;
    auto start = std::chrono::steady_clock::now();
    try {
      cr.run(check);
    } catch (const std::exception& e) {
      check.failures.push_back(std::string("exception: ") + e.what());
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (cr.limit_seconds > 0 && seconds > cr.limit_seconds)
      check.failures.push_back("took " + std::to_string(seconds) + " s, limit " + std::to_string(cr.limit_seconds));
    bool ok = check.failures.empty();
    failed += !ok;
    std::ostringstream line;
    line << (ok ? "PASS" : "FAIL") << " criterion " << cr.id << ": " << cr.name << " (" << std::fixed
         << std::setprecision(2) << seconds << " s)";
    for (const auto& f : check.failures) line << "\n    " << f;
    std::cout << line.str() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
