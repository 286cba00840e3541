#include "rank1/model.hpp"

#include <algorithm>

#include "rank1/error.hpp"
#include "rank1/semialg.hpp"

namespace rank1 {

PartialMatrix::PartialMatrix(std::size_t rows, std::size_t cols, const std::vector<Entry>& entries)
    : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0) throw Error(ErrorCode::OutOfRange, "matrix dimensions must be positive");
  for (const auto& e : entries) {
    if (e.row >= rows || e.col >= cols)
      throw Error(ErrorCode::OutOfRange,
                  "position (" + std::to_string(e.row) + "," + std::to_string(e.col) + ") outside the matrix");
    if (!entries_.emplace(Position{e.row, e.col}, e.value).second)
      throw Error(ErrorCode::DuplicatePosition,
                  "position (" + std::to_string(e.row) + "," + std::to_string(e.col) + ") given twice");
  }
  validate();
}

PartialMatrix::PartialMatrix(std::size_t rows, std::size_t cols, std::map<Position, Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw Error(ErrorCode::OutOfRange, "matrix dimensions must be positive");
  for (const auto& [p, v] : entries_)
    if (p.row >= rows || p.col >= cols)
      throw Error(ErrorCode::OutOfRange,
                  "position (" + std::to_string(p.row) + "," + std::to_string(p.col) + ") outside the matrix");
  validate();
}

void PartialMatrix::validate() const {
  for (const auto& [p, v] : entries_)
    if (sgn(v) < 0)
      throw Error(ErrorCode::NegativeValue, "negative value " + to_string(v) + " at (" + std::to_string(p.row) +
                                                "," + std::to_string(p.col) + ")");
}

const Rational* PartialMatrix::find(Position p) const {
  auto it = entries_.find(p);
  return it == entries_.end() ? nullptr : &it->second;
}

bool PartialMatrix::has_zero() const {
  return std::any_of(entries_.begin(), entries_.end(), [](const auto& kv) { return sgn(kv.second) == 0; });
}

PartialMatrix make_partial_matrix(std::size_t rows, std::size_t cols, const std::vector<Entry>& entries) {
  return PartialMatrix(rows, cols, entries);
}

namespace {

bool within(const AlgebraicInterval& x, const Rational& target, const Rational& eps) {
  return x.lower_rational() >= target - eps && x.upper_rational() <= target + eps;
}

Real sum(const std::vector<Real>& xs) {
  Real s;
  for (const auto& x : xs) s = s + x;
  return s;
}

}  // namespace

bool verify_completion(const PartialMatrix& m, const RankOneFactorization& f, double eps) {
  if (f.u.size() != m.rows() || f.v.size() != m.cols())
    throw Error(ErrorCode::DimensionMismatch, "factorization has shape " + std::to_string(f.u.size()) + "x" +
                                                  std::to_string(f.v.size()) + ", matrix is " +
                                                  std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  const Rational e = from_double_exact(eps);
  for (const auto& [p, value] : m.entries())
    if (!within(f.entry(p.row, p.col).enclosure(), value, e)) return false;
  for (const auto* side : {&f.u, &f.v}) {
    for (const auto& x : *side)
      if (x.enclosure().lower_rational() < -e) return false;
    if (!within(sum(*side).enclosure(), Rational(1), e)) return false;
  }
  return true;
}

const char* to_string(Comparison c) {
  switch (c) {
    case Comparison::Less: return "Less";
    case Comparison::Equal: return "Equal";
    case Comparison::Greater: return "Greater";
  }
  return "?";
}

namespace {

AlgebraicInterval root_sum(std::span<const Rational> values, unsigned d, unsigned bits) {
  AlgebraicInterval s(Rational(0), bits);
  for (const auto& v : values) s = s + root(AlgebraicInterval(v, bits), d);
  return s;
}

Comparison from_sign(int s) { return s < 0 ? Comparison::Less : s > 0 ? Comparison::Greater : Comparison::Equal; }

}  // namespace

RootSumComparison compare_root_sum(std::span<const Rational> values, unsigned d, const Rational& threshold,
                                   const NumericPolicy& policy) {
  if (d == 0) throw Error(ErrorCode::InvalidArgument, "root order must be positive");
  std::vector<Rational> nonzero;
  for (const auto& v : values) {
    if (sgn(v) < 0) throw Error(ErrorCode::NegativeValue, "negative value " + to_string(v));
    if (sgn(v) != 0) nonzero.push_back(v);
  }
  const unsigned start = std::max(policy.start_bits, 53u);

  // Fully rational cases: a single term, d = 1, or all perfect powers.
  std::optional<Rational> exact_sum = Rational(0);
  for (const auto& v : nonzero) {
    auto r = exact_root(v, d);
    if (!r) {
      exact_sum.reset();
      break;
    }
    *exact_sum += *r;
  }
  if (exact_sum) return {from_sign(cmp(*exact_sum, threshold)), AlgebraicInterval(*exact_sum, start)};
  if (sgn(threshold) <= 0) return {Comparison::Greater, root_sum(nonzero, d, start)};
  if (nonzero.size() == 1) {
    Rational t_pow = 1;
    for (unsigned k = 0; k < d; ++k) t_pow *= threshold;
    return {from_sign(cmp(nonzero[0], t_pow)), root_sum(nonzero, d, start)};
  }

  // Normalize so the threshold becomes one: x_i = v_i / T^d.
  Rational t_pow = 1;
  for (unsigned k = 0; k < d; ++k) t_pow *= threshold;
  std::vector<Rational> x;
  for (const auto& v : nonzero) x.push_back(Rational(v / t_pow));
  const Rational one(1);
  Rational separation(8, d * d);  // lower bound for 1 - cos(2 pi / d)
  separation.canonicalize();

  std::optional<bool> on_boundary;
  for (unsigned bits = start;; bits *= 2) {
    AlgebraicInterval s = root_sum(x, d, bits);
    int c = s.compare(one);
    if (c != 0) return {from_sign(c), root_sum(nonzero, d, bits)};
    // Intervals alone settle every strict inequality eventually; the exact
    // vanishing test is reserved for ambiguity that survives up to the cap.
    if (!on_boundary && bits >= policy.cap_bits) on_boundary = sgn(boundary_value(d, x)) == 0;
    if (on_boundary && *on_boundary) {
      // Some choice of complex roots sums to one. Every choice other than
      // the all-positive one has real part at most S - (1 - cos(2pi/d)) min r.
      AlgebraicInterval rmin = root(AlgebraicInterval(*std::min_element(x.begin(), x.end()), bits), d);
      AlgebraicInterval others = s - AlgebraicInterval(separation, bits) * rmin;
      if (others.compare(one) < 0) return {Comparison::Equal, root_sum(nonzero, d, bits)};
    }
  }
}

const char* to_string(Verdict v) { return v == Verdict::Completable ? "Completable" : "NotCompletable"; }

Certificate::Certificate(Evidence evidence) : evidence_(std::move(evidence)) {
  if (const auto* c = std::get_if<CycleViolation>(&evidence_)) {
    if (c->lhs == c->rhs) throw Error(ErrorCode::InternalInconsistency, "cycle violation with equal sides");
    if (c->cycle.edges.size() < 4 || c->cycle.edges.size() % 2 != 0)
      throw Error(ErrorCode::InternalInconsistency, "cycle violation with a malformed cycle");
  } else if (const auto* n = std::get_if<NormExcess>(&evidence_)) {
    if (n->sqrt_sum.compare(Rational(1)) <= 0)
      throw Error(ErrorCode::InternalInconsistency, "norm excess interval not above one");
  } else if (const auto* s = std::get_if<SumNotOne>(&evidence_)) {
    if (s->total == 1) throw Error(ErrorCode::InternalInconsistency, "sum violation with total one");
  }
}

Verdict Certificate::verdict() const {
  return std::holds_alternative<Witness>(evidence_) ? Verdict::Completable : Verdict::NotCompletable;
}

const RankOneFactorization* Certificate::witness() const {
  const auto* w = std::get_if<Witness>(&evidence_);
  return w ? &w->factorization : nullptr;
}

const char* Certificate::evidence_kind() const {
  static constexpr const char* kNames[] = {"Witness", "CycleViolation", "ThreeLineViolation", "NormExcess",
                                           "SumNotOne", "PolynomialNoRoot"};
  return kNames[evidence_.index()];
}

}  // namespace rank1
