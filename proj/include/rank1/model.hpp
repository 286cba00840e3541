#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <variant>
#include <vector>

#include "rank1/interval.hpp"
#include "rank1/rational.hpp"
#include "rank1/real.hpp"

namespace rank1 {

// Precision schedule for deciding sums of roots. Intervals start at
// start_bits and double up to cap_bits; arithmetic on constructed
// completions runs at working_bits.
struct NumericPolicy {
  unsigned start_bits = 64;
  unsigned cap_bits = 4096;
  unsigned working_bits = AlgebraicInterval::kDefaultBits;
};

struct Position {
  std::size_t row = 0;
  std::size_t col = 0;

  auto operator<=>(const Position&) const = default;
};

struct Entry {
  std::size_t row = 0;
  std::size_t col = 0;
  Rational value;
};

// Alternating closed walk (r1,c1),(r1,c2),(r2,c2),...,(rk,c1) in the pattern
// graph. Even-indexed edges form one side of the binomial relation, odd
// indexed edges the other.
struct Cycle {
  std::vector<Position> edges;
};

// m x n matrix with values specified on a pattern S. Values are exact and
// nonnegative.
class PartialMatrix {
 public:
  /// Throws OutOfRange, DuplicatePosition or NegativeValue.
  PartialMatrix(std::size_t rows, std::size_t cols, const std::vector<Entry>& entries);
  PartialMatrix(std::size_t rows, std::size_t cols, std::map<Position, Rational> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return entries_.size(); }
  const std::map<Position, Rational>& entries() const { return entries_; }

  bool contains(Position p) const { return entries_.count(p) != 0; }
  /// nullptr when p is unspecified.
  const Rational* find(Position p) const;
  bool has_zero() const;

 private:
  void validate() const;

  std::size_t rows_;
  std::size_t cols_;
  std::map<Position, Rational> entries_;
};

PartialMatrix make_partial_matrix(std::size_t rows, std::size_t cols, const std::vector<Entry>& entries);

// u^T v with u, v in the simplex. Rank one holds by construction.
struct RankOneFactorization {
  std::vector<Real> u;
  std::vector<Real> v;

  Real entry(std::size_t i, std::size_t j) const { return u.at(i) * v.at(j); }
  /// Transposed completion (v, u).
  RankOneFactorization transposed() const { return {v, u}; }
};

/// Certified check that F agrees with M on its pattern and lies in the
/// simplex, all up to eps. Throws DimensionMismatch.
bool verify_completion(const PartialMatrix& m, const RankOneFactorization& f, double eps);

enum class Comparison { Less, Equal, Greater };
const char* to_string(Comparison c);

struct RootSumComparison {
  Comparison result;
  AlgebraicInterval sum;  // enclosure of sum_i values_i^(1/d)
};

/// Exact trichotomy of sum_i values_i^(1/d) against threshold.
RootSumComparison compare_root_sum(std::span<const Rational> values, unsigned d, const Rational& threshold,
                                   const NumericPolicy& policy = {});

inline Comparison compare_sqrt_sum(std::span<const Rational> values, const Rational& threshold,
                                   const NumericPolicy& policy = {}) {
  return compare_root_sum(values, 2, threshold, policy).result;
}

enum class Verdict { Completable, NotCompletable };
const char* to_string(Verdict v);

struct Witness {
  RankOneFactorization factorization;
  std::vector<std::vector<Real>> tensor_factors;  // one vector per mode, tensors only
};
struct CycleViolation {
  Cycle cycle;
  Rational lhs;
  Rational rhs;
};
struct ThreeLineViolation {
  std::array<Position, 3> positions;  // the zero, a nonzero in its row, a nonzero in its column
};
struct NormExcess {
  AlgebraicInterval sqrt_sum;
};
struct SumNotOne {
  Rational total;
};
// The polynomial (coefficients from the constant term up) has no root in
// (lower, upper].
struct PolynomialNoRoot {
  std::vector<Rational> coefficients;
  Rational lower;
  Rational upper;
};

using Evidence = std::variant<Witness, CycleViolation, ThreeLineViolation, NormExcess, SumNotOne, PolynomialNoRoot>;

// The verdict is derived from the evidence kind, so the two cannot disagree.
class Certificate {
 public:
  /// Throws InternalInconsistency if the evidence does not prove anything
  /// (equal cycle sides, a norm interval not above one, a total of one).
  explicit Certificate(Evidence evidence);

  Verdict verdict() const;
  bool completable() const { return verdict() == Verdict::Completable; }
  const Evidence& evidence() const { return evidence_; }
  const RankOneFactorization* witness() const;
  const char* evidence_kind() const;

 private:
  Evidence evidence_;
};

}  // namespace rank1
