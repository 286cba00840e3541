#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "rank1/branch.hpp"
#include "rank1/decide.hpp"
#include "rank1/model.hpp"

namespace rank1 {

/// sum_i a_i / u_i; terms with a_i = 0 are skipped. Throws
/// DivisionByZeroMass when u_i = 0 < a_i.
Real f_sum(std::span<const Real> u, std::span<const Rational> a);

enum class CompletionKind { Empty, Unique, Pair, Finite, Family };
const char* to_string(CompletionKind k);

struct BranchDescription {
  ZeroSupport support;
  bool minimal = false;
  ContractedInstance instance;
  CompletionKind kind = CompletionKind::Empty;
  std::size_t dimension = 0;
  Comparison root_sum = Comparison::Less;  // sum of sqrt(b) against one
  std::vector<RankOneFactorization> completions;  // all of them, or the base point of a family
};

struct CompletionSetDescription {
  CompletionKind kind = CompletionKind::Empty;
  std::size_t dimension = 0;
  std::vector<RankOneFactorization> completions;
  std::vector<BranchDescription> branches;
  bool cap_exceeded = false;

  const RankOneFactorization* base_point() const { return completions.empty() ? nullptr : &completions.front(); }
};

CompletionSetDescription classify_completions(const PartialMatrix& m, const NumericPolicy& policy = {},
                                              std::size_t cover_cap = kDefaultCoverCap);

/// Kind, dimension and completions of a single branch.
BranchDescription describe_branch(const ContractedInstance& c, const NumericPolicy& policy = {});

/// Diagonal layout: u = v = (sqrt b_1, ..., sqrt b_n). Throws NotOnBoundary
/// unless the roots sum to one.
RankOneFactorization complete_unique_boundary(std::span<const Rational> b, const NumericPolicy& policy = {});
/// Same on a contracted branch, expanded through its block factors.
RankOneFactorization complete_unique_boundary(const ContractedInstance& c, const NumericPolicy& policy = {});

struct WalkParameters {
  Real S;
  Real A;  // t^2 coefficient
  Real B;
  Real C;
  std::array<Real, 2> roots;  // larger root first

  /// Coprime integer multiple of (A, B, C) when all three are rational.
  std::optional<std::array<mpz_class, 3>> integer_coefficients() const;
};

/// Roots of the walk quadratic for moving mass between the first two
/// coordinates of u = sqrt(a) / S while the others stay fixed.
WalkParameters walk_parameters(std::span<const Rational> a, const NumericPolicy& policy = {});

struct PairWalk {
  WalkParameters parameters;
  std::array<RankOneFactorization, 2> completions;
};

/// Diagonal layout with entries (a1, a2, rest...). Throws NotStrictlyInterior
/// when the root sum is not below one.
PairWalk complete_pair_walk(const Rational& a1, const Rational& a2, std::span<const Rational> rest,
                            const NumericPolicy& policy = {});
/// The two walk completions of a branch without free vertices.
std::array<RankOneFactorization, 2> pair_walk(const ContractedInstance& c, const NumericPolicy& policy = {});

enum class Side { Row, Col };

/// 1x2 (Col) or 2x1 (Row) layout with b1 observed and one free vertex.
RankOneFactorization complete_isolated(const Rational& b1, Side which);

/// k completions of a family. Sample i comes from family branch
/// i mod (number of family branches); within a branch the first sample is
/// its base point and the rest are pseudo-random, reproducible from seed.
/// Throws NotAFamily.
std::vector<RankOneFactorization> sample_family(const PartialMatrix& m, std::size_t k, std::uint64_t seed,
                                                const NumericPolicy& policy = {});
std::vector<RankOneFactorization> sample_branch(const ContractedInstance& c, std::size_t k, std::uint64_t seed,
                                                const NumericPolicy& policy = {});

}  // namespace rank1
