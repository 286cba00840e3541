#pragma once

#include <array>
#include <map>
#include <vector>

#include "rank1/model.hpp"

namespace rank1 {

using TensorFactors = std::vector<std::vector<Real>>;

// Order-d tensor of side n observed on its diagonal.
struct DiagonalTensorInstance {
  unsigned order = 2;
  std::vector<Rational> diag;

  std::size_t size() const { return diag.size(); }
};

/// Throws InvalidArgument for order 0, an empty diagonal or negative values.
Certificate decide_diagonal_tensor(const DiagonalTensorInstance& t, const NumericPolicy& policy = {});

/// One factor per mode; the product at (i, ..., i) reproduces diag[i].
/// Throws NotCompletable.
TensorFactors complete_diagonal_tensor(const DiagonalTensorInstance& t, const NumericPolicy& policy = {});

// Observed entries of a 2x2x2 tensor keyed by 4i + 2j + k.
struct Pattern222 {
  std::map<unsigned, Rational> entries;
};

// Orbit representatives under the symmetries of the cube.
enum class Case222 {
  Single,            // {000}
  PairEdge,          // {000, 001}
  PairFace,          // {000, 011}
  PairOpposite,      // {000, 111}
  TripleCorner,      // {000, 001, 010}
  TripleSkew,        // {000, 001, 110}
  TripleScattered,   // {000, 101, 011}
};
const char* to_string(Case222 c);

/// Throws UnsupportedPattern when the positions are not in a listed orbit.
Case222 classify_222(const Pattern222& p);

/// Witnesses carry the three factors in tensor_factors.
Certificate decide_222(const Pattern222& p, const NumericPolicy& policy = {});

Real tensor_entry(const TensorFactors& f, const std::vector<std::size_t>& index);

enum class Rank2Pattern { A, B };

struct Rank2Completion {
  bool completable = false;
  std::vector<Real> roots;  // all real candidates for X
  std::optional<Real> X;    // the root used, inside [0, R]
  std::array<std::array<Real, 3>, 3> matrix{};
};

/// Seven observed values (a, b, c, d, e, f, g) of a 3x3 matrix with the last
/// two cells X and R - X. Throws DegenerateDenominator or InvalidArgument.
Rank2Completion complete_rank2_3x3(const std::array<Rational, 7>& values, Rank2Pattern pattern);

/// Sturm count of distinct real roots in (lower, upper]; coefficients from
/// the constant term up.
std::size_t count_roots(const std::vector<Rational>& poly, const Rational& lower, const Rational& upper);

}  // namespace rank1
