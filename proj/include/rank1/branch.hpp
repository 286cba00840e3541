#pragma once

#include <cstddef>
#include <vector>

#include "rank1/model.hpp"
#include "rank1/reduce.hpp"

namespace rank1 {

// Rows I and columns J set identically to zero.
struct ZeroSupport {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;

  bool empty() const { return rows.empty() && cols.empty(); }
  std::size_t size() const { return rows.size() + cols.size(); }
  auto operator<=>(const ZeroSupport&) const = default;
};

struct Block {
  Rational b;
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  BlockFactor factor;
};

// A branch of the completion problem in contracted form: positive rank-one
// blocks, free rows and columns with no specified entries, and the rows and
// columns held at zero. Indices refer to the original matrix.
struct ContractedInstance {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<Block> blocks;
  std::vector<std::size_t> free_rows;
  std::vector<std::size_t> free_cols;
  ZeroSupport zero;

  std::size_t s() const { return blocks.size(); }
  std::size_t isolated() const { return free_rows.size() + free_cols.size(); }
  std::vector<Rational> block_sums() const;
  /// s + isolated - 2, the dimension count for families.
  long degrees_of_freedom() const { return static_cast<long>(s() + isolated()) - 2; }
};

/// Zeroes the rows and columns of `zero`, then contracts what is left. The
/// residual entries must be positive and cycle singular.
ContractedInstance contract_branch(const PartialMatrix& m, const ZeroSupport& zero);

/// Completion of the full matrix from block level masses: U[k] V[k] = b_k,
/// plus masses on free rows and free columns.
RankOneFactorization expand(const ContractedInstance& c, const std::vector<Real>& U, const std::vector<Real>& V,
                            const std::vector<Real>& free_row_mass, const std::vector<Real>& free_col_mass);

/// A completion of a branch whose root sum is at most one. Throws
/// NotCompletable otherwise.
RankOneFactorization construct_witness(const ContractedInstance& c, const NumericPolicy& policy = {});

}  // namespace rank1
