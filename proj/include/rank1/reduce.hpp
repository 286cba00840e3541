#pragma once

#include <optional>
#include <set>
#include <variant>
#include <vector>

#include "rank1/graph.hpp"
#include "rank1/model.hpp"

namespace rank1 {

struct ZeroPropagation {
  PartialMatrix matrix;  // input plus the zeros forced into whole rows and columns
  std::vector<std::size_t> zero_rows;
  std::vector<std::size_t> zero_cols;
};

/// Fixpoint of the rule "a zero with a nonzero in its row zeroes its column
/// (and symmetrically)". Returns the first zero seeing nonzeros both ways.
std::variant<ZeroPropagation, ThreeLineViolation> propagate_zeros(const PartialMatrix& m);

/// Exact check of the alternating-product identity over a fundamental cycle
/// basis. nullopt means every cycle is singular.
std::optional<CycleViolation> check_cycle_singularity(const PartialMatrix& m);

/// Fills the transitive closure of the pattern with the unique rank-one
/// values. Throws NonPositiveEntry on zeros and InternalInconsistency when
/// the cycle identities fail.
PartialMatrix complete_by_cycles(const PartialMatrix& m);

// Normalized rank-one factors of one block: entry (rows[k], cols[l]) equals
// b * row_weights[k] * col_weights[l]. Empty for blocks of mass zero.
struct BlockFactor {
  std::vector<Rational> row_weights;
  std::vector<Rational> col_weights;
};

struct ReducedForm {
  PartialMatrix filled;
  std::vector<std::size_t> zero_rows;
  std::vector<std::size_t> zero_cols;
  std::vector<Rational> contracted_diagonal;
  ComponentSummary summary;
  std::vector<BlockFactor> block_factors;
  std::set<Position> implied;  // filled positions that were not observed
};

/// Throws NotBlockComplete unless every component is a full rank-one block.
ReducedForm contract_blocks(const PartialMatrix& filled);

/// complete_by_cycles followed by contract_blocks, recording which entries
/// were reconstructed.
ReducedForm reduce_positive(const PartialMatrix& m);

/// The submatrix on the given rows and columns, reindexed in order.
PartialMatrix restrict_to(const PartialMatrix& m, const std::vector<std::size_t>& rows,
                          const std::vector<std::size_t>& cols);

}  // namespace rank1
