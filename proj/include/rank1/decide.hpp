#pragma once

#include <cstddef>
#include <vector>

#include "rank1/branch.hpp"
#include "rank1/model.hpp"

namespace rank1 {

inline constexpr std::size_t kDefaultCoverCap = std::size_t{1} << 16;

/// Decision for strictly positive partial matrices. Throws NonPositiveEntry.
Certificate decide_positive(const PartialMatrix& m, const NumericPolicy& policy = {});

/// Decision for nonnegative partial matrices, zeros included.
Certificate decide(const PartialMatrix& m, const NumericPolicy& policy = {});

struct SupportEnumeration {
  std::vector<ZeroSupport> supports;  // by size, then rows, then columns
  std::vector<bool> minimal;          // no other listed support is contained in it
  bool cap_exceeded = false;          // candidate count exceeded the cap; list is empty
};

/// Every zero support whose residual positive matrix is completable.
SupportEnumeration enumerate_zero_supports(const PartialMatrix& m, std::size_t cap = kDefaultCoverCap,
                                           const NumericPolicy& policy = {});

}  // namespace rank1
