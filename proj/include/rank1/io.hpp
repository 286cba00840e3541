#pragma once

#include <string>
#include <string_view>

#include "rank1/model.hpp"

namespace rank1 {

/// Parses an instance file:
///   {"rows": m, "cols": n, "entries": [{"row": i, "col": j, "value": "p/q"}, ...]}
/// Indices are 0-based. Values are strings holding a fraction or a finite
/// decimal; plain JSON integers are accepted too. Throws Parse with a line
/// and column, or the PartialMatrix validation errors.
PartialMatrix parse_instance(std::string_view text);
PartialMatrix read_instance_file(const std::string& path);

/// Inverse of parse_instance; values are written as exact fractions.
std::string instance_to_json(const PartialMatrix& m, int indent = 2);

/// Exact "p/q" when known, else a decimal string with only certified digits.
std::string format_real(const Real& x);

/// Same matrix as a dense grid of format_real strings.
std::vector<std::vector<std::string>> format_matrix(const RankOneFactorization& f);

}  // namespace rank1
