#include "rank1/decide.hpp"

#include <algorithm>

#include "rank1/error.hpp"
#include "rank1/graph.hpp"
#include "rank1/reduce.hpp"

namespace rank1 {

namespace {

std::vector<std::size_t> complement(std::size_t count, const std::vector<std::size_t>& removed) {
  std::vector<bool> gone(count, false);
  for (auto x : removed) gone[x] = true;
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < count; ++k)
    if (!gone[k]) out.push_back(k);
  return out;
}

// Decision for a residual whose specified entries are all positive. The
// residual is given with its original row and column indices.
Certificate decide_residual(const PartialMatrix& m, const ZeroSupport& zero, const NumericPolicy& policy) {
  auto rows = complement(m.rows(), zero.rows);
  auto cols = complement(m.cols(), zero.cols);
  PartialMatrix residual = restrict_to(m, rows, cols);
  if (auto violation = check_cycle_singularity(residual)) {
    for (auto& p : violation->cycle.edges) p = {rows[p.row], cols[p.col]};
    return Certificate(std::move(*violation));
  }
  ContractedInstance c = contract_branch(m, zero);
  if (c.s() == 1 && c.isolated() == 0 && c.blocks[0].b != 1) return Certificate(SumNotOne{c.blocks[0].b});
  auto cmp = compare_root_sum(c.block_sums(), 2, Rational(1), policy);
  if (cmp.result == Comparison::Greater) return Certificate(NormExcess{cmp.sum});
  return Certificate(Witness{construct_witness(c, policy), {}});
}

}  // namespace

Certificate decide_positive(const PartialMatrix& m, const NumericPolicy& policy) {
  for (const auto& [p, v] : m.entries())
    if (sgn(v) <= 0)
      throw Error(ErrorCode::NonPositiveEntry,
                  "entry (" + std::to_string(p.row) + "," + std::to_string(p.col) + ") is not positive");
  return decide_residual(m, {}, policy);
}

Certificate decide(const PartialMatrix& m, const NumericPolicy& policy) {
  auto propagated = propagate_zeros(m);
  if (auto* v = std::get_if<ThreeLineViolation>(&propagated)) return Certificate(*v);
  const auto& zp = std::get<ZeroPropagation>(propagated);

  // Zeros left after removing the forced rows and columns touch no nonzero,
  // so they form components of their own. Each must be covered by its rows
  // or by its columns.
  auto rows = complement(m.rows(), zp.zero_rows);
  auto cols = complement(m.cols(), zp.zero_cols);
  PartialMatrix rest = restrict_to(m, rows, cols);
  std::map<Position, Rational> zero_entries;
  for (const auto& [p, v] : rest.entries())
    if (sgn(v) == 0) zero_entries.emplace(p, v);
  ComponentSummary zeros = components(from_partial_matrix(PartialMatrix(rest.rows(), rest.cols(), zero_entries)));

  std::map<Position, Rational> positive_entries;
  for (const auto& [p, v] : rest.entries())
    if (sgn(v) > 0) positive_entries.emplace(p, v);
  ComponentSummary positive =
      components(from_partial_matrix(PartialMatrix(rest.rows(), rest.cols(), positive_entries)));
  std::vector<bool> row_in_zero(rest.rows(), false);
  std::vector<bool> col_in_zero(rest.cols(), false);
  for (const auto& z : zeros.edge_components) {
    for (auto r : z.rows) row_in_zero[r] = true;
    for (auto c : z.cols) col_in_zero[c] = true;
  }
  bool other_rows = !positive.edge_components.empty();
  bool other_cols = !positive.edge_components.empty();
  for (auto r : positive.isolated_rows) other_rows = other_rows || !row_in_zero[r];
  for (auto c : positive.isolated_cols) other_cols = other_cols || !col_in_zero[c];

  ZeroSupport support{zp.zero_rows, zp.zero_cols};
  const auto& zc = zeros.edge_components;
  if (zc.size() == 1 && !other_rows && !other_cols) {
    // Everything left is one zero component. It can be covered while keeping
    // a row and a column alive only through an unobserved cell (r, c); cover
    // all other rows and columns. A complete zero block forces total zero.
    for (auto r : zc[0].rows)
      for (auto c : zc[0].cols) {
        if (rest.find({r, c})) continue;
        for (auto r2 : zc[0].rows)
          if (r2 != r) support.rows.push_back(rows[r2]);
        for (auto c2 : zc[0].cols)
          if (c2 != c) support.cols.push_back(cols[c2]);
        std::sort(support.rows.begin(), support.rows.end());
        std::sort(support.cols.begin(), support.cols.end());
        return decide_residual(m, support, policy);
      }
    return Certificate(SumNotOne{Rational(0)});
  }
  for (std::size_t k = 0; k < zc.size(); ++k) {
    bool by_rows;
    if (other_rows)
      by_rows = true;
    else if (other_cols)
      by_rows = false;
    else
      by_rows = k > 0;
    if (by_rows)
      for (auto r : zc[k].rows) support.rows.push_back(rows[r]);
    else
      for (auto c : zc[k].cols) support.cols.push_back(cols[c]);
  }
  std::sort(support.rows.begin(), support.rows.end());
  std::sort(support.cols.begin(), support.cols.end());
  return decide_residual(m, support, policy);
}

SupportEnumeration enumerate_zero_supports(const PartialMatrix& m, std::size_t cap, const NumericPolicy& policy) {
  SupportEnumeration out;
  auto propagated = propagate_zeros(m);
  if (std::holds_alternative<ThreeLineViolation>(propagated)) return out;
  const auto& zp = std::get<ZeroPropagation>(propagated);

  std::vector<bool> row_nonzero(m.rows(), false);
  std::vector<bool> col_nonzero(m.cols(), false);
  std::vector<bool> row_touch(m.rows(), false);
  std::vector<bool> col_touch(m.cols(), false);
  for (const auto& [p, v] : m.entries()) {
    (sgn(v) == 0 ? row_touch : row_nonzero)[p.row] = true;
    (sgn(v) == 0 ? col_touch : col_nonzero)[p.col] = true;
  }
  std::vector<bool> forced_row(m.rows(), false);
  std::vector<bool> forced_col(m.cols(), false);
  for (auto r : zp.zero_rows) forced_row[r] = true;
  for (auto c : zp.zero_cols) forced_col[c] = true;

  // Optional vertices: touch a zero, carry no nonzero, not already forced.
  std::vector<std::size_t> optional_rows;
  std::vector<std::size_t> optional_cols;
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (row_touch[r] && !row_nonzero[r] && !forced_row[r]) optional_rows.push_back(r);
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (col_touch[c] && !col_nonzero[c] && !forced_col[c]) optional_cols.push_back(c);
  const std::size_t k = optional_rows.size() + optional_cols.size();
  if (k >= 63 || (std::size_t{1} << k) > cap) {
    out.cap_exceeded = true;
    return out;
  }

  std::vector<Position> zeros;
  for (const auto& [p, v] : m.entries())
    if (sgn(v) == 0) zeros.push_back(p);

  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    ZeroSupport s{zp.zero_rows, zp.zero_cols};
    std::vector<bool> in_row = forced_row;
    std::vector<bool> in_col = forced_col;
    for (std::size_t b = 0; b < k; ++b) {
      if (!(mask >> b & 1)) continue;
      if (b < optional_rows.size()) {
        s.rows.push_back(optional_rows[b]);
        in_row[optional_rows[b]] = true;
      } else {
        s.cols.push_back(optional_cols[b - optional_rows.size()]);
        in_col[optional_cols[b - optional_rows.size()]] = true;
      }
    }
    if (s.rows.size() >= m.rows() || s.cols.size() >= m.cols()) continue;
    if (!std::all_of(zeros.begin(), zeros.end(), [&](const Position& p) { return in_row[p.row] || in_col[p.col]; }))
      continue;
    std::sort(s.rows.begin(), s.rows.end());
    std::sort(s.cols.begin(), s.cols.end());
    if (decide_residual(m, s, policy).completable()) out.supports.push_back(std::move(s));
  }
  std::sort(out.supports.begin(), out.supports.end(), [](const ZeroSupport& a, const ZeroSupport& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  auto contains = [](const ZeroSupport& big, const ZeroSupport& small) {
    return std::includes(big.rows.begin(), big.rows.end(), small.rows.begin(), small.rows.end()) &&
           std::includes(big.cols.begin(), big.cols.end(), small.cols.begin(), small.cols.end());
  };
  for (std::size_t i = 0; i < out.supports.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < out.supports.size() && minimal; ++j)
      if (j != i && out.supports[j].size() < out.supports[i].size() && contains(out.supports[i], out.supports[j]))
        minimal = false;
    out.minimal.push_back(minimal);
  }
  return out;
}

}  // namespace rank1
