#include "rank1/branch.hpp"

#include <algorithm>

#include "rank1/complete.hpp"
#include "rank1/error.hpp"

namespace rank1 {

std::vector<Rational> ContractedInstance::block_sums() const {
  std::vector<Rational> out;
  for (const auto& b : blocks) out.push_back(b.b);
  return out;
}

ContractedInstance contract_branch(const PartialMatrix& m, const ZeroSupport& zero) {
  std::vector<bool> row_zero(m.rows(), false);
  std::vector<bool> col_zero(m.cols(), false);
  for (auto r : zero.rows) row_zero.at(r) = true;
  for (auto c : zero.cols) col_zero.at(c) = true;
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!row_zero[r]) rows.push_back(r);
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!col_zero[c]) cols.push_back(c);
  if (rows.empty() || cols.empty())
    throw Error(ErrorCode::InvalidArgument, "a zero support must leave at least one row and one column");

  ReducedForm rf = reduce_positive(restrict_to(m, rows, cols));
  ContractedInstance out;
  out.m = m.rows();
  out.n = m.cols();
  for (std::size_t k = 0; k < rf.summary.edge_components.size(); ++k) {
    const auto& comp = rf.summary.edge_components[k];
    Block b{comp.block_sum, {}, {}, rf.block_factors[k]};
    for (auto r : comp.rows) b.rows.push_back(rows[r]);
    for (auto c : comp.cols) b.cols.push_back(cols[c]);
    out.blocks.push_back(std::move(b));
  }
  for (auto r : rf.summary.isolated_rows) out.free_rows.push_back(rows[r]);
  for (auto c : rf.summary.isolated_cols) out.free_cols.push_back(cols[c]);
  out.zero = zero;
  std::sort(out.zero.rows.begin(), out.zero.rows.end());
  std::sort(out.zero.cols.begin(), out.zero.cols.end());
  return out;
}

RankOneFactorization expand(const ContractedInstance& c, const std::vector<Real>& U, const std::vector<Real>& V,
                            const std::vector<Real>& free_row_mass, const std::vector<Real>& free_col_mass) {
  if (U.size() != c.s() || V.size() != c.s() || free_row_mass.size() != c.free_rows.size() ||
      free_col_mass.size() != c.free_cols.size())
    throw Error(ErrorCode::DimensionMismatch, "block level masses do not match the branch");
  RankOneFactorization f{std::vector<Real>(c.m), std::vector<Real>(c.n)};
  for (std::size_t k = 0; k < c.s(); ++k) {
    const Block& b = c.blocks[k];
    for (std::size_t l = 0; l < b.rows.size(); ++l) f.u[b.rows[l]] = U[k] * Real(b.factor.row_weights[l]);
    for (std::size_t l = 0; l < b.cols.size(); ++l) f.v[b.cols[l]] = V[k] * Real(b.factor.col_weights[l]);
  }
  for (std::size_t l = 0; l < c.free_rows.size(); ++l) f.u[c.free_rows[l]] = free_row_mass[l];
  for (std::size_t l = 0; l < c.free_cols.size(); ++l) f.v[c.free_cols[l]] = free_col_mass[l];
  return f;
}

namespace {

std::vector<Real> uniform_mass(std::size_t count, const Real& total) {
  std::vector<Real> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(total / Real(Rational(static_cast<long>(count))));
  return out;
}

}  // namespace

RankOneFactorization construct_witness(const ContractedInstance& c, const NumericPolicy& policy) {
  const unsigned bits = policy.working_bits;
  const std::size_t fr = c.free_rows.size();
  const std::size_t fc = c.free_cols.size();
  if (c.s() == 0) {
    if (fr == 0 || fc == 0) throw Error(ErrorCode::NotCompletable, "branch has no rows or no columns left");
    return expand(c, {}, {}, uniform_mass(fr, Real(1)), uniform_mass(fc, Real(1)));
  }
  std::vector<Rational> b = c.block_sums();
  Comparison cmp = compare_root_sum(b, 2, Rational(1), policy).result;
  if (cmp == Comparison::Greater) throw Error(ErrorCode::NotCompletable, "block root sum exceeds one");
  if (c.s() == 1 && fr + fc == 0 && b[0] != 1)
    throw Error(ErrorCode::NotCompletable, "single spanning block does not sum to one");

  std::vector<Real> r;
  Real S;
  for (const auto& x : b) {
    r.push_back(sqrt(Real(x, bits)));
    S = S + r.back();
  }
  if (cmp == Comparison::Equal)
    return expand(c, r, r, std::vector<Real>(fr, Real(0)), std::vector<Real>(fc, Real(0)));
  if (fr + fc == 0) return pair_walk(c, policy)[0];

  std::vector<Real> near;  // sqrt(b) * S
  std::vector<Real> far;   // sqrt(b) / S
  for (const auto& x : r) {
    near.push_back(x * S);
    far.push_back(x / S);
  }
  Real rest = Real(1) - S * S;
  if (fr > 0) return expand(c, near, far, uniform_mass(fr, rest), std::vector<Real>(fc, Real(0)));
  return expand(c, far, near, {}, uniform_mass(fc, rest));
}

}  // namespace rank1
