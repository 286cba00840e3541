#include "rank1/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rank1/error.hpp"
#include "rank1/random.hpp"

namespace rank1 {

Objective euclidean_distance(Eigen::MatrixXd target) {
  Objective o;
  o.value = [target](const Eigen::MatrixXd& p) { return (p - target).norm(); };
  o.gradient = [target](const Eigen::MatrixXd& p) -> Eigen::MatrixXd {
    Eigen::MatrixXd diff = p - target;
    double n = diff.norm();
    if (n == 0) return Eigen::MatrixXd::Zero(p.rows(), p.cols());
    return diff / n;
  };
  return o;
}

Eigen::MatrixXd OptimizationProblem::target_matrix() const {
  if (target) {
    if (static_cast<std::size_t>(target->rows()) != M.rows() || static_cast<std::size_t>(target->cols()) != M.cols())
      throw Error(ErrorCode::DimensionMismatch, "target shape differs from the matrix");
    if ((target->array() < 0).any()) throw Error(ErrorCode::NegativeValue, "target has a negative entry");
    return *target;
  }
  const double cells = static_cast<double>(M.rows() * M.cols());
  return Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(M.rows()), static_cast<Eigen::Index>(M.cols()),
                                   1.0 / cells);
}

Objective OptimizationProblem::resolved_objective() const {
  return objective ? *objective : euclidean_distance(target_matrix());
}

std::size_t OptimizationResult::stationary_count() const {
  return static_cast<std::size_t>(
      std::count_if(candidates.begin(), candidates.end(), [](const Candidate& c) { return c.converged; }));
}

namespace {

// Variables x = (U, P, Q): block row masses, free row masses, free column
// masses. Constraints: sum U + sum P = 1 and sum b/U + sum Q = 1.
class BranchModel {
 public:
  BranchModel(const ContractedInstance& c, const Objective& obj, double sign)
      : c_(c), obj_(obj), sign_(sign), s_(c.s()), fr_(c.free_rows.size()), fc_(c.free_cols.size()) {
    for (const auto& blk : c.blocks) b_.push_back(to_double(blk.b));
  }

  std::size_t size() const { return s_ + fr_ + fc_; }
  std::size_t s() const { return s_; }
  bool barrier_var(std::size_t i) const { return i >= s_; }
  const std::vector<double>& b() const { return b_; }

  void factors(const Eigen::VectorXd& x, Eigen::VectorXd& u, Eigen::VectorXd& v) const {
    u = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(c_.m));
    v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(c_.n));
    for (std::size_t k = 0; k < s_; ++k) {
      const Block& blk = c_.blocks[k];
      const double U = x[k];
      const double V = b_[k] / U;
      for (std::size_t l = 0; l < blk.rows.size(); ++l) u[blk.rows[l]] = U * to_double(blk.factor.row_weights[l]);
      for (std::size_t l = 0; l < blk.cols.size(); ++l) v[blk.cols[l]] = V * to_double(blk.factor.col_weights[l]);
    }
    for (std::size_t l = 0; l < fr_; ++l) u[c_.free_rows[l]] = x[s_ + l];
    for (std::size_t l = 0; l < fc_; ++l) v[c_.free_cols[l]] = x[s_ + fr_ + l];
  }

  Eigen::MatrixXd matrix(const Eigen::VectorXd& x) const {
    Eigen::VectorXd u, v;
    factors(x, u, v);
    return u * v.transpose();
  }

  double value(const Eigen::VectorXd& x) const { return obj_.value(matrix(x)); }

  // Gradient of sign * objective.
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const {
    Eigen::VectorXd u, v;
    factors(x, u, v);
    Eigen::MatrixXd G = obj_.gradient(u * v.transpose()) * sign_;
    Eigen::VectorXd gu = G * v;
    Eigen::VectorXd gv = G.transpose() * u;
    Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(size()));
    for (std::size_t k = 0; k < s_; ++k) {
      const Block& blk = c_.blocks[k];
      double row_part = 0;
      double col_part = 0;
      for (std::size_t l = 0; l < blk.rows.size(); ++l) row_part += to_double(blk.factor.row_weights[l]) * gu[blk.rows[l]];
      for (std::size_t l = 0; l < blk.cols.size(); ++l) col_part += to_double(blk.factor.col_weights[l]) * gv[blk.cols[l]];
      g[k] = row_part - b_[k] / (x[k] * x[k]) * col_part;
    }
    for (std::size_t l = 0; l < fr_; ++l) g[s_ + l] = gu[c_.free_rows[l]];
    for (std::size_t l = 0; l < fc_; ++l) g[s_ + fr_ + l] = gv[c_.free_cols[l]];
    return g;
  }

  Eigen::Vector2d constraints(const Eigen::VectorXd& x) const {
    Eigen::Vector2d c(-1, -1);
    for (std::size_t k = 0; k < s_; ++k) {
      c[0] += x[k];
      c[1] += b_[k] / x[k];
    }
    for (std::size_t l = 0; l < fr_; ++l) c[0] += x[s_ + l];
    for (std::size_t l = 0; l < fc_; ++l) c[1] += x[s_ + fr_ + l];
    return c;
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x, const std::vector<bool>& fixed) const {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(2, static_cast<Eigen::Index>(size()));
    for (std::size_t k = 0; k < s_; ++k) {
      J(0, k) = 1;
      J(1, k) = -b_[k] / (x[k] * x[k]);
    }
    for (std::size_t l = 0; l < fr_; ++l) J(0, s_ + l) = 1;
    for (std::size_t l = 0; l < fc_; ++l) J(1, s_ + fr_ + l) = 1;
    for (std::size_t i = 0; i < size(); ++i)
      if (fixed[i]) J.col(static_cast<Eigen::Index>(i)).setZero();
    return J;
  }

  bool in_domain(const Eigen::VectorXd& x, bool strict_barrier, const std::vector<bool>& fixed) const {
    for (std::size_t i = 0; i < size(); ++i) {
      if (fixed[i]) continue;
      if (!std::isfinite(x[i])) return false;
      if (i < s_ ? x[i] <= 0 : (strict_barrier ? x[i] <= 0 : x[i] < 0)) return false;
    }
    return true;
  }

 private:
  const ContractedInstance& c_;
  const Objective& obj_;
  double sign_;
  std::size_t s_, fr_, fc_;
  std::vector<double> b_;
};

// Minimum-norm correction onto the constraint surface.
Eigen::VectorXd solve_normal(const Eigen::MatrixXd& J, const Eigen::VectorXd& rhs) {
  Eigen::MatrixXd JJt = J * J.transpose();
  return J.transpose() * JJt.completeOrthogonalDecomposition().solve(rhs);
}

bool retract(const BranchModel& m, Eigen::VectorXd& x, const std::vector<bool>& fixed, bool strict) {
  for (int it = 0; it < 50; ++it) {
    Eigen::Vector2d c = m.constraints(x);
    if (c.lpNorm<Eigen::Infinity>() < 1e-15) return m.in_domain(x, strict, fixed);
    Eigen::VectorXd step = solve_normal(m.jacobian(x, fixed), c);
    double scale = 1;
    Eigen::VectorXd trial = x - step;
    while (!m.in_domain(trial, strict, fixed) && scale > 1e-12) {
      scale /= 2;
      trial = x - scale * step;
    }
    if (scale <= 1e-12) return false;
    x = trial;
  }
  return m.constraints(x).lpNorm<Eigen::Infinity>() < 1e-12 && m.in_domain(x, strict, fixed);
}

Eigen::VectorXd projected(const BranchModel& m, const Eigen::VectorXd& x, const Eigen::VectorXd& g,
                          const std::vector<bool>& fixed) {
  Eigen::VectorXd h = g;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (fixed[i]) h[i] = 0;
  Eigen::MatrixXd J = m.jacobian(x, fixed);
  return h - solve_normal(J, J * h);
}

double barrier_value(const BranchModel& m, const Eigen::VectorXd& x, double mu, const std::vector<bool>& fixed) {
  double v = m.value(x);
  if (mu > 0)
    for (std::size_t i = m.s(); i < m.size(); ++i)
      if (!fixed[i]) v -= mu * std::log(x[i]);
  return v;
}

void descend(const BranchModel& m, Eigen::VectorXd& x, double mu, const std::vector<bool>& fixed, double sign,
             int max_iter) {
  auto F = [&](const Eigen::VectorXd& y) { return sign * m.value(y) + (barrier_value(m, y, mu, fixed) - m.value(y)); };
  double alpha = 1e-2;
  double fx = F(x);
  for (int it = 0; it < max_iter && alpha > 1e-18; ++it) {
    Eigen::VectorXd g = m.gradient(x);
    if (mu > 0)
      for (std::size_t i = m.s(); i < m.size(); ++i)
        if (!fixed[i]) g[i] -= mu / x[i];
    Eigen::VectorXd pg = projected(m, x, g, fixed);
    if (pg.norm() < 1e-13) break;
    Eigen::VectorXd trial = x - alpha * pg;
    if (m.in_domain(trial, mu > 0, fixed) && retract(m, trial, fixed, mu > 0)) {
      double ft = F(trial);
      if (ft < fx) {
        x = trial;
        fx = ft;
        alpha *= 1.5;
        continue;
      }
    }
    alpha *= 0.5;
  }
}

// Newton iteration on the Lagrange system grad d = J^T lambda, c = 0 over the
// non-fixed variables.
bool polish(const BranchModel& m, Eigen::VectorXd& x, const std::vector<bool>& fixed) {
  std::vector<std::size_t> free_idx;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (!fixed[i]) free_idx.push_back(i);
  const Eigen::Index nf = static_cast<Eigen::Index>(free_idx.size());
  auto residual = [&](const Eigen::VectorXd& z) {
    Eigen::VectorXd y = x;
    for (Eigen::Index k = 0; k < nf; ++k) y[free_idx[k]] = z[k];
    Eigen::VectorXd g = m.gradient(y);
    Eigen::MatrixXd J = m.jacobian(y, fixed);
    Eigen::VectorXd r(nf + 2);
    for (Eigen::Index k = 0; k < nf; ++k)
      r[k] = g[free_idx[k]] - J(0, free_idx[k]) * z[nf] - J(1, free_idx[k]) * z[nf + 1];
    r.tail(2) = m.constraints(y);
    return r;
  };
  Eigen::VectorXd z(nf + 2);
  for (Eigen::Index k = 0; k < nf; ++k) z[k] = x[free_idx[k]];
  {
    Eigen::MatrixXd J = m.jacobian(x, fixed);
    Eigen::MatrixXd JJt = J * J.transpose();
    z.tail(2) = JJt.completeOrthogonalDecomposition().solve(J * m.gradient(x));
  }
  auto apply = [&](const Eigen::VectorXd& zz) {
    Eigen::VectorXd y = x;
    for (Eigen::Index k = 0; k < nf; ++k) y[free_idx[k]] = zz[k];
    return y;
  };
  Eigen::VectorXd r = residual(z);
  for (int it = 0; it < 40 && r.norm() > 1e-14; ++it) {
    Eigen::MatrixXd Jr(nf + 2, nf + 2);
    for (Eigen::Index k = 0; k < nf + 2; ++k) {
      const double h = 1e-7 * std::max(1.0, std::abs(z[k]));
      Eigen::VectorXd zp = z, zm = z;
      zp[k] += h;
      zm[k] -= h;
      Jr.col(k) = (residual(zp) - residual(zm)) / (2 * h);
    }
    Eigen::VectorXd step = Jr.colPivHouseholderQr().solve(r);
    double scale = 1;
    bool moved = false;
    while (scale > 1e-6) {
      Eigen::VectorXd zt = z - scale * step;
      if (m.in_domain(apply(zt), false, fixed)) {
        Eigen::VectorXd rt = residual(zt);
        if (rt.norm() < r.norm()) {
          z = zt;
          r = rt;
          moved = true;
          break;
        }
      }
      scale /= 2;
    }
    if (!moved) break;
  }
  Eigen::VectorXd y = apply(z);
  if (!m.in_domain(y, false, fixed)) return false;
  x = y;
  return r.norm() < 1e-9;
}

struct LocalResult {
  Eigen::VectorXd x;
  std::vector<bool> fixed;
  double stationarity;
};

LocalResult local_search(const BranchModel& m, Eigen::VectorXd x, double sign) {
  std::vector<bool> fixed(m.size(), false);
  const bool has_barrier = m.size() > m.s();
  if (!has_barrier) {
    descend(m, x, 0, fixed, sign, 3000);
  } else {
    for (double mu : {1e-3, 1e-5, 1e-7, 1e-9}) descend(m, x, mu, fixed, sign, 1500);
    // Variables pressed against zero join the face they approach.
    for (std::size_t i = m.s(); i < m.size(); ++i)
      if (x[i] < 1e-6) {
        fixed[i] = true;
        x[i] = 0;
      }
    if (!retract(m, x, fixed, false)) {
      std::fill(fixed.begin(), fixed.end(), false);
    } else {
      descend(m, x, 0, fixed, sign, 1000);
    }
  }
  polish(m, x, fixed);
  Eigen::VectorXd pg = projected(m, x, m.gradient(x), fixed);
  return {x, fixed, pg.norm()};
}

// Start on the branch: a ray from sqrt(b)/S to the level f = 1, scaled by
// rho, then masses for free vertices as in the sampler.
Eigen::VectorXd start_point(const BranchModel& m, std::size_t fr, std::size_t fc, RandomStream& rng, double rho,
                            bool move) {
  const auto& b = m.b();
  const std::size_t s = b.size();
  std::vector<double> w(s, 1.0);
  auto f = [&](const std::vector<double>& y) {
    double t = 0;
    for (std::size_t i = 0; i < s; ++i) t += b[i] / y[i];
    return t;
  };
  if (s >= 2) {
    double S = 0;
    for (double x : b) S += std::sqrt(x);
    for (std::size_t i = 0; i < s; ++i) w[i] = std::sqrt(b[i]) / S;
    std::vector<double> d(s);
    double mean = 0;
    for (auto& x : d) {
      x = move ? rng.normal() : 0.0;
      mean += x / static_cast<double>(s);
    }
    double tau_max = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < s; ++i) {
      d[i] -= mean;
      if (d[i] < 0) tau_max = std::min(tau_max, -w[i] / d[i]);
    }
    if (std::isfinite(tau_max)) {
      double lo = 0, hi = tau_max;
      auto at = [&](double tau) {
        std::vector<double> y(s);
        for (std::size_t i = 0; i < s; ++i) y[i] = w[i] + tau * d[i];
        return y;
      };
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (f(at(mid)) < 1) lo = mid; else hi = mid;
      }
      w = at((fr + fc == 0) ? lo : rho * lo);
    }
  }
  const double fw = s == 0 ? 0.0 : f(w);
  Eigen::VectorXd x(static_cast<Eigen::Index>(s + fr + fc));
  auto split = [&](std::size_t count, double total, std::size_t offset) {
    std::vector<double> e(count);
    double sum = 0;
    for (auto& y : e) sum += (y = rng.exponential() + 1e-3);
    for (std::size_t l = 0; l < count; ++l) x[static_cast<Eigen::Index>(offset + l)] = total * e[l] / sum;
  };
  if (fr + fc == 0) {
    for (std::size_t i = 0; i < s; ++i) x[i] = w[i];
    return x;
  }
  double lambda = fw;
  if (fr > 0 && fc > 0) lambda = fw + (0.05 + 0.9 * rng.uniform()) * (1 - fw);
  for (std::size_t i = 0; i < s; ++i) x[i] = fr > 0 ? lambda * w[i] : b[i] / (fw * w[i]);
  if (s == 0) lambda = 0;
  split(fr, 1 - (fr > 0 ? lambda : 1.0), s);
  split(fc, 1 - (fr > 0 ? (s == 0 ? 0.0 : fw / lambda) : fw), s + fr);
  return x;
}

RankOneFactorization to_completion(const ContractedInstance& c, const Eigen::VectorXd& x) {
  const std::size_t s = c.s();
  const std::size_t fr = c.free_rows.size();
  const std::size_t fc = c.free_cols.size();
  std::vector<Rational> U, V;
  Rational su = 0, sv = 0;
  for (std::size_t k = 0; k < s; ++k) {
    U.push_back(from_double_exact(x[k]));
    V.push_back(c.blocks[k].b / U.back());
    su += U.back();
    sv += V.back();
  }
  auto masses = [&](std::size_t count, std::size_t offset, const Rational& total) {
    std::vector<Real> out;
    Rational sum = 0;
    for (std::size_t l = 0; l < count; ++l) sum += from_double_exact(std::max(0.0, x[offset + l]));
    for (std::size_t l = 0; l < count; ++l) {
      Rational part = sgn(sum) > 0 ? from_double_exact(std::max(0.0, x[offset + l])) / sum
                                   : Rational(1, static_cast<long>(count));
      out.emplace_back(Rational(part * std::max(total, Rational(0))));
    }
    return out;
  };
  std::vector<Real> Ur, Vr;
  for (const auto& q : U) Ur.emplace_back(q);
  for (const auto& q : V) Vr.emplace_back(q);
  return expand(c, Ur, Vr, masses(fr, s, 1 - su), masses(fc, s + fr, 1 - sv));
}

Eigen::MatrixXd to_matrix(const RankOneFactorization& f) {
  Eigen::MatrixXd p(static_cast<Eigen::Index>(f.u.size()), static_cast<Eigen::Index>(f.v.size()));
  for (std::size_t i = 0; i < f.u.size(); ++i)
    for (std::size_t j = 0; j < f.v.size(); ++j) p(i, j) = f.u[i].to_double() * f.v[j].to_double();
  return p;
}

double max_gap(const RankOneFactorization& a, const RankOneFactorization& b) {
  double g = 0;
  for (std::size_t i = 0; i < a.u.size(); ++i) g = std::max(g, std::abs(a.u[i].to_double() - b.u[i].to_double()));
  for (std::size_t j = 0; j < a.v.size(); ++j) g = std::max(g, std::abs(a.v[j].to_double() - b.v[j].to_double()));
  return g;
}

std::vector<double> rounded(const RankOneFactorization& f) {
  std::vector<double> out;
  for (const auto* side : {&f.u, &f.v})
    for (const auto& x : *side) out.push_back(std::round(x.to_double() * 1e9) / 1e9);
  return out;
}

}  // namespace

OptimizationResult optimize_distance(const OptimizationProblem& p) {
  if (p.restarts == 0) throw Error(ErrorCode::InvalidArgument, "restarts must be at least one");
  CompletionSetDescription desc = classify_completions(p.M);
  if (desc.kind == CompletionKind::Empty) throw Error(ErrorCode::NoCompletions, "matrix is not completable");
  const Objective obj = p.resolved_objective();
  const double sign = p.sense == Sense::Min ? 1.0 : -1.0;

  std::vector<Candidate> found;
  auto add = [&](Candidate c) {
    for (auto& other : found)
      if (max_gap(other.completion, c.completion) < 1e-7) {
        if (c.converged && (!other.converged || c.stationarity < other.stationarity)) other = std::move(c);
        return;
      }
    found.push_back(std::move(c));
  };

  bool any_family = false;
  for (std::size_t bi = 0; bi < desc.branches.size(); ++bi) {
    const auto& br = desc.branches[bi];
    if (br.kind != CompletionKind::Family) {
      for (const auto& f : br.completions) add({f, obj.value(to_matrix(f)), 0.0, true});
      continue;
    }
    any_family = true;
    BranchModel model(br.instance, obj, sign);
    const std::size_t fr = br.instance.free_rows.size();
    const std::size_t fc = br.instance.free_cols.size();
    std::optional<FamilyChart> chart;
    if (fr + fc == 0) chart.emplace(br.instance, obj);
    static constexpr double kRadii[] = {0.25, 0.5, 0.75, 0.95};
    for (std::size_t r = 0; r < p.restarts; ++r) {
      RandomStream rng(splitmix64(p.seed + bi), r);
      Eigen::VectorXd x0 = start_point(model, fr, fc, rng, kRadii[r % 4], r > 0 || fr + fc == 0);
      std::vector<bool> none(model.size(), false);
      if (!retract(model, x0, none, fr + fc > 0)) continue;
      LocalResult lr = local_search(model, x0, sign);
      double stationarity = lr.stationarity;
      if (chart) {
        std::vector<double> U(lr.x.data(), lr.x.data() + lr.x.size());
        stationarity = stationarity_residual(*chart, chart->coordinates(U));
      }
      RankOneFactorization f = to_completion(br.instance, lr.x);
      if (!verify_completion(p.M, f, 1e-8)) continue;
      add({f, obj.value(to_matrix(f)), stationarity, stationarity < std::max(1e-8, p.tolerance)});
    }
  }
  if (found.empty()) throw Error(ErrorCode::DidNotConverge, "no local search produced a feasible point");
  if (any_family && std::none_of(found.begin(), found.end(), [](const Candidate& c) { return c.converged; }))
    throw Error(ErrorCode::DidNotConverge, "no local search reached a stationary point");

  std::sort(found.begin(), found.end(), [&](const Candidate& a, const Candidate& b) {
    if (a.converged != b.converged) return a.converged;
    if (std::abs(a.objective - b.objective) > 1e-12) return sign * a.objective < sign * b.objective;
    return rounded(a.completion) < rounded(b.completion);
  });
  OptimizationResult out;
  out.best = found.front().completion;
  out.objective = found.front().objective;
  out.candidates = std::move(found);
  return out;
}

FamilyChart::FamilyChart(const ContractedInstance& branch, Objective objective)
    : branch_(branch), objective_(std::move(objective)) {
  if (branch.isolated() != 0 || branch.s() < 2)
    throw Error(ErrorCode::NotAFamily, "chart needs two or more blocks and no free vertices");
  double S = 0;
  for (const auto& blk : branch.blocks) {
    b_.push_back(to_double(blk.b));
    S += std::sqrt(b_.back());
  }
  for (double x : b_) base_.push_back(std::sqrt(x) / S);
}

FamilyChart FamilyChart::for_problem(const OptimizationProblem& p) {
  CompletionSetDescription d = classify_completions(p.M);
  for (const auto& br : d.branches)
    if (br.kind == CompletionKind::Family && br.instance.isolated() == 0)
      return FamilyChart(br.instance, p.resolved_objective());
  throw Error(ErrorCode::NotAFamily, "no family branch without free vertices");
}

std::vector<double> FamilyChart::masses(std::span<const double> t) const {
  if (t.size() != dimension()) throw Error(ErrorCode::DimensionMismatch, "chart coordinate count");
  std::vector<double> U = base_;
  for (std::size_t k = 0; k < t.size(); ++k) {
    U[k] += t[k];
    U.back() -= t[k];
  }
  return U;
}

std::vector<double> FamilyChart::coordinates(std::span<const double> U) const {
  std::vector<double> t(dimension());
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = U[k] - base_[k];
  return t;
}

double FamilyChart::f(std::span<const double> t) const {
  auto U = masses(t);
  double s = 0;
  for (std::size_t k = 0; k < U.size(); ++k) s += b_[k] / U[k];
  return s;
}

std::vector<double> FamilyChart::grad_f(std::span<const double> t) const {
  auto U = masses(t);
  const std::size_t last = U.size() - 1;
  std::vector<double> g(dimension());
  for (std::size_t k = 0; k < g.size(); ++k) g[k] = -b_[k] / (U[k] * U[k]) + b_[last] / (U[last] * U[last]);
  return g;
}

Eigen::MatrixXd FamilyChart::matrix(std::span<const double> t) const {
  auto U = masses(t);
  BranchModel m(branch_, objective_, 1.0);
  return m.matrix(Eigen::Map<const Eigen::VectorXd>(U.data(), static_cast<Eigen::Index>(U.size())));
}

double FamilyChart::d(std::span<const double> t) const { return objective_.value(matrix(t)); }

std::vector<double> FamilyChart::grad_d(std::span<const double> t) const {
  auto U = masses(t);
  BranchModel m(branch_, objective_, 1.0);
  Eigen::VectorXd g = m.gradient(Eigen::Map<const Eigen::VectorXd>(U.data(), static_cast<Eigen::Index>(U.size())));
  std::vector<double> out(dimension());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = g[k] - g[U.size() - 1];
  return out;
}

double stationarity_residual(const FamilyChart& chart, std::span<const double> t) {
  auto gf = chart.grad_f(t);
  auto gd = chart.grad_d(t);
  if (gf.size() == 1) return std::abs(gd[0]);
  double worst = 0;
  for (std::size_t i = 0; i < gf.size(); ++i)
    for (std::size_t j = i + 1; j < gf.size(); ++j) worst = std::max(worst, std::abs(gf[i] * gd[j] - gf[j] * gd[i]));
  return worst;
}

double stationarity_residual(std::span<const double> t, const OptimizationProblem& p) {
  return stationarity_residual(FamilyChart::for_problem(p), t);
}

}  // namespace rank1
