#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rank1/complete.hpp"
#include "rank1/model.hpp"

namespace rank1 {

// Objective on the full m x n completion together with its gradient.
struct Objective {
  std::function<double(const Eigen::MatrixXd&)> value;
  std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)> gradient;
};

/// Frobenius distance to target.
Objective euclidean_distance(Eigen::MatrixXd target);

enum class Sense { Min, Max };

struct OptimizationProblem {
  PartialMatrix M;
  std::optional<Eigen::MatrixXd> target;  // uniform 1/(mn) when absent
  Sense sense = Sense::Min;
  std::size_t restarts = 64;
  std::uint64_t seed = 0;
  double tolerance = 1e-10;
  std::optional<Objective> objective;  // Euclidean distance to target when absent

  explicit OptimizationProblem(PartialMatrix m) : M(std::move(m)) {}
  Eigen::MatrixXd target_matrix() const;
  Objective resolved_objective() const;
};

struct Candidate {
  RankOneFactorization completion;
  double objective = 0;
  double stationarity = 0;
  bool converged = false;
};

struct OptimizationResult {
  RankOneFactorization best;
  double objective = 0;
  std::vector<Candidate> candidates;  // distinct points, best first

  std::size_t stationary_count() const;
};

/// Throws NoCompletions, or DidNotConverge when no local search converged.
OptimizationResult optimize_distance(const OptimizationProblem& p);

// Coordinates on a family branch without free vertices: block masses
// U_k = U*_k + t_k for k < s - 1 and U_s = U*_s - sum t, with U* = sqrt(b)/S
// and column masses V = b / U.
class FamilyChart {
 public:
  FamilyChart(const ContractedInstance& branch, Objective objective);
  /// Chart on the first branch of p.M without free vertices. Throws
  /// NotAFamily when there is none.
  static FamilyChart for_problem(const OptimizationProblem& p);

  std::size_t dimension() const { return base_.size() - 1; }
  std::vector<double> masses(std::span<const double> t) const;
  /// t of the given block masses.
  std::vector<double> coordinates(std::span<const double> U) const;
  double f(std::span<const double> t) const;
  std::vector<double> grad_f(std::span<const double> t) const;
  double d(std::span<const double> t) const;
  std::vector<double> grad_d(std::span<const double> t) const;
  Eigen::MatrixXd matrix(std::span<const double> t) const;
  const ContractedInstance& branch() const { return branch_; }

 private:
  ContractedInstance branch_;
  Objective objective_;
  std::vector<double> b_;
  std::vector<double> base_;
};

/// Largest absolute 2x2 minor of the matrix with rows grad f and grad d; the
/// absolute derivative of d when the chart has one coordinate.
double stationarity_residual(const FamilyChart& chart, std::span<const double> t);
double stationarity_residual(std::span<const double> t, const OptimizationProblem& p);

}  // namespace rank1
