#pragma once

#include <string>
#include <vector>

#include "nevpick/assembly.hpp"
#include "nevpick/kernels.hpp"
#include "nevpick/numerics.hpp"

namespace nevpick {

inline constexpr double kDefaultTol = 1e-9;

/// Find Phi with Phi(z_i) = W_i, Phi a contractive multiplier from
/// H^2_n (x) C^p into H_k (x) C^q.
///
/// Validated on construction: n >= 1, m >= 1, every node in the open ball
/// with n coordinates, nodes pairwise distinct (max coordinate distance
/// > 1e-12), all targets q x p with operator norm < 1, kernel regular.
class InterpolationProblem {
 public:
  InterpolationProblem(int n, DiagonalKernel kernel, std::vector<BallPoint> nodes,
                       std::vector<CMatrix> targets);

  int n() const noexcept { return n_; }
  Eigen::Index m() const noexcept { return static_cast<Eigen::Index>(nodes_.size()); }
  Eigen::Index p() const noexcept { return targets_.front().cols(); }
  Eigen::Index q() const noexcept { return targets_.front().rows(); }

  const DiagonalKernel& kernel() const noexcept { return kernel_; }
  const DiagonalKernel& ktilde() const noexcept { return ktilde_; }
  const std::vector<BallPoint>& nodes() const noexcept { return nodes_; }
  const std::vector<CMatrix>& targets() const noexcept { return targets_; }
  const BallPoint& node(Eigen::Index i) const { return nodes_[static_cast<std::size_t>(i)]; }
  const CMatrix& target(Eigen::Index i) const { return targets_[static_cast<std::size_t>(i)]; }

 private:
  int n_;
  DiagonalKernel kernel_;
  DiagonalKernel ktilde_;
  std::vector<BallPoint> nodes_;
  std::vector<CMatrix> targets_;
};

inline constexpr const char* kPickBlockOrder =
    "node-major: row q*i + a, column q*j + b holds entry (a, b) of block (i, j), 0-based";

struct FeasibilityReport {
  HermitianMatrix pick;
  PsdReport report;
  std::string block_order = kPickBlockOrder;

  bool feasible() const noexcept { return report.is_psd; }
};

/// Pick matrix before symmetrization; block (i, j) is
/// k(z_i, z_j) I_q - W_i W_j^* / (1 - <z_i, z_j>).
CMatrix pick_blocks(const InterpolationProblem& problem,
                    assembly::Exec exec = assembly::Exec::parallel);

HermitianMatrix assemble_pick(const InterpolationProblem& problem,
                              assembly::Exec exec = assembly::Exec::parallel);

FeasibilityReport check_feasible(const InterpolationProblem& problem, double tol = kDefaultTol);

/// 16 hex digits of FNV-1a over the exact bit patterns of the problem data
/// (dimensions, kernel, nodes, targets).
std::string problem_hash(const InterpolationProblem& problem);

}  // namespace nevpick
