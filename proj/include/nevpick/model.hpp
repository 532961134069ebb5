#pragma once

#include <vector>

#include "nevpick/assembly.hpp"
#include "nevpick/kernels.hpp"
#include "nevpick/numerics.hpp"
#include "nevpick/pick.hpp"

namespace nevpick {

inline constexpr double kDefaultCondTol = 1e-10;

/// G(i, j) = k(z_i, z_j), the Gram matrix of the kernel functions k(., z_j).
HermitianMatrix gram(const DiagonalKernel& kernel, const std::vector<BallPoint>& nodes,
                     assembly::Exec exec = assembly::Exec::parallel);

/// Span of k(., z_i) e_a, i < m, a < coeff_dim, indexed node-major.  The
/// coordinate vector c stands for sum_i c_i k(., z_i); its norm is c* G c.
struct NodeSpanModel {
  DiagonalKernel kernel;
  std::vector<BallPoint> nodes;
  Eigen::Index coeff_dim = 1;
  HermitianMatrix gram;
  CMatrix chol;  // lower triangular, gram = chol chol*

  Eigen::Index m() const noexcept { return static_cast<Eigen::Index>(nodes.size()); }
  int n() const noexcept { return static_cast<int>(nodes.front().dim()); }
};

/// Throws Errc::gram_singular unless min_eig(G) > cond_tol * max(1, |G|).
NodeSpanModel build_model(const DiagonalKernel& kernel, std::vector<BallPoint> nodes,
                          Eigen::Index coeff_dim = 1, double cond_tol = kDefaultCondTol);

/// As build_model, but a singular Gram matrix is accepted: chol is then an
/// m x m factor from psd_factor whose trailing columns vanish.  Only
/// psi_node is meaningful on such a model.
NodeSpanModel build_factor_model(const DiagonalKernel& kernel, std::vector<BallPoint> nodes,
                                 Eigen::Index coeff_dim = 1, double cond_tol = kDefaultCondTol);

/// Matrix of P_Q M_{z_l}|_Q in the kernel-function basis: G^{-1} diag(z_{., l}) G.
CMatrix compressed_shift(const NodeSpanModel& model, int l);

/// The same operator in the orthonormal coordinates c -> chol* c, which
/// reduces to chol^{-1} diag(z_{., l}) chol.
CMatrix orthonormal_shift(const NodeSpanModel& model, int l);

/// min_eig(I - sum_l S_l S_l^*) over the orthonormal shifts.
double row_contraction_min_eig(const NodeSpanModel& model);

/// X : Q_2 -> Q_1, X k(., z_i) eta = k_1(., z_i) W_i^* eta, in kernel bases.
struct IntertwinerModel {
  CMatrix x_mat;  // (m p) x (m q), block-diagonal with blocks W_i^*
  NodeSpanModel source;  // over k, coefficient space C^q
  NodeSpanModel dest;    // over k_1, coefficient space C^p
  /// (G_k (x) I_q) - X* (G_1 (x) I_p) X; PSD iff ||X|| <= 1.
  HermitianMatrix contraction_gap;
};

IntertwinerModel intertwiner_X(const InterpolationProblem& problem,
                               double cond_tol = kDefaultCondTol);

struct DilationResiduals {
  /// max_ij |k_1(z_i, z_j) ktilde(z_i, z_j) - k(z_i, z_j)|
  double isometry = 0.0;
  /// Largest ||Pi S_l^* - (S'_l)^* Pi|| over l in orthonormal coordinates,
  /// S_l the shift on span k(., z_i) and S'_l the shift on span
  /// k_1(., z_i) (x) ktilde(., z_i); relative to max(1, ||Pi|| ||S_l||).
  double intertwining = 0.0;
};

/// Pi_k(k(., z_i) eta) = k_1(., z_i) (x) ktilde(., z_i) (x) eta restricted
/// to the node span.  Throws Errc::not_regular for non-regular kernels.
DilationResiduals dilation_check(const DiagonalKernel& kernel, const std::vector<BallPoint>& nodes,
                                 double cond_tol = kDefaultCondTol);
DilationResiduals dilation_check(const InterpolationProblem& problem,
                                 double cond_tol = kDefaultCondTol);

/// Evaluation of the factor multiplier on the node span of H_ktilde:
/// kappa(z)^T (chol*)^+ with kappa(z)_j = ktilde(z, z_j).  Row i of chol
/// is the value at z_i.
Eigen::RowVectorXcd psi_node(const NodeSpanModel& ktilde_model, const BallPoint& z);

struct FactorizationCheck {
  double max_residual = 0.0;
  /// Bound on sum_{j > d} b_j rho^j, rho = max |<z, w>|.
  double tail_bound = 0.0;
  /// tail_bound / (1 - rho), which bounds the residual of k itself.
  double residual_bound = 0.0;
  std::size_t basis_size = 0;
};

/// Checks k(z, w) = Psi_d(z) Psi_d(w)^* / (1 - <z, w>) with Psi_d built from
/// the orthonormal monomials e_alpha = z^alpha / ||z^alpha||, |alpha| <= d,
/// of H_ktilde.
FactorizationCheck verify_kernel_factorization(
    const DiagonalKernel& kernel, int degree,
    const std::vector<std::pair<BallPoint, BallPoint>>& pairs);

}  // namespace nevpick
