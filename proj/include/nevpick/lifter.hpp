#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nevpick/model.hpp"
#include "nevpick/pick.hpp"

namespace nevpick {

/// Gram-matched vector families taken from a PSD Pick matrix.  Column
/// q*i + a of each matrix belongs to index (i, a).
struct LurkingData {
  Eigen::Index rank = 0;
  CMatrix h;       // r x (m q), columns h_(i,a)
  CMatrix domain;  // (n r + m q) x (m q), columns (conj(z_i) (x) h_(i,a), psi_i (x) e_a)
  CMatrix range;   // (r + p) x (m q), columns (h_(i,a), W_i^* e_a)
  NodeSpanModel ktilde_model;
};

/// Throws Errc::not_psd for infeasible problems.
LurkingData lurking_data(const InterpolationProblem& problem, const FeasibilityReport& report,
                         double cond_tol = kDefaultCondTol);

/// U = [A B; C D] : C^{n r} (+) C^{m q} -> C^r (+) C^p.
struct Colligation {
  CMatrix a, b, c, d;

  Eigen::Index rank() const noexcept { return a.rows(); }
  CMatrix packed() const;
  double norm() const { return spectral_norm(packed()); }
};

/// Contractive extension of the lurking isometry; gram_tol is passed to
/// partial_isometry_extend.
Colligation build_colligation(const LurkingData& data, int n, Eigen::Index p,
                              double gram_tol = 1e-8);

struct MultiplierDims {
  int n = 0;
  Eigen::Index m = 0, p = 0, q = 0, r = 0;
};

/// Phi(z) = (psi(z) (x) I_q) Phitilde(z) where Phitilde(z) = G(conj z)^* and
/// G(zeta) = D + C E(zeta) (I - A E(zeta))^{-1} B, E(zeta) x = (zeta_1 x, ..,
/// zeta_n x).  The conjugate variable makes the node equations read
/// W_i^* = G(conj z_i) (psi_i (x) I_q).
struct RealizedMultiplier {
  Colligation colligation;
  NodeSpanModel ktilde_model;
  MultiplierDims dims;
  std::string problem_hash;
};

/// Full pipeline: Pick PSD test, lurking data, colligation.  Throws
/// Errc::not_psd for infeasible data.
RealizedMultiplier solve(const InterpolationProblem& problem, double tol = kDefaultTol);

RealizedMultiplier realize(const InterpolationProblem& problem, const FeasibilityReport& report,
                           double tol = kDefaultTol);

/// (m q) x p
CMatrix evaluate_phi_tilde(const RealizedMultiplier& rm, const BallPoint& z);

/// q x p.  Folds psi(z) into the input side of the transfer function
/// before solving; agrees with (psi(z) (x) I_q) evaluate_phi_tilde(rm, z).
CMatrix evaluate_multiplier(const RealizedMultiplier& rm, const BallPoint& z);

/// Smallest singular value of I - A E(conj z).
double resolvent_min_singular(const RealizedMultiplier& rm, const BallPoint& z);

struct VerifyOptions {
  int samples = 40;
  std::uint64_t seed = 42;
  double radius = 0.8;
  double tol = kDefaultTol;
  double node_tol = 1e-6;
  double norm_tol = 1e-8;
};

struct VerificationReport {
  double node_residual = 0.0;
  double colligation_norm = 0.0;
  double defect_min_eig = 0.0;
  double defect_threshold = 0.0;
  Eigen::Index defect_dim = 0;
  bool nodes_ok = false;
  bool norm_ok = false;
  bool defect_ok = false;

  bool passed() const noexcept { return nodes_ok && norm_ok && defect_ok; }
};

/// Deterministic sample points, uniform in the ball of C^n of the given
/// radius, drawn sequentially from a 64-bit Mersenne Twister seeded by seed.
std::vector<BallPoint> sample_ball(int n, int count, std::uint64_t seed, double radius);

/// Blocks k(u_s, u_t) I_q - Phi(u_s) Phi(u_t)^* / (1 - <u_s, u_t>).
HermitianMatrix defect_matrix(const InterpolationProblem& problem, const RealizedMultiplier& rm,
                              const std::vector<BallPoint>& points,
                              assembly::Exec exec = assembly::Exec::parallel);

VerificationReport verify_solution(const InterpolationProblem& problem,
                                   const RealizedMultiplier& rm, const VerifyOptions& opts = {});

/// Same checks with caller-chosen defect sample points.
VerificationReport verify_solution_at(const InterpolationProblem& problem,
                                      const RealizedMultiplier& rm,
                                      const std::vector<BallPoint>& points,
                                      const VerifyOptions& opts = {});

}  // namespace nevpick
