#include "nevpick/model.hpp"

#include <cmath>
#include <limits>

namespace nevpick {

namespace {

CMatrix diag_coordinate(const std::vector<BallPoint>& nodes, int l) {
  CMatrix d = CMatrix::Zero(static_cast<Eigen::Index>(nodes.size()),
                            static_cast<Eigen::Index>(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = nodes[i][static_cast<std::size_t>(l)];
  }
  return d;
}

NodeSpanModel model_from_gram(const DiagonalKernel& kernel, std::vector<BallPoint> nodes,
                              Eigen::Index coeff_dim, HermitianMatrix g, double cond_tol) {
  if (nodes.empty()) throw Error(Errc::invalid_input, "node span model needs nodes");
  if (coeff_dim < 1) throw Error(Errc::invalid_input, "coefficient dimension must be >= 1");
  const PsdReport rep = psd_report(g, cond_tol);
  const double floor = cond_tol * std::max(1.0, rep.spectral_radius);
  if (!(rep.min_eig > floor)) {
    throw Error(Errc::gram_singular, "Gram matrix min eigenvalue " + std::to_string(rep.min_eig) +
                                         " not above " + std::to_string(floor) +
                                         " (nodes too close or kernel degenerate)");
  }
  Eigen::LLT<CMatrix> llt(g.matrix());
  if (llt.info() != Eigen::Success) {
    throw Error(Errc::gram_singular, "Cholesky factorization of the Gram matrix failed");
  }
  NodeSpanModel model{kernel, std::move(nodes), coeff_dim, std::move(g), CMatrix(llt.matrixL())};
  return model;
}

bool is_invertible_lower(const CMatrix& l) {
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    if (l(i, i) == cplx(0.0)) return false;
    for (Eigen::Index j = i + 1; j < l.cols(); ++j) {
      if (l(i, j) != cplx(0.0)) return false;
    }
  }
  return true;
}

void require_coordinate(const NodeSpanModel& model, int l) {
  if (l < 0 || l >= model.n()) throw Error(Errc::invalid_input, "coordinate index out of range");
}

}  // namespace

HermitianMatrix gram(const DiagonalKernel& kernel, const std::vector<BallPoint>& nodes,
                     assembly::Exec exec) {
  const auto m = static_cast<Eigen::Index>(nodes.size());
  return HermitianMatrix(
      assembly::fill_blocks(exec, m, 1, [&](Eigen::Index i, Eigen::Index j, auto& blk) {
        blk(0, 0) = kernel(nodes[static_cast<std::size_t>(i)], nodes[static_cast<std::size_t>(j)]);
      }));
}

NodeSpanModel build_model(const DiagonalKernel& kernel, std::vector<BallPoint> nodes,
                          Eigen::Index coeff_dim, double cond_tol) {
  HermitianMatrix g = gram(kernel, nodes);
  return model_from_gram(kernel, std::move(nodes), coeff_dim, std::move(g), cond_tol);
}

NodeSpanModel build_factor_model(const DiagonalKernel& kernel, std::vector<BallPoint> nodes,
                                 Eigen::Index coeff_dim, double cond_tol) {
  HermitianMatrix g = gram(kernel, nodes);
  try {
    return model_from_gram(kernel, nodes, coeff_dim, g, cond_tol);
  } catch (const Error& e) {
    if (e.code() != Errc::gram_singular) throw;
  }
  const CMatrix f = psd_factor(g, cond_tol);
  CMatrix padded = CMatrix::Zero(g.dim(), g.dim());
  padded.leftCols(f.cols()) = f;
  return NodeSpanModel{kernel, std::move(nodes), coeff_dim, std::move(g), std::move(padded)};
}

CMatrix compressed_shift(const NodeSpanModel& model, int l) {
  require_coordinate(model, l);
  const CMatrix& g = model.gram.matrix();
  const CMatrix rhs = diag_coordinate(model.nodes, l) * g;
  const auto lower = model.chol.triangularView<Eigen::Lower>();
  const CMatrix y = lower.solve(rhs);
  return lower.adjoint().solve(y);
}

CMatrix orthonormal_shift(const NodeSpanModel& model, int l) {
  require_coordinate(model, l);
  const CMatrix dl = diag_coordinate(model.nodes, l) * model.chol;
  return model.chol.triangularView<Eigen::Lower>().solve(dl);
}

double row_contraction_min_eig(const NodeSpanModel& model) {
  CMatrix defect = CMatrix::Identity(model.m(), model.m());
  for (int l = 0; l < model.n(); ++l) {
    const CMatrix s = orthonormal_shift(model, l);
    defect -= s * s.adjoint();
  }
  return hermitian_eigs(HermitianMatrix(defect)).values.minCoeff();
}

IntertwinerModel intertwiner_X(const InterpolationProblem& problem, double cond_tol) {
  const Eigen::Index m = problem.m();
  const Eigen::Index p = problem.p();
  const Eigen::Index q = problem.q();
  NodeSpanModel source = build_model(problem.kernel(), problem.nodes(), q, cond_tol);
  NodeSpanModel dest = build_model(drury_arveson(), problem.nodes(), p, cond_tol);

  CMatrix x = CMatrix::Zero(m * p, m * q);
  for (Eigen::Index i = 0; i < m; ++i) x.block(i * p, i * q, p, q) = problem.target(i).adjoint();

  const CMatrix& g2 = source.gram.matrix();
  const CMatrix& g1 = dest.gram.matrix();
  CMatrix g2_blocks = CMatrix::Zero(m * q, m * q);
  CMatrix g1_blocks = CMatrix::Zero(m * p, m * p);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      g2_blocks.block(i * q, j * q, q, q).diagonal().setConstant(g2(i, j));
      g1_blocks.block(i * p, j * p, p, p).diagonal().setConstant(g1(i, j));
    }
  }
  HermitianMatrix gap(g2_blocks - x.adjoint() * g1_blocks * x);
  return {std::move(x), std::move(source), std::move(dest), std::move(gap)};
}

DilationResiduals dilation_check(const DiagonalKernel& kernel, const std::vector<BallPoint>& nodes,
                                 double cond_tol) {
  const DiagonalKernel ktilde = factor_regular(kernel);
  const HermitianMatrix gk = gram(kernel, nodes);
  const HermitianMatrix g1 = gram(drury_arveson(), nodes);
  const HermitianMatrix gt = gram(ktilde, nodes);
  HermitianMatrix gp(g1.matrix().cwiseProduct(gt.matrix()));

  DilationResiduals out;
  out.isometry = max_abs(gp.matrix() - gk.matrix());

  const NodeSpanModel mk = model_from_gram(kernel, nodes, 1, gk, cond_tol);
  const NodeSpanModel mp = model_from_gram(kernel, nodes, 1, gp, cond_tol);
  // Pi in orthonormal coordinates: chol_p^* (chol_k^*)^{-1}.
  const CMatrix pi = mk.chol.triangularView<Eigen::Lower>()
                         .solve(mp.chol)
                         .adjoint();
  const double pi_norm = spectral_norm(pi);
  for (int l = 0; l < mk.n(); ++l) {
    const CMatrix sk = orthonormal_shift(mk, l);
    const CMatrix sp = orthonormal_shift(mp, l);
    const CMatrix diff = pi * sk.adjoint() - sp.adjoint() * pi;
    const double scale = std::max(1.0, pi_norm * spectral_norm(sk));
    out.intertwining = std::max(out.intertwining, spectral_norm(diff) / scale);
  }
  return out;
}

DilationResiduals dilation_check(const InterpolationProblem& problem, double cond_tol) {
  return dilation_check(problem.kernel(), problem.nodes(), cond_tol);
}

Eigen::RowVectorXcd psi_node(const NodeSpanModel& ktilde_model, const BallPoint& z) {
  const Eigen::Index m = ktilde_model.m();
  CVector kappa(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    kappa[j] = ktilde_model.kernel(z, ktilde_model.nodes[static_cast<std::size_t>(j)]);
  }
  // r = kappa^T (L^*)^+  <=>  conj(L) r^T = kappa, minimum-norm when L is singular
  const CMatrix lconj = ktilde_model.chol.conjugate();
  if (is_invertible_lower(lconj)) return lconj.triangularView<Eigen::Lower>().solve(kappa).transpose();
  return Eigen::CompleteOrthogonalDecomposition<CMatrix>(lconj).solve(kappa).transpose();
}

namespace {

double factor_tail_bound(const DiagonalKernel& ktilde, int degree, double rho) {
  if (rho == 0.0) return 0.0;
  if (const auto mu = ktilde.closed_form()) {
    if (*mu == 0.0) return 0.0;
    const double next = ktilde.coefficient(degree + 1);
    const double ratio = std::max(1.0, (*mu + degree + 1) / (degree + 2));
    if (!(rho * ratio < 1.0)) return std::numeric_limits<double>::infinity();
    return next * std::pow(rho, degree + 1) / (1.0 - rho * ratio);
  }
  double tail = 0.0;
  for (int j = degree + 1; j <= ktilde.truncation(); ++j) tail += ktilde.coefficient(j) * std::pow(rho, j);
  return tail;
}

}  // namespace

FactorizationCheck verify_kernel_factorization(
    const DiagonalKernel& kernel, int degree,
    const std::vector<std::pair<BallPoint, BallPoint>>& pairs) {
  if (degree < 0) throw Error(Errc::invalid_input, "truncation degree must be >= 0");
  const DiagonalKernel ktilde = factor_regular(kernel);
  FactorizationCheck out;
  if (pairs.empty()) return out;
  const int n = static_cast<int>(pairs.front().first.dim());

  std::vector<std::vector<int>> basis;
  std::vector<double> inv_norm;
  for (auto& alpha : multi_indices_up_to(n, degree)) {
    int total = 0;
    for (int a : alpha) total += a;
    if (!(ktilde.coefficient(total) > 0.0)) continue;
    inv_norm.push_back(1.0 / std::sqrt(monomial_norm(ktilde, alpha)));
    basis.push_back(std::move(alpha));
  }
  out.basis_size = basis.size();

  double rho = 0.0;
  for (const auto& [z, w] : pairs) {
    const cplx t = herm_inner(z, w);
    rho = std::max(rho, std::abs(t));
    cplx psi_psi = 0.0;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const cplx ez = monomial(z, basis[b]) * inv_norm[b];
      const cplx ew = monomial(w, basis[b]) * inv_norm[b];
      psi_psi += ez * std::conj(ew);
    }
    const cplx lhs = kernel.eval_at(t).value;
    out.max_residual = std::max(out.max_residual, std::abs(lhs - psi_psi / (cplx(1.0) - t)));
  }
  out.tail_bound = factor_tail_bound(ktilde, degree, rho);
  out.residual_bound = out.tail_bound / (1.0 - rho);
  return out;
}

}  // namespace nevpick
