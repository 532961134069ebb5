#include "nevpick/lifter.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace nevpick {

LurkingData lurking_data(const InterpolationProblem& problem, const FeasibilityReport& report,
                         double cond_tol) {
  const int n = problem.n();
  const Eigen::Index m = problem.m();
  const Eigen::Index p = problem.p();
  const Eigen::Index q = problem.q();

  const CMatrix f = psd_factor(report.pick, report.report.tol);
  const Eigen::Index r = f.cols();
  NodeSpanModel kt = build_factor_model(problem.ktilde(), problem.nodes(), q, cond_tol);
  // h_(i,a) = conj(row (i,a) of F), psi_i = conj(row i of chol)
  CMatrix h = f.adjoint();
  const CMatrix psi = kt.chol.adjoint();

  CMatrix domain = CMatrix::Zero(n * r + m * q, m * q);
  CMatrix range = CMatrix::Zero(r + p, m * q);
  for (Eigen::Index i = 0; i < m; ++i) {
    const BallPoint& zi = problem.node(i);
    const CMatrix w_adj = problem.target(i).adjoint();
    for (Eigen::Index a = 0; a < q; ++a) {
      const Eigen::Index idx = i * q + a;
      for (int l = 0; l < n; ++l) {
        domain.block(l * r, idx, r, 1) = std::conj(zi[static_cast<std::size_t>(l)]) * h.col(idx);
      }
      for (Eigen::Index j = 0; j < m; ++j) domain(n * r + j * q + a, idx) = psi(j, i);
      range.block(0, idx, r, 1) = h.col(idx);
      range.block(r, idx, p, 1) = w_adj.col(a);
    }
  }
  return {r, std::move(h), std::move(domain), std::move(range), std::move(kt)};
}

CMatrix Colligation::packed() const {
  CMatrix u(a.rows() + c.rows(), a.cols() + b.cols());
  u << a, b, c, d;
  return u;
}

Colligation build_colligation(const LurkingData& data, int n, Eigen::Index p, double gram_tol) {
  const CMatrix u = partial_isometry_extend(data.domain, data.range, gram_tol);
  const Eigen::Index r = data.rank;
  const Eigen::Index nr = n * r;
  const Eigen::Index mq = data.domain.rows() - nr;
  return {u.block(0, 0, r, nr), u.block(0, nr, r, mq), u.block(r, 0, p, nr), u.block(r, nr, p, mq)};
}

RealizedMultiplier realize(const InterpolationProblem& problem, const FeasibilityReport& report,
                           double tol) {
  LurkingData data = lurking_data(problem, report);
  Colligation coll = build_colligation(data, problem.n(), problem.p(), 10.0 * tol);
  MultiplierDims dims{problem.n(), problem.m(), problem.p(), problem.q(), data.rank};
  return {std::move(coll), std::move(data.ktilde_model), dims, problem_hash(problem)};
}

RealizedMultiplier solve(const InterpolationProblem& problem, double tol) {
  const FeasibilityReport report = check_feasible(problem, tol);
  if (!report.feasible()) {
    throw Error(Errc::not_psd, "Pick matrix is not positive semidefinite (min eigenvalue " +
                                   std::to_string(report.report.min_eig) + ")");
  }
  return realize(problem, report, tol);
}

namespace {

/// Sum_l zeta_l blk_l over the n column blocks of width r.
CMatrix stack_apply(const CMatrix& blocks, const std::vector<cplx>& zeta, Eigen::Index r) {
  CMatrix out = CMatrix::Zero(blocks.rows(), r);
  for (std::size_t l = 0; l < zeta.size(); ++l) {
    out += zeta[l] * blocks.block(0, static_cast<Eigen::Index>(l) * r, blocks.rows(), r);
  }
  return out;
}

std::vector<cplx> conj_coords(const BallPoint& z) {
  std::vector<cplx> out(z.dim());
  for (std::size_t l = 0; l < z.dim(); ++l) out[l] = std::conj(z[l]);
  return out;
}

void require_dim(const RealizedMultiplier& rm, const BallPoint& z) {
  if (static_cast<int>(z.dim()) != rm.dims.n) {
    throw Error(Errc::invalid_input, "evaluation point has wrong dimension");
  }
}

/// G(conj z) applied to the columns of input: D in + C E (I - A E)^{-1} B in.
CMatrix transfer_apply(const Colligation& u, const BallPoint& z, const CMatrix& input) {
  const Eigen::Index r = u.rank();
  CMatrix out = u.d * input;
  if (r == 0) return out;
  const std::vector<cplx> zeta = conj_coords(z);
  const CMatrix ae = stack_apply(u.a, zeta, r);
  const CMatrix ce = stack_apply(u.c, zeta, r);
  const CMatrix resolvent = CMatrix::Identity(r, r) - ae;
  const CMatrix x = resolvent.partialPivLu().solve(u.b * input);
  out += ce * x;
  return out;
}

}  // namespace

CMatrix evaluate_phi_tilde(const RealizedMultiplier& rm, const BallPoint& z) {
  require_dim(rm, z);
  const Eigen::Index mq = rm.colligation.b.cols();
  return transfer_apply(rm.colligation, z, CMatrix::Identity(mq, mq)).adjoint();
}

CMatrix evaluate_multiplier(const RealizedMultiplier& rm, const BallPoint& z) {
  require_dim(rm, z);
  const Eigen::Index m = rm.dims.m;
  const Eigen::Index q = rm.dims.q;
  const Eigen::RowVectorXcd psi = psi_node(rm.ktilde_model, z);
  // (psi (x) I_q)^*, an (m q) x q matrix
  CMatrix fold = CMatrix::Zero(m * q, q);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index a = 0; a < q; ++a) fold(j * q + a, a) = std::conj(psi[j]);
  }
  return transfer_apply(rm.colligation, z, fold).adjoint();
}

double resolvent_min_singular(const RealizedMultiplier& rm, const BallPoint& z) {
  require_dim(rm, z);
  const Eigen::Index r = rm.colligation.rank();
  if (r == 0) return 1.0;
  const CMatrix resolvent = CMatrix::Identity(r, r) - stack_apply(rm.colligation.a, conj_coords(z), r);
  Eigen::JacobiSVD<CMatrix> svd(resolvent);
  return svd.singularValues()(r - 1);
}

namespace {

double unit_uniform(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

double standard_normal(std::mt19937_64& gen) {
  // Box-Muller; 1 - u lies in (0, 1].
  const double u1 = 1.0 - unit_uniform(gen);
  const double u2 = unit_uniform(gen);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

std::vector<BallPoint> sample_ball(int n, int count, std::uint64_t seed, double radius) {
  if (n < 1) throw Error(Errc::invalid_input, "sample dimension must be >= 1");
  if (!(radius > 0.0 && radius < 1.0)) throw Error(Errc::invalid_input, "radius must lie in (0, 1)");
  if (count < 0) throw Error(Errc::invalid_input, "sample count must be >= 0");
  std::mt19937_64 gen(seed);
  std::vector<BallPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    std::vector<double> g(2 * static_cast<std::size_t>(n));
    double nrm2 = 0.0;
    do {
      nrm2 = 0.0;
      for (double& x : g) {
        x = standard_normal(gen);
        nrm2 += x * x;
      }
    } while (nrm2 == 0.0);
    const double rad = radius * std::pow(unit_uniform(gen), 1.0 / (2.0 * n)) / std::sqrt(nrm2);
    std::vector<cplx> c(static_cast<std::size_t>(n));
    for (std::size_t l = 0; l < c.size(); ++l) c[l] = cplx(g[2 * l], g[2 * l + 1]) * rad;
    out.emplace_back(std::move(c));
  }
  return out;
}

HermitianMatrix defect_matrix(const InterpolationProblem& problem, const RealizedMultiplier& rm,
                              const std::vector<BallPoint>& points, assembly::Exec exec) {
  const auto count = static_cast<Eigen::Index>(points.size());
  std::vector<CMatrix> phi(points.size());
  assembly::for_each_index(exec, count, [&](Eigen::Index s) {
    phi[static_cast<std::size_t>(s)] = evaluate_multiplier(rm, points[static_cast<std::size_t>(s)]);
  });
  return HermitianMatrix(assembly::fill_blocks(
      exec, count, problem.q(), [&](Eigen::Index s, Eigen::Index t, auto& blk) {
        const auto si = static_cast<std::size_t>(s);
        const auto ti = static_cast<std::size_t>(t);
        const cplx inner = herm_inner(points[si], points[ti]);
        const cplx kst = problem.kernel().eval_at(inner).value;
        blk = -(phi[si] * phi[ti].adjoint()) / (cplx(1.0) - inner);
        blk.diagonal().array() += kst;
      }));
}

VerificationReport verify_solution_at(const InterpolationProblem& problem,
                                      const RealizedMultiplier& rm,
                                      const std::vector<BallPoint>& points,
                                      const VerifyOptions& opts) {
  VerificationReport out;
  for (Eigen::Index i = 0; i < problem.m(); ++i) {
    const CMatrix diff = evaluate_multiplier(rm, problem.node(i)) - problem.target(i);
    out.node_residual = std::max(out.node_residual, spectral_norm(diff));
  }
  out.colligation_norm = rm.colligation.norm();
  const HermitianMatrix defect = defect_matrix(problem, rm, points);
  out.defect_dim = defect.dim();
  const PsdReport rep = psd_report(defect, opts.tol);
  out.defect_min_eig = rep.min_eig;
  out.defect_threshold = rep.threshold();
  out.nodes_ok = out.node_residual <= opts.node_tol;
  out.norm_ok = out.colligation_norm <= 1.0 + opts.norm_tol;
  out.defect_ok = rep.is_psd;
  return out;
}

VerificationReport verify_solution(const InterpolationProblem& problem,
                                   const RealizedMultiplier& rm, const VerifyOptions& opts) {
  return verify_solution_at(problem, rm, sample_ball(problem.n(), opts.samples, opts.seed, opts.radius),
                            opts);
}

}  // namespace nevpick
