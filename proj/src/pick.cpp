#include "nevpick/pick.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>

namespace nevpick {

InterpolationProblem::InterpolationProblem(int n, DiagonalKernel kernel,
                                           std::vector<BallPoint> nodes,
                                           std::vector<CMatrix> targets)
    : n_(n),
      kernel_(std::move(kernel)),
      ktilde_(DiagonalKernel::power_unchecked(0.0)),
      nodes_(std::move(nodes)),
      targets_(std::move(targets)) {
  if (n_ < 1) throw Error(Errc::invalid_input, "ambient dimension n must be >= 1");
  if (nodes_.empty()) throw Error(Errc::invalid_input, "need at least one node");
  if (nodes_.size() != targets_.size()) {
    throw Error(Errc::invalid_input, "node and target counts differ");
  }
  for (const BallPoint& z : nodes_) {
    if (static_cast<int>(z.dim()) != n_) {
      throw Error(Errc::invalid_input, "node with wrong number of coordinates");
    }
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes_.size(); ++j) {
      double dist = 0.0;
      for (int l = 0; l < n_; ++l) dist = std::max(dist, std::abs(nodes_[i][l] - nodes_[j][l]));
      if (!(dist > 1e-12)) {
        throw Error(Errc::invalid_input,
                    "nodes " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      }
    }
  }
  const Eigen::Index q = targets_.front().rows();
  const Eigen::Index p = targets_.front().cols();
  if (q < 1 || p < 1) throw Error(Errc::invalid_input, "targets must be nonempty matrices");
  for (const CMatrix& w : targets_) {
    if (w.rows() != q || w.cols() != p) {
      throw Error(Errc::invalid_input, "targets must share one q x p shape");
    }
    if (!w.allFinite()) throw Error(Errc::invalid_input, "non-finite target entry");
    const double nrm = spectral_norm(w);
    if (!(nrm < 1.0)) {
      throw Error(Errc::invalid_input,
                  "target norm " + std::to_string(nrm) + " not in the open unit ball");
    }
  }
  try {
    ktilde_ = factor_regular(kernel_);
  } catch (const Error& e) {
    throw Error(Errc::invalid_input, std::string("kernel is not regular: ") + e.what());
  }
}

CMatrix pick_blocks(const InterpolationProblem& problem, assembly::Exec exec) {
  const Eigen::Index q = problem.q();
  return assembly::fill_blocks(exec, problem.m(), q, [&](Eigen::Index i, Eigen::Index j, auto& blk) {
    const BallPoint& zi = problem.node(i);
    const BallPoint& zj = problem.node(j);
    const cplx t = herm_inner(zi, zj);
    const cplx kij = problem.kernel().eval_at(t).value;
    blk = -(problem.target(i) * problem.target(j).adjoint()) / (cplx(1.0) - t);
    blk.diagonal().array() += kij;
  });
}

HermitianMatrix assemble_pick(const InterpolationProblem& problem, assembly::Exec exec) {
  return HermitianMatrix(pick_blocks(problem, exec));
}

FeasibilityReport check_feasible(const InterpolationProblem& problem, double tol) {
  FeasibilityReport out;
  out.pick = assemble_pick(problem);
  out.report = psd_report(out.pick, tol);
  return out;
}

namespace {

class Fnv1a {
 public:
  void add_u64(std::uint64_t v) {
    for (int byte = 0; byte < 8; ++byte) {
      state_ ^= (v >> (8 * byte)) & 0xffU;
      state_ *= 0x100000001b3ULL;
    }
  }
  void add(double v) { add_u64(std::bit_cast<std::uint64_t>(v)); }
  void add(cplx v) {
    add(v.real());
    add(v.imag());
  }
  std::uint64_t value() const { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::string problem_hash(const InterpolationProblem& problem) {
  Fnv1a h;
  h.add_u64(static_cast<std::uint64_t>(problem.n()));
  h.add_u64(static_cast<std::uint64_t>(problem.m()));
  h.add_u64(static_cast<std::uint64_t>(problem.q()));
  h.add_u64(static_cast<std::uint64_t>(problem.p()));
  const DiagonalKernel& k = problem.kernel();
  if (k.closed_form()) {
    h.add_u64(1);
    h.add(*k.closed_form());
  } else {
    h.add_u64(2);
    h.add_u64(static_cast<std::uint64_t>(k.truncation()));
    for (double a : k.coefficients(k.truncation())) h.add(a);
  }
  for (const BallPoint& z : problem.nodes()) {
    for (const cplx& c : z.coords()) h.add(c);
  }
  for (const CMatrix& w : problem.targets()) {
    for (Eigen::Index a = 0; a < w.rows(); ++a) {
      for (Eigen::Index b = 0; b < w.cols(); ++b) h.add(w(a, b));
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h.value()));
  return buf;
}

}  // namespace nevpick
