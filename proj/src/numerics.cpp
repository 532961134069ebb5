#include "nevpick/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace nevpick {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_input: return "InvalidInput";
    case Errc::not_psd: return "NotPsd";
    case Errc::gram_mismatch: return "GramMismatch";
    case Errc::not_regular: return "NotRegular";
    case Errc::monomial_absent: return "MonomialAbsent";
    case Errc::gram_singular: return "GramSingular";
  }
  return "Unknown";
}

HermitianMatrix::HermitianMatrix(const CMatrix& raw) {
  if (raw.rows() != raw.cols()) {
    throw Error(Errc::invalid_input, "Hermitian matrix must be square");
  }
  m_ = (raw + raw.adjoint()) * 0.5;
}

double PsdReport::threshold() const { return tol * std::max(1.0, spectral_radius); }

Eigensystem hermitian_eigs(const HermitianMatrix& h) {
  if (!h.matrix().allFinite()) {
    throw Error(Errc::invalid_input, "non-finite matrix entry");
  }
  if (h.dim() == 0) return {RVector(0), CMatrix(0, 0)};
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw Error(Errc::invalid_input, "Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

PsdReport report_from(const RVector& values, double tol) {
  PsdReport r;
  r.tol = tol;
  if (values.size() == 0) {
    r.is_psd = true;
    return r;
  }
  r.min_eig = values.minCoeff();
  r.spectral_radius = values.cwiseAbs().maxCoeff();
  const double thr = r.threshold();
  r.rank = (values.array() > thr).count();
  r.is_psd = r.min_eig >= -thr;
  return r;
}

}  // namespace

PsdReport psd_report(const HermitianMatrix& h, double tol) {
  if (!(tol > 0.0)) throw Error(Errc::invalid_input, "tolerance must be positive");
  return report_from(hermitian_eigs(h).values, tol);
}

CMatrix psd_factor(const HermitianMatrix& h, double tol) {
  if (!(tol > 0.0)) throw Error(Errc::invalid_input, "tolerance must be positive");
  const Eigensystem es = hermitian_eigs(h);
  const PsdReport rep = report_from(es.values, tol);
  if (!rep.is_psd) {
    throw Error(Errc::not_psd, "matrix has eigenvalue " + std::to_string(rep.min_eig) +
                                   " below -" + std::to_string(rep.threshold()));
  }
  const double thr = rep.threshold();
  // Columns in descending eigenvalue order.
  CMatrix f(h.dim(), rep.rank);
  Eigen::Index col = 0;
  for (Eigen::Index k = es.values.size() - 1; k >= 0 && col < rep.rank; --k) {
    if (es.values[k] > thr) {
      f.col(col++) = es.vectors.col(k) * std::sqrt(es.values[k]);
    }
  }
  return f;
}

CMatrix partial_isometry_extend(const CMatrix& domain, const CMatrix& range, double tol) {
  if (domain.cols() != range.cols()) {
    throw Error(Errc::gram_mismatch, "domain and range lists differ in length");
  }
  if (!(tol > 0.0)) throw Error(Errc::invalid_input, "tolerance must be positive");
  const Eigen::Index count = domain.cols();
  const Eigen::Index d1 = domain.rows();
  const Eigen::Index d2 = range.rows();
  if (count == 0) return CMatrix::Zero(d2, d1);

  double max_norm2 = 0.0;
  for (Eigen::Index j = 0; j < count; ++j) {
    max_norm2 = std::max({max_norm2, domain.col(j).squaredNorm(), range.col(j).squaredNorm()});
  }
  const double scale = std::max(1.0, max_norm2);
  const CMatrix gram_gap = domain.adjoint() * domain - range.adjoint() * range;
  const double gap = max_abs(gram_gap);
  if (!(gap <= tol * scale)) {
    throw Error(Errc::gram_mismatch, "Gram matrices differ by " + std::to_string(gap) +
                                         " (allowed " + std::to_string(tol * scale) + ")");
  }

  // Pivoted Gram-Schmidt.  residual.col(j) == domain * coeff.col(j) throughout.
  CMatrix residual = domain;
  CMatrix coeff = CMatrix::Identity(count, count);
  std::vector<bool> used(static_cast<std::size_t>(count), false);
  const double pivot_floor = tol * std::sqrt(max_norm2);
  CMatrix basis(d1, 0);
  CMatrix basis_coeff(count, 0);

  for (Eigen::Index step = 0; step < std::min(count, d1); ++step) {
    Eigen::Index pivot = -1;
    double best = -1.0;
    for (Eigen::Index j = 0; j < count; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      const double nrm = residual.col(j).norm();
      if (nrm > best) {
        best = nrm;
        pivot = j;
      }
    }
    if (pivot < 0 || !(best > pivot_floor)) break;
    used[static_cast<std::size_t>(pivot)] = true;

    CVector q = residual.col(pivot);
    CVector t = coeff.col(pivot);
    if (basis.cols() > 0) {
      const CVector proj = basis.adjoint() * q;
      q -= basis * proj;
      t -= basis_coeff * proj;
    }
    const double nrm = q.norm();
    if (!(nrm > pivot_floor)) continue;
    q /= nrm;
    t /= nrm;

    for (Eigen::Index j = 0; j < count; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      const cplx proj = q.dot(residual.col(j));
      residual.col(j) -= proj * q;
      coeff.col(j) -= proj * t;
    }
    basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
    basis.col(basis.cols() - 1) = q;
    basis_coeff.conservativeResize(Eigen::NoChange, basis_coeff.cols() + 1);
    basis_coeff.col(basis_coeff.cols() - 1) = t;
  }

  const CMatrix images = range * basis_coeff;
  CMatrix u = images * basis.adjoint();

  Eigen::JacobiSVD<CMatrix> svd(u, Eigen::ComputeThinU | Eigen::ComputeThinV);
  RVector sigma = svd.singularValues();
  if (sigma.size() > 0 && sigma.maxCoeff() > 1.0) {
    sigma = sigma.cwiseMin(1.0);
    u = svd.matrixU() * sigma.asDiagonal() * svd.matrixV().adjoint();
  }
  return u;
}

double spectral_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  return svd.singularValues()(0);
}

double max_abs(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

}  // namespace nevpick
