#pragma once

#include "nevpick/types.hpp"

namespace nevpick {

/// Square complex matrix kept exactly Hermitian: the constructor replaces
/// the input H by (H + H*)/2.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const CMatrix& raw);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  const CMatrix& matrix() const noexcept { return m_; }
  cplx operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

 private:
  CMatrix m_;
};

struct Eigensystem {
  RVector values;   // ascending
  CMatrix vectors;  // column k pairs with values[k]
};

struct PsdReport {
  double min_eig = 0.0;
  double spectral_radius = 0.0;
  Eigen::Index rank = 0;
  bool is_psd = false;
  double tol = 0.0;

  /// tol * max(1, spectral_radius)
  double threshold() const;
};

Eigensystem hermitian_eigs(const HermitianMatrix& h);

PsdReport psd_report(const HermitianMatrix& h, double tol);

/// Low-rank factor F (dim x rank) with H ~= F F*.  Eigenvalues in
/// [-threshold, threshold] are discarded, so with h_i := conj(row i of F)
/// we get H(i, j) = <h_j, h_i>.  Throws Errc::not_psd when
/// min_eig < -threshold.
CMatrix psd_factor(const HermitianMatrix& h, double tol);

/// Extends the map domain.col(j) -> range.col(j) to a contraction
/// U : C^{d1} -> C^{d2}.  U is the isometry defined on span(domain) and
/// zero on its orthogonal complement, with singular values clamped to 1.
///
/// The columns must be Gram-consistent: |domain* domain - range* range|
/// <= tol * scale entrywise, where scale = max(1, largest squared column
/// norm).  Otherwise Errc::gram_mismatch is thrown.  The orthonormal basis
/// of span(domain) is built by pivoted Gram-Schmidt (largest remaining
/// norm first, lowest index on ties); columns whose residual falls below
/// tol * (largest column norm) are dropped.
CMatrix partial_isometry_extend(const CMatrix& domain, const CMatrix& range, double tol);

double spectral_norm(const CMatrix& a);

/// max_ij |a(i, j)|
double max_abs(const CMatrix& a);

}  // namespace nevpick
