#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nevpick/types.hpp"

namespace nevpick {

/// A point of the open unit ball of C^n.
class BallPoint {
 public:
  explicit BallPoint(std::vector<cplx> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  const std::vector<cplx>& coords() const noexcept { return coords_; }
  cplx operator[](std::size_t l) const { return coords_[l]; }
  double norm2() const;

  BallPoint conj() const;

 private:
  std::vector<cplx> coords_;
};

/// sum_l z_l * conj(w_l)
cplx herm_inner(const BallPoint& z, const BallPoint& w);

struct KernelValue {
  cplx value;
  double tail = 0.0;  // 0 for closed forms
};

/// Unitarily invariant kernel k(z, w) = sum_j a_j <z, w>^j with a_0 = 1.
///
/// Power kernels (1 - <z, w>)^{-lambda} keep their closed form and compute
/// coefficients from a_j = a_{j-1} (lambda + j - 1) / j.  Coefficient
/// kernels hold a_0..a_D; terms beyond D are treated as unknown, and
/// evaluation reports a_D |t|^{D+1} / (1 - |t|) as the tail estimate.
class DiagonalKernel {
 public:
  /// The constant kernel 1.
  DiagonalKernel() : lambda_(0.0) {}

  /// lambda > 0
  static DiagonalKernel power(double lambda);
  /// Like power() but admits lambda == 0 (the constant kernel 1), which is
  /// what factoring the Drury-Arveson kernel produces.
  static DiagonalKernel power_unchecked(double lambda);
  /// a_0 must equal 1 (within 1e-12), all a_j >= 0; uses a_0..a_truncation.
  static DiagonalKernel from_coefficients(std::vector<double> coefficients,
                                          std::optional<int> truncation = std::nullopt);

  std::optional<double> closed_form() const noexcept { return lambda_; }
  /// Degree D of a coefficient kernel; 0 for power kernels.
  int truncation() const noexcept { return truncation_; }

  /// a_j; zero beyond the truncation of a coefficient kernel.
  double coefficient(int j) const;
  std::vector<double> coefficients(int degree) const;

  KernelValue eval(const BallPoint& z, const BallPoint& w) const;
  cplx operator()(const BallPoint& z, const BallPoint& w) const { return eval(z, w).value; }
  /// Evaluates at t = <z, w> directly.
  KernelValue eval_at(cplx t) const;

  bool operator==(const DiagonalKernel&) const = default;

 private:
  std::optional<double> lambda_;
  std::vector<double> coeffs_;
  int truncation_ = 0;
};

/// The Drury-Arveson kernel 1 / (1 - <z, w>).
DiagonalKernel drury_arveson();

/// b_0 = a_0, b_j = a_j - a_{j-1} for j <= degree: the coefficients of
/// k(z, w) (1 - <z, w>).  No clamping.
std::vector<double> differenced_coefficients(const DiagonalKernel& k, int degree);

/// The factor ktilde with k = k_1 * ktilde.  Throws Errc::not_regular when
/// some differenced coefficient is below -1e-12; smaller negatives are
/// clamped to 0.  Power kernels map to power kernels of weight lambda - 1.
DiagonalKernel factor_regular(const DiagonalKernel& k);

bool is_regular(const DiagonalKernel& k);

/// Squared norm ||z^alpha||^2 = alpha! / (|alpha|! a_{|alpha|}).
/// Throws Errc::monomial_absent when a_{|alpha|} == 0.
double monomial_norm(const DiagonalKernel& k, std::span<const int> alpha);

/// Multi-indices of length n with |alpha| == degree, in lexicographic order
/// with the first coordinate most significant and descending:
/// (d,0,..), (d-1,1,0,..), ...
std::vector<std::vector<int>> multi_indices_of_degree(int n, int degree);

/// Graded lexicographic enumeration of all |alpha| <= max_degree.
std::vector<std::vector<int>> multi_indices_up_to(int n, int max_degree);

/// z^alpha
cplx monomial(const BallPoint& z, std::span<const int> alpha);

}  // namespace nevpick
