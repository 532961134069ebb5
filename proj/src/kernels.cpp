#include "nevpick/kernels.hpp"

#include <cmath>
#include <functional>
#include <string>

namespace nevpick {

namespace {

constexpr double kRegularityClamp = 1e-12;
// Differenced coefficients examined when testing a power kernel.  For
// lambda >= 1 they are all nonnegative, for lambda < 1 already b_1 < 0.
constexpr int kPowerCheckDegree = 64;

}  // namespace

BallPoint::BallPoint(std::vector<cplx> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw Error(Errc::invalid_input, "ball point needs n >= 1 coordinates");
  for (const cplx& c : coords_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(Errc::invalid_input, "non-finite ball point coordinate");
    }
  }
  if (!(norm2() < 1.0)) {
    throw Error(Errc::invalid_input,
                "point outside the open unit ball (|z|^2 = " + std::to_string(norm2()) + ")");
  }
}

double BallPoint::norm2() const {
  double s = 0.0;
  for (const cplx& c : coords_) s += std::norm(c);
  return s;
}

BallPoint BallPoint::conj() const {
  std::vector<cplx> c(coords_.size());
  for (std::size_t l = 0; l < c.size(); ++l) c[l] = std::conj(coords_[l]);
  return BallPoint(std::move(c));
}

cplx herm_inner(const BallPoint& z, const BallPoint& w) {
  if (z.dim() != w.dim()) {
    throw Error(Errc::invalid_input, "inner product of points of different dimension");
  }
  cplx s = 0.0;
  for (std::size_t l = 0; l < z.dim(); ++l) s += z[l] * std::conj(w[l]);
  return s;
}

DiagonalKernel DiagonalKernel::power(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(Errc::invalid_input, "power kernel needs lambda > 0");
  }
  return power_unchecked(lambda);
}

DiagonalKernel DiagonalKernel::power_unchecked(double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw Error(Errc::invalid_input, "power kernel needs lambda >= 0");
  }
  DiagonalKernel k;
  k.lambda_ = lambda;
  return k;
}

DiagonalKernel DiagonalKernel::from_coefficients(std::vector<double> coefficients,
                                                 std::optional<int> truncation) {
  if (coefficients.empty()) throw Error(Errc::invalid_input, "empty coefficient list");
  const int d = truncation.value_or(static_cast<int>(coefficients.size()) - 1);
  if (d < 0 || d >= static_cast<int>(coefficients.size())) {
    throw Error(Errc::invalid_input, "truncation degree " + std::to_string(d) +
                                         " needs coefficients a_0..a_" + std::to_string(d));
  }
  coefficients.resize(static_cast<std::size_t>(d) + 1);
  if (std::abs(coefficients[0] - 1.0) > 1e-12) {
    throw Error(Errc::invalid_input, "kernel coefficient a_0 must be 1");
  }
  coefficients[0] = 1.0;
  for (double a : coefficients) {
    if (!std::isfinite(a) || a < 0.0) {
      throw Error(Errc::invalid_input, "kernel coefficients must be finite and nonnegative");
    }
  }
  DiagonalKernel k;
  k.lambda_.reset();
  k.coeffs_ = std::move(coefficients);
  k.truncation_ = d;
  return k;
}

double DiagonalKernel::coefficient(int j) const {
  if (j < 0) return 0.0;
  if (lambda_) {
    double a = 1.0;
    for (int i = 1; i <= j; ++i) a *= (*lambda_ + i - 1) / i;
    return a;
  }
  return j <= truncation_ ? coeffs_[static_cast<std::size_t>(j)] : 0.0;
}

std::vector<double> DiagonalKernel::coefficients(int degree) const {
  std::vector<double> out(static_cast<std::size_t>(std::max(degree, -1) + 1));
  if (out.empty()) return out;
  if (lambda_) {
    out[0] = 1.0;
    for (int j = 1; j <= degree; ++j) {
      out[static_cast<std::size_t>(j)] = out[static_cast<std::size_t>(j) - 1] * (*lambda_ + j - 1) / j;
    }
  } else {
    for (int j = 0; j <= degree; ++j) out[static_cast<std::size_t>(j)] = coefficient(j);
  }
  return out;
}

KernelValue DiagonalKernel::eval_at(cplx t) const {
  if (lambda_) {
    if (*lambda_ == 0.0) return {1.0, 0.0};
    return {std::pow(cplx(1.0) - t, -*lambda_), 0.0};
  }
  cplx s = 0.0;
  for (int j = truncation_; j >= 0; --j) s = s * t + coeffs_[static_cast<std::size_t>(j)];
  const double r = std::abs(t);
  const double tail = coeffs_.back() * std::pow(r, truncation_ + 1) / (1.0 - r);
  return {s, tail};
}

KernelValue DiagonalKernel::eval(const BallPoint& z, const BallPoint& w) const {
  return eval_at(herm_inner(z, w));
}

DiagonalKernel drury_arveson() { return DiagonalKernel::power(1.0); }

std::vector<double> differenced_coefficients(const DiagonalKernel& k, int degree) {
  const std::vector<double> a = k.coefficients(degree);
  std::vector<double> b(a.size());
  for (std::size_t j = 0; j < a.size(); ++j) b[j] = j == 0 ? a[0] : a[j] - a[j - 1];
  return b;
}

DiagonalKernel factor_regular(const DiagonalKernel& k) {
  const int degree = k.closed_form() ? kPowerCheckDegree : k.truncation();
  std::vector<double> b = differenced_coefficients(k, degree);
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (b[j] < -kRegularityClamp) {
      throw Error(Errc::not_regular, "k / k_1 has coefficient b_" + std::to_string(j) + " = " +
                                         std::to_string(b[j]) + " < 0");
    }
    if (b[j] < 0.0) b[j] = 0.0;
  }
  if (k.closed_form()) return DiagonalKernel::power_unchecked(std::max(0.0, *k.closed_form() - 1.0));
  return DiagonalKernel::from_coefficients(std::move(b), k.truncation());
}

bool is_regular(const DiagonalKernel& k) {
  try {
    factor_regular(k);
    return true;
  } catch (const Error& e) {
    if (e.code() == Errc::not_regular) return false;
    throw;
  }
}

double monomial_norm(const DiagonalKernel& k, std::span<const int> alpha) {
  int total = 0;
  for (int a : alpha) {
    if (a < 0) throw Error(Errc::invalid_input, "negative multi-index entry");
    total += a;
  }
  const double coeff = k.coefficient(total);
  if (!(coeff > 0.0)) {
    throw Error(Errc::monomial_absent,
                "coefficient a_" + std::to_string(total) + " vanishes, monomial not in the space");
  }
  // |alpha|! / alpha!, accumulated as a product of factors s / i >= 1.
  double multinomial = 1.0;
  int s = 0;
  for (int a : alpha) {
    for (int i = 1; i <= a; ++i) {
      ++s;
      multinomial *= static_cast<double>(s) / i;
    }
  }
  return 1.0 / (multinomial * coeff);
}

std::vector<std::vector<int>> multi_indices_of_degree(int n, int degree) {
  std::vector<std::vector<int>> out;
  if (n <= 0 || degree < 0) return out;
  std::vector<int> alpha(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n - 1) {
      alpha[static_cast<std::size_t>(pos)] = left;
      out.push_back(alpha);
      return;
    }
    for (int a = left; a >= 0; --a) {
      alpha[static_cast<std::size_t>(pos)] = a;
      rec(pos + 1, left - a);
    }
  };
  rec(0, degree);
  return out;
}

std::vector<std::vector<int>> multi_indices_up_to(int n, int max_degree) {
  std::vector<std::vector<int>> out;
  for (int d = 0; d <= max_degree; ++d) {
    auto level = multi_indices_of_degree(n, d);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

cplx monomial(const BallPoint& z, std::span<const int> alpha) {
  if (alpha.size() != z.dim()) throw Error(Errc::invalid_input, "multi-index length mismatch");
  cplx v = 1.0;
  for (std::size_t l = 0; l < alpha.size(); ++l) {
    for (int e = 0; e < alpha[l]; ++e) v *= z[l];
  }
  return v;
}

}  // namespace nevpick
