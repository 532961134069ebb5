#pragma once

// Test-only helpers: deterministic random instances and independent oracles.
// Nothing here calls into the code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "nevpick/pick.hpp"

namespace nevpick::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  double normal() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }
  std::complex<double> cnormal() { return {normal(), normal()}; }

 private:
  std::mt19937_64 gen_;
};

inline std::vector<std::complex<double>> random_ball_coords(Rng& rng, int n, double radius) {
  std::vector<std::complex<double>> c(static_cast<std::size_t>(n));
  double nrm2 = 0.0;
  for (auto& x : c) {
    x = rng.cnormal();
    nrm2 += std::norm(x);
  }
  const double r = radius * std::pow(rng.uniform(), 1.0 / (2.0 * n)) / std::sqrt(nrm2);
  for (auto& x : c) x *= r;
  return c;
}

inline CMatrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  CMatrix a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = rng.cnormal();
  return a;
}

inline CMatrix random_unitary(Rng& rng, Eigen::Index dim) {
  Eigen::HouseholderQR<CMatrix> qr(random_matrix(rng, dim, dim));
  return qr.householderQ() * CMatrix::Identity(dim, dim);
}

struct RandomProblemSpec {
  int max_n = 3;
  int max_m = 4;
  int max_pq = 2;
  double lambda_lo = 1.0;  // exclusive
  double lambda_hi = 5.0;
  double node_radius = 0.7;
  double target_norm = 0.9;
  double min_separation = 0.05;
};

/// n <= 3, m <= 4, p, q <= 2, lambda in (1, 5], nodes in the ball of radius
/// 0.7 at least 0.05 apart, each target rescaled to operator norm 0.9 u.
inline InterpolationProblem random_problem(Rng& rng, const RandomProblemSpec& spec = {}) {
  const int n = rng.integer(1, spec.max_n);
  const int m = rng.integer(1, spec.max_m);
  const int p = rng.integer(1, spec.max_pq);
  const int q = rng.integer(1, spec.max_pq);
  double lambda = spec.lambda_hi - (spec.lambda_hi - spec.lambda_lo) * rng.uniform();
  std::vector<BallPoint> nodes;
  while (static_cast<int>(nodes.size()) < m) {
    auto c = random_ball_coords(rng, n, spec.node_radius);
    bool ok = true;
    for (const auto& z : nodes) {
      double d2 = 0.0;
      for (int l = 0; l < n; ++l) d2 += std::norm(z[static_cast<std::size_t>(l)] - c[static_cast<std::size_t>(l)]);
      if (std::sqrt(d2) < spec.min_separation) ok = false;
    }
    if (ok) nodes.emplace_back(std::move(c));
  }
  std::vector<CMatrix> targets;
  for (int i = 0; i < m; ++i) {
    CMatrix w = random_matrix(rng, q, p);
    Eigen::JacobiSVD<CMatrix> svd(w);
    w *= spec.target_norm * rng.uniform() / svd.singularValues()(0);
    targets.push_back(std::move(w));
  }
  return InterpolationProblem(n, DiagonalKernel::power(lambda), std::move(nodes), std::move(targets));
}

// ---- oracles ----

/// Eigenvalues of [[a, b], [conj b, d]] from the characteristic polynomial.
inline std::pair<double, double> eig2x2(double a, std::complex<double> b, double d) {
  const double mean = 0.5 * (a + d);
  const double half = 0.5 * (a - d);
  const double disc = std::sqrt(half * half + std::norm(b));
  return {mean - disc, mean + disc};
}

/// (1 - t)^{-lambda} as sum_j Gamma(lambda + j) / (Gamma(lambda) j!) t^j,
/// coefficients through lgamma.
inline std::complex<double> power_kernel_series(double lambda, std::complex<double> t, int terms = 4000) {
  if (lambda == 0.0) return 1.0;
  std::complex<double> sum = 0.0;
  std::complex<double> tp = 1.0;
  for (int j = 0; j < terms; ++j) {
    const double c = std::exp(std::lgamma(lambda + j) - std::lgamma(lambda) - std::lgamma(j + 1.0));
    sum += c * tp;
    tp *= t;
    if (std::abs(tp) * c < 1e-300) break;
  }
  return sum;
}

/// Pick matrix by direct loops, kernel from power_kernel_series.
inline CMatrix brute_force_pick(double lambda, const std::vector<std::vector<std::complex<double>>>& nodes,
                                const std::vector<CMatrix>& targets) {
  const std::size_t m = nodes.size();
  const Eigen::Index q = targets[0].rows();
  const Eigen::Index p = targets[0].cols();
  CMatrix out(static_cast<Eigen::Index>(m) * q, static_cast<Eigen::Index>(m) * q);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      std::complex<double> t = 0.0;
      for (std::size_t l = 0; l < nodes[i].size(); ++l) t += nodes[i][l] * std::conj(nodes[j][l]);
      const std::complex<double> k = power_kernel_series(lambda, t);
      for (Eigen::Index a = 0; a < q; ++a) {
        for (Eigen::Index b = 0; b < q; ++b) {
          std::complex<double> ww = 0.0;
          for (Eigen::Index c = 0; c < p; ++c) ww += targets[i](a, c) * std::conj(targets[j](b, c));
          out(static_cast<Eigen::Index>(i) * q + a, static_cast<Eigen::Index>(j) * q + b) =
              (a == b ? k : 0.0) - ww / (1.0 - t);
        }
      }
    }
  }
  return out;
}

inline std::vector<std::vector<std::complex<double>>> raw_nodes(const InterpolationProblem& pr) {
  std::vector<std::vector<std::complex<double>>> out;
  for (const auto& z : pr.nodes()) out.push_back(z.coords());
  return out;
}

/// Smallest max-distance over all matchings of two small multisets.
inline double multiset_distance(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b) {
  if (a.size() != b.size()) return INFINITY;
  std::vector<std::size_t> perm(b.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  double best = INFINITY;
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace nevpick::testing
