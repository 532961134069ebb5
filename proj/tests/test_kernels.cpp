#include <gtest/gtest.h>

#include <cmath>

#include "nevpick/kernels.hpp"
#include "support.hpp"

using namespace nevpick;
using nevpick::testing::Rng;

namespace {

BallPoint pt(std::initializer_list<cplx> c) { return BallPoint(std::vector<cplx>(c)); }

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::invalid_input;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST(BallPoint, RejectsBoundaryAndOutside) {
  EXPECT_THROW(pt({1.0}), Error);
  EXPECT_THROW(pt({0.6, 0.8}), Error);
  EXPECT_THROW(pt({cplx(0.8, 0.7)}), Error);
  EXPECT_NO_THROW(pt({0.6, 0.79}));
  EXPECT_THROW(BallPoint(std::vector<cplx>{}), Error);
}

TEST(PowerKernel, DruryArvesonCoefficients) {
  const auto a = DiagonalKernel::power(1.0).coefficients(6);
  for (double x : a) EXPECT_EQ(x, 1.0);
}

TEST(PowerKernel, BergmanCoefficients) {
  const auto a = DiagonalKernel::power(2.0).coefficients(8);
  for (int j = 0; j <= 8; ++j) EXPECT_EQ(a[static_cast<std::size_t>(j)], j + 1.0);
}

TEST(PowerKernel, RejectsNonPositiveWeight) {
  EXPECT_EQ(code_of([] { DiagonalKernel::power(0.0); }), Errc::invalid_input);
  EXPECT_EQ(code_of([] { DiagonalKernel::power(-1.0); }), Errc::invalid_input);
}

TEST(CoefficientKernel, Validation) {
  EXPECT_EQ(code_of([] { DiagonalKernel::from_coefficients({2.0, 1.0}); }), Errc::invalid_input);
  EXPECT_EQ(code_of([] { DiagonalKernel::from_coefficients({1.0, -0.1}); }), Errc::invalid_input);
  EXPECT_EQ(code_of([] { DiagonalKernel::from_coefficients({1.0, 1.0}, 4); }), Errc::invalid_input);
  const auto k = DiagonalKernel::from_coefficients({1.0, 2.0, 3.0, 4.0}, 2);
  EXPECT_EQ(k.truncation(), 2);
  EXPECT_EQ(k.coefficient(3), 0.0);
}

TEST(HermInner, Examples) {
  EXPECT_EQ(herm_inner(pt({0.0}), pt({0.0})), cplx(0.0));
  EXPECT_EQ(herm_inner(pt({0.5, 0.0}), pt({0.0, 0.5})), cplx(0.0));
  EXPECT_EQ(herm_inner(pt({0.5}), pt({0.5})), cplx(0.25));
  EXPECT_EQ(herm_inner(pt({cplx(0, 0.5)}), pt({0.5})), cplx(0, 0.25));
  EXPECT_EQ(code_of([] { herm_inner(pt({0.1}), pt({0.1, 0.1})); }), Errc::invalid_input);
}

TEST(Eval, Examples) {
  for (double lambda : {0.5, 1.0, 2.0, 3.7}) {
    EXPECT_EQ(DiagonalKernel::power(lambda)(pt({0.0}), pt({0.0})), cplx(1.0));
  }
  EXPECT_EQ(DiagonalKernel::from_coefficients({1.0, 3.0})(pt({0.0, 0.0}), pt({0.0, 0.0})), cplx(1.0));
  EXPECT_NEAR(std::abs(DiagonalKernel::power(2.0)(pt({0.5}), pt({0.5})) - 16.0 / 9.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(DiagonalKernel::power(1.0)(pt({0.5}), pt({0.5})) - 4.0 / 3.0), 0.0, 1e-15);
}

TEST(Eval, TruncatedSeriesReportsTail) {
  const auto k = DiagonalKernel::from_coefficients({1.0, 2.0, 3.0});
  const auto v = k.eval(pt({0.5}), pt({0.5}));
  EXPECT_NEAR(v.value.real(), 1.0 + 2 * 0.25 + 3 * 0.0625, 1e-15);
  EXPECT_NEAR(v.tail, 3.0 * std::pow(0.25, 3) / 0.75, 1e-15);
  EXPECT_EQ(DiagonalKernel::power(2.0).eval(pt({0.5}), pt({0.5})).tail, 0.0);
}

TEST(Eval, HermitianSymmetry) {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.integer(1, 4);
    const BallPoint z(nevpick::testing::random_ball_coords(rng, n, 0.95));
    const BallPoint w(nevpick::testing::random_ball_coords(rng, n, 0.95));
    const auto k = DiagonalKernel::power(rng.uniform(0.1, 6.0));
    EXPECT_LE(std::abs(k(z, w) - std::conj(k(w, z))), 1e-12 * std::abs(k(z, w)));
  }
}

TEST(Eval, ClosedFormMatchesLgammaSeries) {
  Rng rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const double lambda = rng.uniform(0.2, 6.0);
    const BallPoint z(nevpick::testing::random_ball_coords(rng, 2, 0.8));
    const BallPoint w(nevpick::testing::random_ball_coords(rng, 2, 0.8));
    const cplx ref = nevpick::testing::power_kernel_series(lambda, herm_inner(z, w));
    EXPECT_LE(std::abs(DiagonalKernel::power(lambda)(z, w) - ref), 1e-12 * std::abs(ref));
  }
}

TEST(Eval, SeriesConsistencyAtDegreeSixty) {
  Rng rng(23);
  for (double lambda : {1.0, 1.5, 2.0, 3.0, 4.5}) {
    const auto closed = DiagonalKernel::power(lambda);
    const auto series = DiagonalKernel::from_coefficients(closed.coefficients(60));
    for (int trial = 0; trial < 20; ++trial) {
      const BallPoint z(nevpick::testing::random_ball_coords(rng, 2, std::sqrt(0.5)));
      const BallPoint w(nevpick::testing::random_ball_coords(rng, 2, std::sqrt(0.5)));
      ASSERT_LE(std::abs(herm_inner(z, w)), 0.5);
      EXPECT_LE(std::abs(series(z, w) - closed(z, w)), 1e-12);
    }
  }
}

TEST(FactorRegular, BergmanGivesDruryArveson) {
  const auto kt = factor_regular(DiagonalKernel::power(2.0));
  ASSERT_TRUE(kt.closed_form());
  EXPECT_EQ(*kt.closed_form(), 1.0);
  const auto b = differenced_coefficients(DiagonalKernel::power(2.0), 10);
  for (double x : b) EXPECT_EQ(x, 1.0);
}

TEST(FactorRegular, WeightThreeGivesBergman) {
  const auto b = differenced_coefficients(DiagonalKernel::power(3.0), 20);
  for (int j = 0; j <= 20; ++j) {
    // C(j+2, 2) - C(j+1, 2) = j + 1
    EXPECT_NEAR(b[static_cast<std::size_t>(j)], binomial(j + 2, 2) - (j ? binomial(j + 1, 2) : 0.0), 1e-12);
    EXPECT_NEAR(b[static_cast<std::size_t>(j)], j + 1.0, 1e-12);
  }
  EXPECT_EQ(*factor_regular(DiagonalKernel::power(3.0)).closed_form(), 2.0);
}

TEST(FactorRegular, DruryArvesonGivesConstant) {
  const auto kt = factor_regular(drury_arveson());
  const auto b = kt.coefficients(5);
  EXPECT_EQ(b[0], 1.0);
  for (int j = 1; j <= 5; ++j) EXPECT_EQ(b[static_cast<std::size_t>(j)], 0.0);
  EXPECT_EQ(kt(BallPoint({0.5}), BallPoint({0.7})), cplx(1.0));
}

TEST(FactorRegular, DecreasingCoefficientsNotRegular) {
  EXPECT_EQ(code_of([] { factor_regular(DiagonalKernel::from_coefficients({1.0, 0.5, 0.25})); }),
            Errc::not_regular);
  EXPECT_EQ(code_of([] { factor_regular(DiagonalKernel::power(0.5)); }), Errc::not_regular);
  EXPECT_FALSE(is_regular(DiagonalKernel::power(0.99)));
  EXPECT_TRUE(is_regular(DiagonalKernel::power(1.0)));
}

TEST(FactorRegular, ClampsFloatNoise) {
  const auto kt = factor_regular(DiagonalKernel::from_coefficients({1.0, 2.0, 2.0 - 5e-13, 3.0}));
  const auto b = kt.coefficients(3);
  EXPECT_EQ(b[2], 0.0);
  EXPECT_NEAR(b[3], 1.0, 1e-12);
}

TEST(FactorRegular, MultiplicativeAtPoints) {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.integer(1, 3);
    const auto k = DiagonalKernel::power(rng.uniform(1.0, 6.0));
    const auto kt = factor_regular(k);
    const BallPoint z(nevpick::testing::random_ball_coords(rng, n, 0.9));
    const BallPoint w(nevpick::testing::random_ball_coords(rng, n, 0.9));
    const cplx lhs = k(z, w);
    EXPECT_LE(std::abs(lhs - drury_arveson()(z, w) * kt(z, w)), 1e-10 * std::abs(lhs));
  }
}

TEST(MonomialNorm, Examples) {
  const std::vector<int> a11{1, 1};
  EXPECT_NEAR(monomial_norm(drury_arveson(), a11), 0.5, 1e-15);
  for (int j = 0; j < 10; ++j) {
    const std::vector<int> a{j};
    EXPECT_NEAR(monomial_norm(DiagonalKernel::power(2.0), a), 1.0 / (j + 1), 1e-15);
  }
  const std::vector<int> zero{0, 0, 0};
  EXPECT_EQ(monomial_norm(DiagonalKernel::power(3.3), zero), 1.0);
}

TEST(MonomialNorm, AbsentMonomial) {
  const std::vector<int> a{1, 0};
  EXPECT_EQ(code_of([&] { monomial_norm(DiagonalKernel(), a); }), Errc::monomial_absent);
}

TEST(MultiIndex, GradedLexOrder) {
  const auto idx = multi_indices_up_to(2, 2);
  const std::vector<std::vector<int>> expected{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  EXPECT_EQ(idx, expected);
  // C(d + n - 1, n - 1) indices of degree d
  EXPECT_EQ(multi_indices_of_degree(3, 4).size(), 15u);
  EXPECT_EQ(multi_indices_up_to(2, 40).size(), 861u);
}

TEST(MultiIndex, ReproducingExpansionConverges) {
  // sum_{|alpha| <= 40} z^alpha conj(w^alpha) / ||z^alpha||^2 -> k(z, w), lambda 2, n 2.
  Rng rng(41);
  const auto k = DiagonalKernel::power(2.0);
  const auto basis = multi_indices_up_to(2, 40);
  for (int trial = 0; trial < 10; ++trial) {
    const BallPoint z(nevpick::testing::random_ball_coords(rng, 2, 0.6));
    const BallPoint w(nevpick::testing::random_ball_coords(rng, 2, 0.6));
    cplx sum = 0.0;
    for (const auto& a : basis) sum += monomial(z, a) * std::conj(monomial(w, a)) / monomial_norm(k, a);
    EXPECT_LE(std::abs(sum - k(z, w)), 1e-6);
  }
}
