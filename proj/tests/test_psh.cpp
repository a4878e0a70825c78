#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "minflex/psh.hpp"

using namespace minflex;

namespace {

Box cube(int dim, double half) {
  return {Vec::Constant(dim, -half), Vec::Constant(dim, half)};
}

Vec random_vec(std::mt19937& rng, int dim, double scale) {
  std::normal_distribution<double> gauss;
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v[i] = scale * gauss(rng);
  return v;
}

double partial_eig_sum(const Mat& A, int p) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (A + A.transpose()));
  double s = 0.0;
  for (int i = 0; i < p; ++i) s += es.eigenvalues()[i];
  return s;
}

// Smoothed squared distance to the unit ball.
ScalarField smoothed_ball_distance(int dim) {
  const ExprPtr tau =
      expr_pow(expr_smoothrelu(expr_sub(expr_norm(), expr_const(1.0)), 1e-3), 2);
  return ScalarField::from_expr(tau, cube(dim, 2.0));
}

}  // namespace

TEST_CASE("hessian partial sums on quadratics") {
  Mat A = Mat::Zero(3, 3);
  A.diagonal() << 2.0, 2.0, -1.0;
  const ScalarField tau = ScalarField::quadratic(A, cube(3, 1.0));
  const Vec x = Vec::Zero(3);
  CHECK(hessian_partial_sum(tau, x, 1) == doctest::Approx(-1.0));
  CHECK(hessian_partial_sum(tau, x, 2) == doctest::Approx(1.0));
  CHECK(hessian_partial_sum(tau, x, 3) == doctest::Approx(3.0));

  const ScalarField sq = ScalarField::from_expr(expr_sqnorm(), cube(3, 1.0));
  CHECK(hessian_partial_sum(sq, x, 1) == doctest::Approx(2.0).epsilon(1e-6));

  // tau = x1 x2 in R^3: eigenvalues (-1, 0, 1).
  const ScalarField xy = ScalarField::from_expr(
      expr_mul({expr_var(0), expr_var(1)}), cube(3, 1.0));
  CHECK(hessian_partial_sum(xy, x, 2) == doctest::Approx(-1.0).epsilon(1e-5));
}

TEST_CASE("grid psh scan on the diagonal example") {
  Mat A = Mat::Zero(3, 3);
  A.diagonal() << 2.0, 2.0, -1.0;
  const ScalarField tau = ScalarField::quadratic(A, cube(3, 1.0));

  auto r1 = is_p_psh(tau, 1, 8);
  CHECK(!r1.psh);
  CHECK(r1.min_partial_sum == doctest::Approx(-1.0).epsilon(1e-9));

  auto r2 = is_p_psh(tau, 2, 8);
  CHECK(r2.psh);
  CHECK(r2.strongly);
  CHECK(r2.min_partial_sum == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r2.monotone_consistent);

  auto sq = is_p_psh(ScalarField::from_expr(expr_sqnorm(), cube(3, 1.0)), 1, 8);
  CHECK(sq.psh);
  CHECK(sq.min_partial_sum == doctest::Approx(2.0).epsilon(1e-5));
}

TEST_CASE("smoothed ball distance is 1-psh on the grid") {
  auto r = is_p_psh(smoothed_ball_distance(3), 1, 10);
  CHECK(r.psh);
}

TEST_CASE("partial eigenvalue sums are superadditive") {
  std::mt19937 rng(71);
  std::normal_distribution<double> gauss;
  for (int k = 0; k < 50; ++k) {
    Mat A(5, 5), B(5, 5);
    for (int i = 0; i < 25; ++i) {
      A(i / 5, i % 5) = gauss(rng);
      B(i / 5, i % 5) = gauss(rng);
    }
    A = 0.5 * (A + A.transpose()).eval();
    B = 0.5 * (B + B.transpose()).eval();
    for (int p = 1; p <= 5; ++p)
      CHECK(partial_eig_sum(A + B, p) >=
            partial_eig_sum(A, p) + partial_eig_sum(B, p) - 1e-8);
  }
}

TEST_CASE("FD Hessian agrees with the analytic one") {
  std::mt19937 rng(73);
  std::normal_distribution<double> gauss;
  Mat A(4, 4);
  for (int i = 0; i < 16; ++i) A(i / 4, i % 4) = gauss(rng);
  A = 0.5 * (A + A.transpose()).eval();
  const ScalarField analytic = ScalarField::quadratic(A, cube(4, 1.0));
  ScalarField fd = analytic;
  fd.hessian = nullptr;  // force finite differences
  for (int k = 0; k < 100; ++k) {
    const Vec x = random_vec(rng, 4, 0.5);
    const Mat Ha = analytic.hessian_at(x);
    const Mat Hf = fd.hessian_at(x);
    CHECK((Ha - Hf).norm() <= 1e-4 * (Ha.norm() + 1.0));
  }
}

TEST_CASE("p-convexity certificates and the dimension gate") {
  // Unit ball zero set in R^3: certified at p = 1, gate rejects p = 3.
  auto c1 = certify_p_convex(smoothed_ball_distance(3), 1, 10);
  CHECK(c1.certified);
  CHECK(c1.gate_ok);
  CHECK(c1.zero_set_samples > 0);

  auto c3 = certify_p_convex(smoothed_ball_distance(3), 3, 10);
  CHECK(!c3.gate_ok);  // max(2, n-2) = 2 in R^3

  auto c5 = certify_p_convex(smoothed_ball_distance(5), 2, 8);
  CHECK(c5.gate_ok);  // max(2, n-2) = 3 in R^5

  // tau with an empty zero set inside the box.
  const ScalarField shifted = ScalarField::from_expr(
      expr_add({expr_sqnorm(), expr_const(1.0)}), cube(3, 1.0));
  CHECK_THROWS_AS(certify_p_convex(shifted, 1, 8), Error);
}

TEST_CASE("contact order recovers synthetic exponents exactly") {
  for (int k = 1; k <= 6; ++k) {
    ScalarField tau;
    tau.value = [k](const Vec& x) {
      return std::pow(std::hypot(x[0], x[1]), k);
    };
    tau.domain = cube(3, 1.0);
    auto f = [](std::complex<double> z) {
      Vec v(3);
      v << z.real(), z.imag(), 0.0;
      return v;
    };
    auto est = estimate_contact_order(f, tau, {0.0, 0.0});
    CHECK(est.k == k);
    CHECK(est.fit_residual < 1e-6);
    CHECK(est.c == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("tangent plane against a sphere has contact order two") {
  // Sphere of radius R = 0.2 tangent to the plane x3 = 0 from below.
  const double R = 0.2;
  ScalarField tau;
  tau.value = [R](const Vec& x) {
    return x[0] * x[0] + x[1] * x[1] + (x[2] + R) * (x[2] + R) - R * R;
  };
  tau.domain = cube(3, 1.0);
  auto plane = [](std::complex<double> z) {
    Vec v(3);
    v << z.real(), z.imag(), 0.0;
    return v;
  };
  auto est = estimate_contact_order(plane, tau, {0.0, 0.0});
  CHECK(est.k == 2);

  // Shifted center: f(center) leaves the zero set.
  CHECK_THROWS_AS(estimate_contact_order(plane, tau, {0.5, 0.0}), Error);
}

TEST_CASE("surface curving into the body raises InsideBody") {
  // Saddle touching a large sphere: the surface dips inside.
  const double R = 2.0;
  ScalarField tau;
  tau.value = [R](const Vec& x) {
    return x[0] * x[0] + x[1] * x[1] + (x[2] + R) * (x[2] + R) - R * R;
  };
  tau.domain = cube(3, 1.0);
  auto saddle = [](std::complex<double> z) {
    Vec v(3);
    const std::complex<double> z2 = z * z;
    v << z.real(), z.imag(), z2.real();
    return v;
  };
  CHECK_THROWS_AS(estimate_contact_order(saddle, tau, {0.0, 0.0}), Error);
}
