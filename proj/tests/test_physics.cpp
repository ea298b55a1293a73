#include <doctest.h>

#include <cmath>

#include "gdm/physics.hpp"
#include "helpers.hpp"

using namespace gdm;
using gdm::testing::uniform;

namespace {

// independent oracle for I_nu(M)/I_0(M): the integral representation
// I_nu(M) = (1/pi) int_0^pi exp(M cos t) cos(nu t) dt, evaluated with the
// trapezoid rule (spectrally accurate for smooth periodic integrands), scaled
// by exp(-M) to avoid overflow
double bessel_scaled_integral(double M, int nu) {
  const int N = 4000;
  double sum = 0.0;
  for (int k = 0; k <= N; ++k) {
    const double t = M_PI * k / N;
    const double w = (k == 0 || k == N) ? 0.5 : 1.0;
    sum += w * std::exp(M * (std::cos(t) - 1.0)) * std::cos(nu * t);
  }
  return sum * (M_PI / N) / M_PI;
}

double bessel_ratio_oracle(double M) {
  return bessel_scaled_integral(M, 2) / bessel_scaled_integral(M, 0);
}

}  // namespace

TEST_CASE("water tensor") {
  SUBCASE("isotropic at the origin") {
    const WaterTensor wt = water_tensor(Vec2(0.0, 0.0));
    CHECK(wt.tensor(0, 0) == doctest::Approx(0.5));
    CHECK(wt.tensor(1, 1) == doctest::Approx(0.5));
    CHECK(wt.lambda1 == doctest::Approx(0.5));
    CHECK(wt.lambda2 == doctest::Approx(0.5));
  }
  SUBCASE("strongly anisotropic far up the y axis") {
    const WaterTensor wt = water_tensor(Vec2(0.0, 10.0));
    CHECK(wt.tensor(0, 0) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(wt.tensor(1, 1) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(wt.lambda1 == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(wt.phi1.isApprox(Vec2(0.0, 1.0)));
  }
  SUBCASE("even in both coordinates") {
    for (int i = 0; i < 20; ++i) {
      const double x = uniform(-15, 15), y = uniform(-15, 15);
      CHECK(water_tensor(Vec2(x, y)).tensor.isApprox(water_tensor(Vec2(-x, y)).tensor));
      CHECK(water_tensor(Vec2(x, y)).tensor.isApprox(water_tensor(Vec2(x, -y)).tensor));
    }
  }
  SUBCASE("eigenvalues ordered and eigenvectors orthonormal") {
    for (int i = 0; i < 20; ++i) {
      const WaterTensor wt = water_tensor(Vec2(uniform(-20, 20), uniform(-20, 20)));
      CHECK(wt.lambda1 >= wt.lambda2);
      CHECK(wt.lambda2 > 0.0);
      CHECK(std::abs(wt.phi1.dot(wt.phi2)) < 1e-14);
      CHECK(wt.phi1.norm() == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("fractional anisotropy") {
  CHECK(fractional_anisotropy(0.7, 0.7) == 0.0);
  CHECK(fractional_anisotropy(0.75, 0.25) ==
        doctest::Approx(0.5 / std::sqrt(0.625)).epsilon(1e-14));
  CHECK(fractional_anisotropy(1.0, 0.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(fractional_anisotropy(0.0, 0.0), ZeroTensor);
  SUBCASE("scale invariance") {
    for (int i = 0; i < 50; ++i) {
      const double l1 = uniform(0.1, 5.0), l2 = uniform(0.0, 5.0), c = uniform(0.1, 10.0);
      CHECK(fractional_anisotropy(c * l1, c * l2) ==
            doctest::Approx(fractional_anisotropy(l1, l2)).epsilon(1e-12));
    }
  }
}

TEST_CASE("modified-Bessel ratio") {
  CHECK(bessel_ratio(0.0) == 0.0);
  CHECK_THROWS_AS(bessel_ratio(-1.0), InvalidParams);

  SUBCASE("series branch against the integral oracle") {
    for (double M : {0.1, 1.0, 3.0, 7.5, 12.0, 19.9})
      CHECK(bessel_ratio(M) == doctest::Approx(bessel_ratio_oracle(M)).epsilon(1e-11));
  }
  SUBCASE("asymptotic branch against the integral oracle") {
    for (double M : {20.1, 25.0, 50.0, 63.0, 100.0})
      CHECK(bessel_ratio(M) == doctest::Approx(bessel_ratio_oracle(M)).epsilon(1e-8));
  }
  SUBCASE("library cross-check") {
    for (double M : {0.5, 5.0, 15.0, 30.0, 80.0})
      CHECK(bessel_ratio(M) ==
            doctest::Approx(std::cyl_bessel_i(2.0, M) / std::cyl_bessel_i(0.0, M))
                .epsilon(1e-10));
  }
  SUBCASE("continuity across the branch switch") {
    CHECK(bessel_ratio(20.0 - 1e-9) == doctest::Approx(bessel_ratio(20.0 + 1e-9)).epsilon(1e-9));
  }
  SUBCASE("monotone increasing, bounded by 1") {
    double prev = -1.0;
    for (int k = 0; k <= 100; ++k) {
      const double r = bessel_ratio(static_cast<double>(k));
      CHECK(r > prev);
      CHECK(r < 1.0);
      prev = r;
    }
  }
}

TEST_CASE("tumour diffusion tensor") {
  SUBCASE("kappa = 0 is isotropic everywhere") {
    TensorParams p;
    p.kappa = 0.0;
    p.speed = 2.0;
    p.turning = 4.0;
    for (int i = 0; i < 10; ++i) {
      const Mat2 A = diffusion_tensor(Vec2(uniform(-20, 20), uniform(-20, 20)), p);
      CHECK(A.isApprox(1.0 * Mat2::Identity(), 1e-13));  // r^2/mu = 1
    }
  }
  SUBCASE("isotropic at the origin for any kappa") {
    TensorParams p;
    p.kappa = 30.0;
    const Mat2 A = diffusion_tensor(Vec2(0.0, 0.0), p);
    CHECK(A(0, 1) == doctest::Approx(0.0));
    CHECK(A(0, 0) == doctest::Approx(A(1, 1)));
  }
  SUBCASE("chained-formula oracle at (0, 10), kappa = 30") {
    TensorParams p;
    p.kappa = 30.0;
    p.delta = 0.05;
    p.speed = 1.0;
    p.turning = 1.0;
    const Mat2 A = diffusion_tensor(Vec2(0.0, 10.0), p);

    // chain the published formulas by hand
    const double d = 0.25 * std::exp(0.0) - 0.25 * std::exp(-0.5 * 100.0);
    const double l1 = 0.5 + d, l2 = 0.5 - d;
    const double fa = (l1 - l2) / std::sqrt(l1 * l1 + l2 * l2);
    const double ratio = bessel_ratio_oracle(30.0 * fa);
    const double iso = p.delta + (1.0 - p.delta) * (1.0 - ratio);
    // phi1 = (0,1): A = iso I + 2(1-delta) ratio e_y e_y^T
    CHECK(A(0, 0) == doctest::Approx(iso).epsilon(1e-9));
    CHECK(A(1, 1) == doctest::Approx(iso + 2.0 * (1.0 - p.delta) * ratio).epsilon(1e-9));
    CHECK(A(0, 1) == doctest::Approx(0.0));

    // dominant eigenvector of A is the water tensor's phi1
    Eigen::SelfAdjointEigenSolver<Mat2> eig(A);
    const Vec2 dominant = eig.eigenvectors().col(1);
    CHECK(std::abs(dominant.dot(Vec2(0.0, 1.0))) == doctest::Approx(1.0));
  }
  SUBCASE("trace is 2 r^2 / mu regardless of anisotropy") {
    for (int i = 0; i < 200; ++i) {
      TensorParams p;
      p.kappa = uniform(0.0, 100.0);
      p.delta = uniform(0.01, 1.0);
      p.speed = uniform(0.5, 3.0);
      p.turning = uniform(0.5, 3.0);
      const Mat2 A = diffusion_tensor(Vec2(uniform(-20, 20), uniform(-20, 20)), p);
      CHECK(A.trace() ==
            doctest::Approx(2.0 * p.speed * p.speed / p.turning).epsilon(1e-12));
      Eigen::SelfAdjointEigenSolver<Mat2> eig(A);
      CHECK(eig.eigenvalues()[0] > 0.0);
    }
  }
  SUBCASE("invalid parameters") {
    TensorParams p;
    p.turning = 0.0;
    CHECK_THROWS_AS(diffusion_tensor(Vec2(0, 0), p), InvalidParams);
    p.turning = 1.0;
    p.delta = 1.5;
    CHECK_THROWS_AS(diffusion_tensor(Vec2(0, 0), p), InvalidParams);
    p.delta = 0.0;
    CHECK_THROWS_AS(diffusion_tensor(Vec2(0, 0), p), InvalidParams);
  }
}

TEST_CASE("reaction terms") {
  SUBCASE("bistable roots and values") {
    const ReactionTerm F = ReactionTerm::bistable(1.0, 0.1);
    CHECK(F.eval(0.0) == 0.0);
    CHECK(F.eval(0.1) == doctest::Approx(0.0));
    CHECK(F.eval(1.0) == doctest::Approx(0.0));
    CHECK(F.eval(0.5) == doctest::Approx(0.1));  // 0.5 * 0.5 * 0.4
  }
  SUBCASE("logistic and exponential") {
    CHECK(ReactionTerm::logistic(2.0).eval(0.5) == doctest::Approx(0.5));
    CHECK(ReactionTerm::exponential(3.0).eval(0.25) == doctest::Approx(0.75));
  }
  SUBCASE("custom polynomial evaluation and derivative") {
    // F(s) = 1 - 2 s + 3 s^3
    const ReactionTerm F = ReactionTerm::custom({1.0, -2.0, 0.0, 3.0});
    CHECK(F.eval(2.0) == doctest::Approx(1.0 - 4.0 + 24.0));
    CHECK(F.derivative(2.0) == doctest::Approx(-2.0 + 36.0));
  }
  SUBCASE("derivative matches central differences") {
    const ReactionTerm F = ReactionTerm::bistable(1.7, 0.3);
    for (int i = 0; i < 100; ++i) {
      const double s = uniform(-1.0, 2.0);
      const double h = 1e-6;
      const double fd = (F.eval(s + h) - F.eval(s - h)) / (2.0 * h);
      CHECK(F.derivative(s) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
  SUBCASE("clamping freezes the term outside the window") {
    const ReactionTerm F = ReactionTerm::bistable(1.0, 0.1);
    CHECK(F.eval_clamped(2.0) == doctest::Approx(F.eval(1.5)));
    CHECK(F.eval_clamped(-1.0) == doctest::Approx(F.eval(-0.5)));
    CHECK(F.eval_clamped(0.7) == doctest::Approx(F.eval(0.7)));
    CHECK(F.derivative_clamped(2.0) == 0.0);
    CHECK(F.derivative_clamped(0.7) == doctest::Approx(F.derivative(0.7)));
  }
  SUBCASE("none is identically zero") {
    CHECK(ReactionTerm::none().eval(0.7) == 0.0);
    CHECK(ReactionTerm::none().derivative(0.7) == 0.0);
    CHECK(ReactionTerm::none().is_zero());
  }
  SUBCASE("invalid threshold") {
    CHECK_THROWS_AS(ReactionTerm::bistable(1.0, 0.0), InvalidParams);
    CHECK_THROWS_AS(ReactionTerm::bistable(1.0, 1.0), InvalidParams);
  }
}

TEST_CASE("tumour initial data") {
  // peak amplitudes dominate at the four centres
  CHECK(glioma_initial(Vec2(1.0, 3.0)) == doctest::Approx(0.8).epsilon(0.01));
  CHECK(glioma_initial(Vec2(10.0, -9.0)) == doctest::Approx(0.75).epsilon(1e-4));
  CHECK(glioma_initial(Vec2(-3.0, -4.0)) == doctest::Approx(0.6).epsilon(0.01));
  CHECK(glioma_initial(Vec2(-5.0, 1.0)) == doctest::Approx(0.5).epsilon(0.01));
  CHECK(glioma_initial(Vec2(1.0, 3.0)) > 0.8);  // tails only add
  // far field decays below 1e-6
  CHECK(glioma_initial(Vec2(-20.0, -20.0)) < 1e-6);
  CHECK(glioma_initial(Vec2(20.0, 20.0)) < 1e-6);
}

TEST_CASE("diffusion fields") {
  const DiffusionField anis = DiffusionField::from_params(TensorParams{10.0, 0.05, 1.0, 1.0});
  CHECK_FALSE(anis.time_dependent);
  const Mat2 A = anis.at(Vec2(0.0, 10.0));
  CHECK(A(1, 1) > A(0, 0));  // dominant direction along phi1 = e_y there
  const DiffusionField iso = DiffusionField::isotropic(2.5);
  CHECK(iso.at(Vec2(1, 1))(0, 0) == 2.5);
}
