#include "gdm/physics.hpp"

#include <algorithm>
#include <cmath>

namespace gdm {

void TensorParams::validate() const {
  if (!(turning > 0.0)) throw InvalidParams("turning rate mu must be positive");
  if (!(delta > 0.0 && delta <= 1.0)) throw InvalidParams("delta must lie in (0,1]");
  if (kappa < 0.0) throw InvalidParams("kappa must be nonnegative");
  if (!(speed > 0.0)) throw InvalidParams("speed r must be positive");
}

WaterTensor water_tensor(const Vec2& x) {
  const double d = 0.25 * std::exp(-0.05 * x.x() * x.x()) - 0.25 * std::exp(-0.5 * x.y() * x.y());
  WaterTensor wt;
  wt.tensor = Mat2::Zero();
  wt.tensor(0, 0) = 0.5 - d;
  wt.tensor(1, 1) = 0.5 + d;
  if (d >= 0.0) {
    wt.lambda1 = 0.5 + d;
    wt.lambda2 = 0.5 - d;
    wt.phi1 = Vec2(0.0, 1.0);
    wt.phi2 = Vec2(1.0, 0.0);
  } else {
    wt.lambda1 = 0.5 - d;
    wt.lambda2 = 0.5 + d;
    wt.phi1 = Vec2(1.0, 0.0);
    wt.phi2 = Vec2(0.0, 1.0);
  }
  if (wt.lambda2 < 0.0) throw InvalidParams("water tensor lost positive semidefiniteness");
  return wt;
}

double fractional_anisotropy(double lambda1, double lambda2) {
  if (lambda1 == 0.0 && lambda2 == 0.0) throw ZeroTensor("fractional anisotropy of a zero tensor");
  return std::abs(lambda1 - lambda2) / std::hypot(lambda1, lambda2);
}

namespace {

// ratio of the two power series; the common factor is dropped
double bessel_ratio_series(double M) {
  const double q = 0.25 * M * M;
  // I0 = sum q^k / (k!)^2,  I2 = (M/2)^2 sum q^k / (k! (k+2)!)
  double t0 = 1.0, t2 = 0.5;  // k = 0 terms of the two sums (1/(0! 2!) = 1/2)
  double s0 = t0, s2 = t2;
  for (int k = 1; k < 200; ++k) {
    t0 *= q / (static_cast<double>(k) * k);
    t2 *= q / (static_cast<double>(k) * (k + 2));
    s0 += t0;
    s2 += t2;
    if (t0 < 1e-18 * s0 && t2 < 1e-18 * s2) break;
  }
  return q * s2 / s0;
}

// asymptotic expansion of exp(-M) sqrt(2 pi M) I_nu(M); valid for large M
double bessel_scaled_asymptotic(double M, int nu) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0, sum = 1.0;
  double prev = std::abs(term);
  for (int k = 0; k < 40; ++k) {
    const double odd = 2.0 * k + 1.0;
    term *= -(mu - odd * odd) / (8.0 * M * (k + 1));
    if (std::abs(term) > prev) break;  // past the smallest term
    sum += term;
    prev = std::abs(term);
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

double bessel_ratio(double M) {
  if (M < 0.0) throw InvalidParams("bessel_ratio requires M >= 0");
  if (M == 0.0) return 0.0;
  if (M <= 20.0) return bessel_ratio_series(M);
  return bessel_scaled_asymptotic(M, 2) / bessel_scaled_asymptotic(M, 0);
}

Mat2 diffusion_tensor(const Vec2& x, const TensorParams& params) {
  params.validate();
  const WaterTensor wt = water_tensor(x);
  const double fa = fractional_anisotropy(wt.lambda1, wt.lambda2);
  const double ratio = bessel_ratio(params.kappa * fa);
  const double scale = params.speed * params.speed / params.turning;
  const double iso = params.delta + (1.0 - params.delta) * (1.0 - ratio);
  return scale * (iso * Mat2::Identity() +
                  2.0 * (1.0 - params.delta) * ratio * (wt.phi1 * wt.phi1.transpose()));
}

ReactionTerm ReactionTerm::exponential(double rho) {
  ReactionTerm F;
  F.kind = Kind::exponential;
  F.rho = rho;
  return F;
}

ReactionTerm ReactionTerm::logistic(double rho) {
  ReactionTerm F;
  F.kind = Kind::logistic;
  F.rho = rho;
  return F;
}

ReactionTerm ReactionTerm::bistable(double rho, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidParams("bistable threshold must lie in (0,1)");
  ReactionTerm F;
  F.kind = Kind::bistable;
  F.rho = rho;
  F.alpha = alpha;
  return F;
}

ReactionTerm ReactionTerm::custom(std::vector<double> coefficients) {
  ReactionTerm F;
  F.kind = Kind::custom;
  F.coefficients = std::move(coefficients);
  return F;
}

double ReactionTerm::eval(double s) const {
  switch (kind) {
    case Kind::none: return 0.0;
    case Kind::exponential: return rho * s;
    case Kind::logistic: return rho * s * (1.0 - s);
    case Kind::bistable: return rho * s * (1.0 - s) * (s - alpha);
    case Kind::custom: {
      double v = 0.0;
      for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) v = v * s + *it;
      return v;
    }
  }
  return 0.0;
}

double ReactionTerm::derivative(double s) const {
  switch (kind) {
    case Kind::none: return 0.0;
    case Kind::exponential: return rho;
    case Kind::logistic: return rho * (1.0 - 2.0 * s);
    case Kind::bistable:
      // d/ds [ rho s (1-s)(s-alpha) ]
      return rho * ((1.0 - 2.0 * s) * (s - alpha) + s * (1.0 - s));
    case Kind::custom: {
      double v = 0.0;
      for (std::size_t k = coefficients.size(); k-- > 1;) v = v * s + k * coefficients[k];
      return v;
    }
  }
  return 0.0;
}

double ReactionTerm::eval_clamped(double s) const {
  return eval(std::clamp(s, kReactionClampLo, kReactionClampHi));
}

double ReactionTerm::derivative_clamped(double s) const {
  if (s < kReactionClampLo || s > kReactionClampHi) return 0.0;
  return derivative(s);
}

double glioma_initial(const Vec2& p) {
  const double x = p.x(), y = p.y();
  auto sq = [](double v) { return v * v; };
  return 0.80 * std::exp(-0.10 * sq(x - 1.0) - 0.30 * sq(y - 3.0)) +
         0.75 * std::exp(-0.25 * sq(x - 10.0) - 0.15 * sq(y + 9.0)) +
         0.60 * std::exp(-0.20 * sq(x + 3.0) - 0.50 * sq(y + 4.0)) +
         0.50 * std::exp(-0.25 * sq(x + 5.0) - 0.30 * sq(y - 1.0));
}

DiffusionField DiffusionField::identity() { return constant(Mat2::Identity()); }

DiffusionField DiffusionField::constant(const Mat2& A) {
  DiffusionField field;
  field.tensor = [A](const Vec2&, double) { return A; };
  return field;
}

DiffusionField DiffusionField::isotropic(double value) {
  return constant(value * Mat2::Identity());
}

DiffusionField DiffusionField::from_params(const TensorParams& params) {
  params.validate();
  DiffusionField field;
  field.tensor = [params](const Vec2& x, double) { return diffusion_tensor(x, params); };
  return field;
}

}  // namespace gdm
