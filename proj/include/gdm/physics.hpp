// Model data for glioma growth in anisotropic brain tissue: the synthetic
// water diffusion tensor, the fractional-anisotropy-driven tumour diffusion
// tensor, polynomial reaction terms and the multi-Gaussian initial density.

#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "gdm/errors.hpp"
#include "gdm/mesh.hpp"

namespace gdm {

// Parameters of the tumour diffusion tensor: anisotropy sensitivity kappa,
// isotropic floor delta in (0,1], mean cell speed r, turning rate mu.
struct TensorParams {
  double kappa = 0.0;
  double delta = 0.05;
  double speed = 1.0;    // r
  double turning = 1.0;  // mu, must be positive

  void validate() const;
};

// Water diffusion tensor with its eigendecomposition; lambda1 >= lambda2 and
// phi1 is the dominant direction. Equal eigenvalues make phi1 conventional
// (the anisotropic term is then multiplied by zero anyway).
struct WaterTensor {
  Mat2 tensor;
  double lambda1 = 0.0, lambda2 = 0.0;
  Vec2 phi1, phi2;
};

/// Synthetic water tensor diag(0.5 - d, 0.5 + d) with
/// d(x,y) = 0.25 exp(-0.05 x^2) - 0.25 exp(-0.5 y^2).
WaterTensor water_tensor(const Vec2& x);

/// |l1 - l2| / sqrt(l1^2 + l2^2), in [0,1]. Throws ZeroTensor if both vanish.
double fractional_anisotropy(double lambda1, double lambda2);

/// I_2(M)/I_0(M) for M >= 0: power series up to M = 20, asymptotic expansion
/// of the scaled functions beyond. Monotone increasing, in [0,1).
double bessel_ratio(double M);

/// Tumour diffusion tensor
///   A(x) = (r^2/mu) [ (delta + (1-delta)(1 - I2/I0(M))) Id
///                     + 2 (1-delta) (I2/I0(M)) phi1 phi1^T ],
/// with M = kappa * F_anis(DT(x)). Always symmetric positive definite;
/// trace(A) = 2 r^2 / mu independently of M.
Mat2 diffusion_tensor(const Vec2& x, const TensorParams& params);

// Reaction term F(c): one of the stock shapes or a custom polynomial given by
// its coefficient list (constant term first). The clamped variants freeze F
// outside [-0.5, 1.5] at the boundary values, restoring a linear growth bound
// that the cubic bistable term lacks globally.
struct ReactionTerm {
  enum class Kind { none, exponential, logistic, bistable, custom };

  Kind kind = Kind::none;
  double rho = 1.0;    // proliferation rate
  double alpha = 0.1;  // bistable colonisation threshold, in (0,1)
  std::vector<double> coefficients;  // custom polynomial only

  double eval(double s) const;
  double derivative(double s) const;
  double eval_clamped(double s) const;
  double derivative_clamped(double s) const;

  bool is_zero() const { return kind == Kind::none; }

  static ReactionTerm none() { return {}; }
  static ReactionTerm exponential(double rho);
  static ReactionTerm logistic(double rho);
  static ReactionTerm bistable(double rho, double alpha);
  static ReactionTerm custom(std::vector<double> coefficients);
};

inline constexpr double kReactionClampLo = -0.5;
inline constexpr double kReactionClampHi = 1.5;

/// Initial tumour density: four distorted Gaussians.
double glioma_initial(const Vec2& x);

// Spatial diffusion tensor field, optionally time dependent.
struct DiffusionField {
  std::function<Mat2(const Vec2&, double)> tensor;
  bool time_dependent = false;

  Mat2 at(const Vec2& x, double t = 0.0) const { return tensor(x, t); }

  static DiffusionField identity();
  static DiffusionField constant(const Mat2& A);
  static DiffusionField isotropic(double value);
  static DiffusionField from_params(const TensorParams& params);
};

}  // namespace gdm
