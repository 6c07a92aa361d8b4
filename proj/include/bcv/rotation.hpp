#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "bcv/ambient.hpp"
#include "bcv/immersion.hpp"

namespace bcv {

/// Smallest admissible profile radius.
inline constexpr double kRadiusEpsilon = 1e-8;

/// Point of an arc-length profile curve in the orbit space {(r, z) : r >= 0}.
/// The arc-length constraint is carried by sigma: r' = F cos(sigma) and
/// z' = sin(sigma) sqrt(1 + tau^2 r^2).
struct ProfileState {
  double s = 0.0;
  double r = 1.0;
  double z = 0.0;
  double sigma = 0.0;
};

/// Throws DomainError unless r > kRadiusEpsilon and F(r) > kDomainEpsilon.
void validate(const BcvParams& params, const ProfileState& state);

double radial_factor(const BcvParams& params, double r);   ///< F(r) = 1 + kappa r^2 / 4
double twist_factor(const BcvParams& params, double r);    ///< sqrt(1 + tau^2 r^2)
double profile_r_prime(const BcvParams& params, const ProfileState& state);
double profile_z_prime(const BcvParams& params, const ProfileState& state);

/// diag(1 / F^2, 1 / (1 + tau^2 r^2)).
Eigen::Matrix2d orbit_metric(const BcvParams& params, double r);

/// cos(alpha) of the revolution surface; T = a X_theta + b X_s and
/// J T = c X_theta + d X_s.
struct ReducedCoefficients {
  double cos_alpha = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  double sin_sigma = 0.0;
  double cos_sigma = 0.0;

  double sin_alpha_squared() const { return 1.0 - cos_alpha * cos_alpha; }
};

ReducedCoefficients reduced_quantities(const BcvParams& params, const ProfileState& state);

/// f = (1/r - kappa r / 4) sin(sigma) + sigma'.
double reduced_mean_curvature(const BcvParams& params, const ProfileState& state,
                              double sigma_prime);

/// d/ds cos(alpha) along the profile.
double cos_alpha_derivative(const BcvParams& params, const ProfileState& state,
                            double sigma_prime);

struct ReducedResiduals {
  double r1 = 0.0;
  double r2 = 0.0;
};

/// The reduced biconservativity system of a revolution surface:
///   R1 = f' [b f - 2 tau d - 2 (cos alpha)'] - 2 f (4 tau^2 - kappa) cos(alpha) sin^2(alpha)
///   R2 = f' (3 d f - 2 tau b)
ReducedResiduals reduced_bicon_system(const BcvParams& params, const ProfileState& state,
                                      double sigma_prime, double f, double f_prime);

// ---- non-CMC branch -------------------------------------------------------

/// sigma' = sin(sigma) (kappa r / 4 - 1 / (3 r)).
double branch_sigma_rate(const BcvParams& params, double r, double sigma);
/// f = 2 sin(sigma) / (3 r).
double branch_mean_curvature(const ProfileState& state);
/// df/ds along the branch flow: -4 sin(2 sigma) / (9 r^2).
double branch_mean_curvature_derivative(const ProfileState& state);

/// (kappa - 4 tau^2) f (cos 2 sigma - 1 - 2 tau^2 r^2) cos(sigma) with the
/// branch mean curvature. Along the branch R1 equals this product times
/// -2 / (3 (1 + tau^2 r^2)^(3/2)).
double theorem52_obstruction(const BcvParams& params, const ProfileState& state);

struct IntegrationConfig {
  double step = 1e-3;
  int max_steps = 1000000;
  double s_max = 1.0;
};

enum class BranchStatus {
  Completed,               ///< reached s_max
  MaxSteps,                ///< row budget exhausted
  NearAxis,                ///< r dropped below 10 * kRadiusEpsilon
  StepUnderflow,           ///< fixed step no longer resolves the 1/r terms
  DomainExit,              ///< F(r) <= kDomainEpsilon or non-finite state
  SelfConsistencyFailure,  ///< closed-form f' disagrees with its FD check
};

std::string_view to_string(BranchStatus status);

struct BranchSample {
  double s = 0.0;
  double r = 0.0;
  double z = 0.0;
  double sigma = 0.0;
  double f = 0.0;
  double f_prime = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double obstruction = 0.0;
};

struct BranchTrajectory {
  std::vector<BranchSample> samples;
  BranchStatus status = BranchStatus::Completed;
  /// max |y_h - y_{h/2}| over the run (step-halved shadow integration).
  double shadow_error = 0.0;
  std::vector<std::string> warnings;
};

/// Fixed-step RK4 integration of the branch ODE (r, z, sigma) from init.
/// Throws DomainError if init itself is invalid.
BranchTrajectory integrate_noncmc_branch(const BcvParams& params, const ProfileState& init,
                                         const IntegrationConfig& config);

// ---- profile curves and surface constructors ------------------------------

/// sigma' as a function of (s, r, sigma).
using SigmaRate = std::function<double(double s, double r, double sigma)>;

/// One classical RK4 step of the profile ODE (r, z, sigma).
ProfileState profile_rk4_step(const BcvParams& params, const ProfileState& state,
                              const SigmaRate& rate, double h);

struct ProfileCurve {
  std::function<ProfileState(double s)> state;
  std::function<double(double s)> sigma_prime;
  double s_min = 0.0;
  double s_max = 1.0;
  /// X_s is rebuilt from sigma when true; otherwise the chart is differenced.
  bool exact_tangent = true;
};

/// r = r0, sigma = pi/2: the profile of a Hopf circular cylinder.
ProfileCurve vertical_profile(const BcvParams& params, double r0, double s_min, double s_max);

/// Profile driven by sigma' = rate(s, r, sigma) from init. state(s) runs
/// `substeps` RK4 steps of size (s - init.s) / substeps, so it is a smooth
/// function of s.
ProfileCurve integrated_profile(const BcvParams& params, const ProfileState& init,
                                SigmaRate rate, double s_max, int substeps = 256);

/// Round sphere of radius R in E^3 (kappa = tau = 0), s in [0, pi R].
ProfileCurve round_sphere_profile(double radius);

/// Piecewise cubic Hermite interpolation of sampled states (rows sorted by s).
ProfileCurve sampled_profile(const BcvParams& params, std::vector<ProfileState> rows);

/// Chart (theta, s) -> (r(s) cos theta, r(s) sin theta, z(s)); the normal
/// is normalize(X_s x X_theta).
ParametricSurface revolution_surface(const BcvParams& params, const ProfileCurve& profile);

ParametricSurface hopf_cylinder(const BcvParams& params, double r0, double height = 1.0);

struct BaseCurve {
  std::function<Eigen::Vector2d(double)> point;
  std::function<Eigen::Vector2d(double)> d1;
  std::function<Eigen::Vector2d(double)> d2;
  double t0 = 0.0;
  double t1 = 1.0;
};

BaseCurve circle_curve(double radius);
BaseCurve ellipse_curve(double semi_x, double semi_y);
/// Catmull-Rom spline through the points, parameter = point index.
BaseCurve sampled_curve(std::vector<Eigen::Vector2d> points);

/// Vertical cylinder (t, h) -> (x(t), y(t), h) over a base curve; the normal
/// is the horizontal lift of the left normal of the base curve.
ParametricSurface hopf_tube(const BcvParams& params, const BaseCurve& curve,
                            double height = 1.0);

/// Signed geodesic curvature of the base curve in (R^2, (dx^2 + dy^2) / F^2)
/// with respect to its left normal.
double base_geodesic_curvature(const BcvParams& params, const BaseCurve& curve, double t);

}  // namespace bcv
