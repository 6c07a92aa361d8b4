#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "bcv/app/report.hpp"
#include "bcv/immersion.hpp"
#include "bcv/rotation.hpp"

namespace bcv::app {

/// frame, ricci, submersion, gauss-codazzi, biconservative, theorem44, theorem52.
const std::vector<std::string>& suite_registry();
bool is_known_suite(std::string_view name);

/// Runs one suite; throws std::invalid_argument for names outside the registry.
std::vector<SuiteEntry> run_suite(std::string_view name, const BcvParams& params,
                                  std::uint64_t seed);

/// Empty `names` selects every suite, in registry order.
VerifyReport run_verify(const BcvParams& params, const std::vector<std::string>& names,
                        std::uint64_t seed);

// ---- oracles and fixtures shared with the tests ---------------------------

/// Length scale that keeps fixtures well inside the domain: min(1, 1/sqrt|kappa|).
double fixture_scale(const BcvParams& params);

/// Uniform points with F >= 0.25 and |z| <= 2.
std::vector<Eigen::Vector3d> random_points(const BcvParams& params, std::size_t count,
                                           std::uint64_t seed);

/// Ricci tensor in {E1, E2, E3} assembled from finite differences of the
/// finite-difference Christoffel symbols.
Eigen::Matrix3d ricci_fd_frame(const BcvParams& params, const AmbientPoint& p);

struct NamedSurface {
  std::string label;
  ParametricSurface surface;
};

/// Hopf cylinders r0 in {0.5, 1, 2} (those inside the domain), a generic
/// revolution surface and a Hopf tube over an ellipse.
std::vector<NamedSurface> structural_surfaces(const BcvParams& params);
std::vector<double> admissible_cylinder_radii(const BcvParams& params);

/// Non-CMC, non-constant-angle profile used wherever a generic revolution
/// surface is needed.
ProfileCurve generic_profile(const BcvParams& params);
/// Constant mean curvature profile f = mean_curvature.
ProfileCurve cmc_profile(const BcvParams& params, double mean_curvature);

/// Evenly spaced interior grid (endpoints excluded) of a parameter domain.
std::vector<Eigen::Vector2d> interior_grid(const ParameterDomain& domain, int nu, int nv);

/// log2(|y_h - y_{h/2}| / |y_{h/2} - y_{h/4}|) for the branch flow from init to s_end.
double observed_rk4_order(const BcvParams& params, const ProfileState& init, double s_end,
                          double h);

/// Consecutive sample pairs where R1 and the obstruction disagree about a
/// zero crossing; values below `window` count as zero.
std::size_t zero_set_mismatches(const BranchTrajectory& trajectory, double window = 1e-8);

}  // namespace bcv::app
