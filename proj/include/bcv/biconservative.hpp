#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "bcv/ambient.hpp"
#include "bcv/immersion.hpp"

namespace bcv {

/// Components of the bitension field of a surface at one sample.
struct BitensionResiduals {
  TangentVector tangential;  ///< 2 A(grad f) + f grad f - 2 f Ric(N)^T
  double tangential_norm = 0.0;
  double normal = 0.0;  ///< Delta f + f |A|^2 - f Ric(N, N)
  /// The adapted-frame biconservativity system; present iff sin(alpha) > 1e-7.
  std::optional<std::pair<double, double>> frame_pair;
};

/// (4 tau^2 - kappa) cos(alpha) sin(alpha) e1. Requires the adapted frame.
TangentVector ricci_normal_tangential(const BcvParams& params, const SurfaceJet& jet);

/// Ric(N)^T by expanding N and projecting onto an orthonormal tangent basis;
/// valid for every angle.
TangentVector ricci_normal_tangential_generic(const BcvParams& params, const SurfaceJet& jet);

TangentVector tangential_bitension(const ParametricSurface& surface, const BcvParams& params,
                                   double u, double v);

double normal_bitension(const ParametricSurface& surface, const BcvParams& params, double u,
                        double v);

/// The biconservativity system in the adapted frame, evaluated from a
/// pointwise datum. Its two entries equal g(tau2^T, e1) and g(tau2^T, e2).
std::pair<double, double> frame_system(const BcvParams& params, const FrameDerivatives& d);

std::pair<double, double> frame_system_residual(const ParametricSurface& surface,
                                                const BcvParams& params, double u, double v);

BitensionResiduals bitension_residuals(const ParametricSurface& surface,
                                       const BcvParams& params, double u, double v);

/// Quartic c4 l^4 + c2 l^2 + c0 satisfied by lambda on a biconservative
/// constant-angle surface.
struct QuarticReport {
  double alpha = 0.0;
  std::array<double, 3> coefficients{};  ///< {c4, c2, c0}
  /// Distinct non-zero real roots in increasing order (lambda = 0 is minimal).
  std::vector<double> real_roots;
  bool zero_root = false;
  /// All coefficients vanish (alpha = pi/2); lambda is then constant by the
  /// separate linear system rather than by the quartic.
  bool degenerate = false;

  double evaluate(double lambda) const;
};

QuarticReport constant_angle_suite(const BcvParams& params, double alpha);

/// Pointwise datum of a constant-angle biconservative surface: all alpha
/// derivatives vanish, e1(lambda) follows from Codazzi and e2(lambda) from the
/// second biconservativity equation.
FrameDerivatives constant_angle_datum(const BcvParams& params, double alpha, double lambda);

}  // namespace bcv
