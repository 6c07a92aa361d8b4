#pragma once

#include <array>
#include <functional>
#include <optional>
#include <utility>

#include <Eigen/Core>
#include <Eigen/LU>

#include "bcv/ambient.hpp"

namespace bcv {

/// Below this value of sin(alpha) the adapted frame {e1, e2} is not formed.
inline constexpr double kAngleEpsilon = 1e-7;
/// Minimal Gram determinant of the first fundamental form.
inline constexpr double kGramEpsilon = 1e-12;
/// Default parameter step of the surface finite-difference stencils.
inline constexpr double kSurfaceStep = 2e-3;

struct ParameterDomain {
  double u0 = 0.0;
  double u1 = 1.0;
  double v0 = 0.0;
  double v1 = 1.0;

  bool contains(double u, double v) const {
    return u >= u0 && u <= u1 && v >= v0 && v <= v1;
  }
};

using ChartMap = std::function<Eigen::Vector3d(double u, double v)>;
using ChartPartials = std::function<std::array<Eigen::Vector3d, 2>(double u, double v)>;
using ScalarField = std::function<double(double u, double v)>;

/// A chart (u, v) -> (x, y, z) of an immersed surface. The unit normal is
/// orientation * normalize(X_u x X_v), the cross product taken in the
/// positively oriented frame {E1, E2, E3}.
class ParametricSurface {
 public:
  ParametricSurface(ChartMap chart, ParameterDomain domain, ChartPartials partials = {},
                    int orientation = 1, double step = kSurfaceStep);

  AmbientPoint point(const BcvParams& params, double u, double v) const;
  /// Coordinate components of X_u and X_v (analytic when supplied).
  std::array<Eigen::Vector3d, 2> tangents(double u, double v) const;

  const ParameterDomain& domain() const { return domain_; }
  int orientation() const { return orientation_; }
  double step() const { return step_; }
  bool has_analytic_partials() const { return static_cast<bool>(partials_); }

  ParametricSurface flipped() const;

 private:
  ChartMap chart_;
  ParameterDomain domain_;
  ChartPartials partials_;
  int orientation_;
  double step_;
};

/// First-order data of a surface at one parameter value.
struct SurfaceJet {
  AmbientPoint p;
  TangentVector x_u;
  TangentVector x_v;
  Eigen::Matrix2d first_form;
  TangentVector normal;
  double cos_alpha;
  double sin_alpha;
  TangentVector t;   ///< tangential part of E3
  TangentVector jt;  ///< N wedge T
  std::optional<TangentVector> e1;
  std::optional<TangentVector> e2;

  // Components in {E1, E2, E3}; the metric is the dot product there.
  Eigen::Vector3d xu_frame;
  Eigen::Vector3d xv_frame;
  Eigen::Vector3d normal_frame;
  Eigen::Vector3d t_frame;
  Eigen::Vector3d jt_frame;

  bool adapted() const { return e1.has_value(); }
  double alpha() const;
  Eigen::Vector3d e1_frame() const;
  Eigen::Vector3d e2_frame() const;
  /// Coefficients (c_u, c_v) with w = c_u X_u + c_v X_v for tangent w.
  Eigen::Vector2d chart_coefficients(const Eigen::Vector3d& tangent_frame) const;
  Eigen::Vector3d from_chart(const Eigen::Vector2d& coefficients) const;
  /// J w = N wedge w.
  Eigen::Vector3d rotate(const Eigen::Vector3d& tangent_frame) const;
  /// Drop the normal component.
  Eigen::Vector3d tangential(const Eigen::Vector3d& frame_vector) const;
};

SurfaceJet surface_jet(const ParametricSurface& surface, const BcvParams& params,
                       double u, double v);

/// Shape operator A X = -(nabla_X N)^T.
struct ShapeData {
  /// Matrix of A in {e1, e2}, or in a Gram-Schmidt basis of {X_u, X_v}
  /// when the adapted frame is absent. Column j holds A(b_j).
  Eigen::Matrix2d a;
  double lambda = 0.0;  ///< g(A e2, e2)
  double f = 0.0;       ///< trace A
  bool adapted = false;
  /// B(i, j) = g(A X_i, X_j) in the chart basis.
  Eigen::Matrix2d second_form;
  /// A X_j = mixed(0, j) X_u + mixed(1, j) X_v.
  Eigen::Matrix2d mixed;

  double asymmetry() const { return std::abs(a(0, 1) - a(1, 0)); }
  double norm_squared() const { return (a * a).trace(); }
  double determinant() const { return mixed.determinant(); }
};

ShapeData shape_operator(const ParametricSurface& surface, const BcvParams& params,
                         double u, double v);

/// A w for a tangent vector given in frame components.
Eigen::Vector3d apply_shape(const ShapeData& shape, const SurfaceJet& jet,
                            const Eigen::Vector3d& tangent_frame);

ScalarField mean_curvature_field(const ParametricSurface& surface, const BcvParams& params);
ScalarField angle_field(const ParametricSurface& surface, const BcvParams& params);

TangentVector surface_gradient(const ScalarField& field, const ParametricSurface& surface,
                               const BcvParams& params, double u, double v);

/// Delta = -div grad (non-negative spectrum).
double surface_laplacian(const ScalarField& field, const ParametricSurface& surface,
                         const BcvParams& params, double u, double v);

/// (e1 phi, e2 phi) along the adapted frame.
Eigen::Vector2d adapted_derivatives(const ScalarField& field, const ParametricSurface& surface,
                                    const BcvParams& params, double u, double v);

/// Gaussian curvature of the first fundamental form (Brioschi formula).
double intrinsic_curvature(const ParametricSurface& surface, const BcvParams& params,
                           double u, double v);

/// K - det A - tau^2 - (kappa - 4 tau^2) cos^2 alpha.
double gauss_residual(const ParametricSurface& surface, const BcvParams& params,
                      double u, double v);

/// Pointwise values of alpha, lambda and their adapted-frame derivatives.
/// Naming: e1_e2_alpha = e1(e2(alpha)).
struct FrameDerivatives {
  double alpha = 0.0;
  double lambda = 0.0;
  double e1_alpha = 0.0;
  double e2_alpha = 0.0;
  double e1_e1_alpha = 0.0;
  double e1_e2_alpha = 0.0;
  double e2_e1_alpha = 0.0;
  double e2_e2_alpha = 0.0;
  double e1_lambda = 0.0;
  double e2_lambda = 0.0;
};

FrameDerivatives frame_derivatives(const ParametricSurface& surface, const BcvParams& params,
                                   double u, double v);

/// The two scalar Codazzi equations written in the adapted frame.
std::pair<double, double> codazzi_equations(const BcvParams& params, const FrameDerivatives& d);

std::pair<double, double> codazzi_residual(const ParametricSurface& surface,
                                           const BcvParams& params, double u, double v);

struct CompatibilityResidual {
  TangentVector derivative;  ///< (nabla_X T) - cos(alpha) (A X - tau J X)
  double angle = 0.0;        ///< g(A X - tau J X, T) + X(cos alpha)
};

CompatibilityResidual compatibility_residual(const ParametricSurface& surface,
                                             const BcvParams& params, double u, double v,
                                             const TangentVector& x);

/// Surface Levi-Civita derivatives of the adapted frame, as coefficients in
/// {e1, e2}: {nabla_e1 e1, nabla_e2 e1, nabla_e1 e2, nabla_e2 e2}.
std::array<Eigen::Vector2d, 4> adapted_connection(const ParametricSurface& surface,
                                                  const BcvParams& params, double u,
                                                  double v);

}  // namespace bcv
