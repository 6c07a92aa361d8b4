#include "bcv/biconservative.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bcv {

namespace {

constexpr double kCoefficientEpsilon = 1e-12;
constexpr double kNegativeSquareTolerance = 1e-12;

std::array<Eigen::Vector3d, 2> orthonormal_tangents(const SurfaceJet& jet) {
  if (jet.adapted()) return {jet.e1_frame(), jet.e2_frame()};
  const Eigen::Vector3d b1 = jet.xu_frame.normalized();
  return {b1, (jet.xv_frame - jet.xv_frame.dot(b1) * b1).normalized()};
}

double ricci_frame(const BcvParams& params, const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  const double tau2 = params.tau * params.tau;
  return (params.kappa - 2.0 * tau2) * (a.x() * b.x() + a.y() * b.y()) + 2.0 * tau2 * a.z() * b.z();
}

Eigen::Vector3d ricci_normal_tangential_frame(const BcvParams& params, const SurfaceJet& jet) {
  Eigen::Vector3d out = Eigen::Vector3d::Zero();
  for (const Eigen::Vector3d& b : orthonormal_tangents(jet)) {
    out += ricci_frame(params, jet.normal_frame, b) * b;
  }
  return out;
}

}  // namespace

TangentVector ricci_normal_tangential(const BcvParams& params, const SurfaceJet& jet) {
  if (!jet.adapted()) {
    throw DegenerateError("closed-form Ric(N)^T needs sin(alpha) > 1e-7");
  }
  const double coefficient = params.ricci_gap() * jet.cos_alpha * jet.sin_alpha;
  return coefficient * *jet.e1;
}

TangentVector ricci_normal_tangential_generic(const BcvParams& params, const SurfaceJet& jet) {
  return TangentVector(jet.p,
                       from_frame(params, jet.p, ricci_normal_tangential_frame(params, jet)));
}

TangentVector tangential_bitension(const ParametricSurface& surface, const BcvParams& params,
                                   double u, double v) {
  const SurfaceJet jet = surface_jet(surface, params, u, v);
  const ShapeData shape = shape_operator(surface, params, u, v);
  const ScalarField f = mean_curvature_field(surface, params);
  const TangentVector grad = surface_gradient(f, surface, params, u, v);
  const Eigen::Vector3d grad_f = to_frame(params, jet.p, grad.v);
  const Eigen::Vector3d value = 2.0 * apply_shape(shape, jet, grad_f) + shape.f * grad_f -
                                2.0 * shape.f * ricci_normal_tangential_frame(params, jet);
  return TangentVector(jet.p, from_frame(params, jet.p, value));
}

double normal_bitension(const ParametricSurface& surface, const BcvParams& params, double u,
                        double v) {
  const SurfaceJet jet = surface_jet(surface, params, u, v);
  const ShapeData shape = shape_operator(surface, params, u, v);
  const double laplacian =
      surface_laplacian(mean_curvature_field(surface, params), surface, params, u, v);
  const double ric_nn = ricci_frame(params, jet.normal_frame, jet.normal_frame);
  return laplacian + shape.f * shape.norm_squared() - shape.f * ric_nn;
}

std::pair<double, double> frame_system(const BcvParams& params, const FrameDerivatives& d) {
  const double f = d.lambda + d.e1_alpha;
  const double e1_f = d.e1_lambda + d.e1_e1_alpha;
  const double e2_f = d.e2_lambda + d.e2_e1_alpha;
  const double off_diagonal = d.e2_alpha - params.tau;
  const double first = e1_f * (d.lambda + 3.0 * d.e1_alpha) + 2.0 * e2_f * off_diagonal -
                       2.0 * params.ricci_gap() * f * std::cos(d.alpha) * std::sin(d.alpha);
  const double second = 2.0 * e1_f * off_diagonal + (3.0 * d.lambda + d.e1_alpha) * e2_f;
  return {first, second};
}

std::pair<double, double> frame_system_residual(const ParametricSurface& surface,
                                                const BcvParams& params, double u, double v) {
  return frame_system(params, frame_derivatives(surface, params, u, v));
}

BitensionResiduals bitension_residuals(const ParametricSurface& surface,
                                       const BcvParams& params, double u, double v) {
  TangentVector tangential = tangential_bitension(surface, params, u, v);
  BitensionResiduals out{tangential, norm(params, tangential),
                         normal_bitension(surface, params, u, v), std::nullopt};
  if (surface_jet(surface, params, u, v).adapted()) {
    out.frame_pair = frame_system_residual(surface, params, u, v);
  }
  return out;
}

double QuarticReport::evaluate(double lambda) const {
  const double l2 = lambda * lambda;
  return (coefficients[0] * l2 + coefficients[1]) * l2 + coefficients[2];
}

QuarticReport constant_angle_suite(const BcvParams& params, double alpha) {
  if (!(alpha > 0.0 && alpha < std::numbers::pi)) {
    throw std::invalid_argument("constant angle must lie in (0, pi)");
  }
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  const double cot = c / s;
  const double kappa = params.kappa;
  const double tau2 = params.tau * params.tau;

  QuarticReport report;
  report.alpha = alpha;
  report.coefficients = {
      6.0 * cot,
      3.0 * std::sin(2.0 * alpha) * (8.0 * tau2 - kappa) + 8.0 * tau2 * cot * (3.0 * c * c - 1.0),
      -8.0 * tau2 * c * (kappa * s + 4.0 * tau2 * cot * c)};
  const auto [c4, c2, c0] = report.coefficients;
  report.degenerate = std::abs(c4) < kCoefficientEpsilon && std::abs(c2) < kCoefficientEpsilon &&
                      std::abs(c0) < kCoefficientEpsilon;
  if (report.degenerate) return report;

  // Quadratic in mu = lambda^2.
  std::vector<double> squares;
  if (std::abs(c4) < kCoefficientEpsilon) {
    if (std::abs(c2) >= kCoefficientEpsilon) squares.push_back(-c0 / c2);
  } else {
    double disc = c2 * c2 - 4.0 * c4 * c0;
    const double scale = std::max({c2 * c2, std::abs(4.0 * c4 * c0), 1.0});
    if (disc < 0.0 && disc > -kNegativeSquareTolerance * scale) disc = 0.0;
    if (disc >= 0.0) {
      const double q = -0.5 * (c2 + std::copysign(std::sqrt(disc), c2));
      if (q != 0.0) {
        squares.push_back(q / c4);
        squares.push_back(c0 / q);
      } else {
        squares.push_back(0.0);
      }
    }
  }
  for (double mu : squares) {
    if (mu < -kNegativeSquareTolerance) continue;
    if (mu <= 0.0) {
      report.zero_root = true;
      continue;
    }
    const double root = std::sqrt(mu);
    report.real_roots.push_back(-root);
    report.real_roots.push_back(root);
  }
  std::sort(report.real_roots.begin(), report.real_roots.end());
  report.real_roots.erase(std::unique(report.real_roots.begin(), report.real_roots.end()),
                          report.real_roots.end());
  return report;
}

FrameDerivatives constant_angle_datum(const BcvParams& params, double alpha, double lambda) {
  if (lambda == 0.0) throw std::invalid_argument("constant-angle datum needs lambda != 0");
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  const double cot = c / s;
  const double tau2 = params.tau * params.tau;
  FrameDerivatives d;
  d.alpha = alpha;
  d.lambda = lambda;
  d.e1_lambda = -(lambda * lambda * cot + params.kappa * c * s + 4.0 * tau2 * cot * c * c);
  d.e2_lambda = 2.0 * params.tau * d.e1_lambda / (3.0 * lambda);
  return d;
}

}  // namespace bcv
