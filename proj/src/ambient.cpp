#include "bcv/ambient.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>
#include <unsupported/Eigen/AutoDiff>

namespace bcv {

namespace {

bool near_zero(double value) { return std::abs(value) < kSpaceFormTolerance; }

template <typename T>
Eigen::Matrix<T, 3, 3> metric_coefficients(const BcvParams& params, const T& x,
                                           const T& y) {
  const T f = T(1.0) + T(0.25 * params.kappa) * (x * x + y * y);
  const T inv_f = T(1.0) / f;
  // dz + tau (y dx - x dy) / F
  const Eigen::Matrix<T, 3, 1> w(T(params.tau) * y * inv_f,
                                 T(-params.tau) * x * inv_f, T(1.0));
  Eigen::Matrix<T, 3, 3> g = w * w.transpose();
  g(0, 0) += inv_f * inv_f;
  g(1, 1) += inv_f * inv_f;
  return g;
}

Christoffel koszul(const Eigen::Matrix3d& g, const std::array<Eigen::Matrix3d, 3>& dg) {
  const Eigen::Matrix3d g_inv = g.inverse();
  // lowered(l)(i, j) = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
  std::array<Eigen::Matrix3d, 3> lowered;
  for (int l = 0; l < 3; ++l) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        lowered[l](i, j) = 0.5 * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
      }
    }
  }
  Christoffel gamma;
  for (int k = 0; k < 3; ++k) {
    gamma[k].setZero();
    for (int l = 0; l < 3; ++l) gamma[k] += g_inv(k, l) * lowered[l];
  }
  return gamma;
}

double scaled_step(double relative, double coordinate) {
  return relative * std::max(1.0, std::abs(coordinate));
}

void require_same_base(const AmbientPoint& p, const TangentVector& a) {
  if (!(a.base == p)) {
    throw std::invalid_argument("tangent vector is not based at the evaluation point");
  }
}

}  // namespace

BcvParams BcvParams::make(double kappa, double tau) {
  if (!std::isfinite(kappa) || !std::isfinite(tau)) {
    throw std::invalid_argument("kappa and tau must be finite");
  }
  return BcvParams{kappa, tau};
}

bool BcvParams::is_space_form() const {
  return std::abs(kappa - 4.0 * tau * tau) < kSpaceFormTolerance;
}

std::string_view to_string(GeometryClass cls) {
  switch (cls) {
    case GeometryClass::Euclidean: return "E3";
    case GeometryClass::SphereMinusPoint: return "S3 minus a point";
    case GeometryClass::SphereTimesLine: return "(S2 minus a point) x R";
    case GeometryClass::HyperbolicTimesLine: return "H2 x R";
    case GeometryClass::SU2MinusPoint: return "SU(2) minus a point";
    case GeometryClass::SL2RCover: return "universal cover of SL(2,R)";
    case GeometryClass::Nil3: return "Nil3";
  }
  return "unknown";
}

double smoothing_factor(const BcvParams& params, double x, double y) {
  return 1.0 + 0.25 * params.kappa * (x * x + y * y);
}

GeometryClass classify_space(const BcvParams& params) {
  const bool flat_base = near_zero(params.kappa);
  const bool untwisted = near_zero(params.tau);
  if (flat_base && untwisted) return GeometryClass::Euclidean;
  if (params.is_space_form()) return GeometryClass::SphereMinusPoint;
  if (untwisted) {
    return params.kappa > 0 ? GeometryClass::SphereTimesLine
                            : GeometryClass::HyperbolicTimesLine;
  }
  if (flat_base) return GeometryClass::Nil3;
  return params.kappa > 0 ? GeometryClass::SU2MinusPoint : GeometryClass::SL2RCover;
}

AmbientPoint::AmbientPoint(const BcvParams& params, double x, double y, double z)
    : AmbientPoint(params, Eigen::Vector3d(x, y, z)) {}

AmbientPoint::AmbientPoint(const BcvParams& params, const Eigen::Vector3d& coords)
    : coords_(coords) {
  if (!coords.allFinite()) throw DomainError("non-finite coordinates");
  const double f = smoothing_factor(params, coords.x(), coords.y());
  if (!(f > kDomainEpsilon)) {
    throw DomainError("point (" + std::to_string(coords.x()) + ", " +
                      std::to_string(coords.y()) + ", " + std::to_string(coords.z()) +
                      ") lies outside F > 1e-9 (F = " + std::to_string(f) + ")");
  }
}

TangentVector::TangentVector(const AmbientPoint& at, const Eigen::Vector3d& components)
    : base(at), v(components) {
  if (!components.allFinite()) {
    throw std::invalid_argument("tangent vector components must be finite");
  }
}

TangentVector& TangentVector::operator+=(const TangentVector& other) {
  require_same_base(base, other);
  v += other.v;
  return *this;
}

TangentVector& TangentVector::operator-=(const TangentVector& other) {
  require_same_base(base, other);
  v -= other.v;
  return *this;
}

TangentVector& TangentVector::operator*=(double s) {
  v *= s;
  return *this;
}

TangentVector operator+(TangentVector a, const TangentVector& b) { return a += b; }
TangentVector operator-(TangentVector a, const TangentVector& b) { return a -= b; }
TangentVector operator*(double s, TangentVector a) { return a *= s; }

Eigen::Matrix3d metric_matrix(const BcvParams& params, const AmbientPoint& p) {
  return metric_coefficients<double>(params, p.x(), p.y());
}

double metric_eval(const BcvParams& params, const AmbientPoint& p,
                   const TangentVector& a, const TangentVector& b) {
  require_same_base(p, a);
  require_same_base(p, b);
  return a.v.dot(metric_matrix(params, p) * b.v);
}

double norm(const BcvParams& params, const TangentVector& a) {
  return std::sqrt(std::max(0.0, metric_eval(params, a.base, a, a)));
}

std::array<TangentVector, 3> frame_at(const BcvParams& params, const AmbientPoint& p) {
  const double f = smoothing_factor(params, p.x(), p.y());
  return {TangentVector(p, {f, 0.0, -params.tau * p.y()}),
          TangentVector(p, {0.0, f, params.tau * p.x()}),
          TangentVector(p, {0.0, 0.0, 1.0})};
}

Eigen::Vector3d to_frame(const BcvParams& params, const AmbientPoint& p,
                         const Eigen::Vector3d& c) {
  const double f = smoothing_factor(params, p.x(), p.y());
  return {c.x() / f, c.y() / f,
          c.z() + params.tau * (p.y() * c.x() - p.x() * c.y()) / f};
}

Eigen::Vector3d from_frame(const BcvParams& params, const AmbientPoint& p,
                           const Eigen::Vector3d& a) {
  const double f = smoothing_factor(params, p.x(), p.y());
  return {f * a.x(), f * a.y(),
          a.z() + params.tau * (p.x() * a.y() - p.y() * a.x())};
}

Christoffel christoffel_fd(const BcvParams& params, const AmbientPoint& p,
                           double relative_step) {
  std::array<Eigen::Matrix3d, 3> dg;
  for (int l = 0; l < 3; ++l) {
    const double h = scaled_step(relative_step, p.coords()[l]);
    Eigen::Vector3d plus = p.coords();
    Eigen::Vector3d minus = p.coords();
    plus[l] += h;
    minus[l] -= h;
    dg[l] = (metric_matrix(params, AmbientPoint(params, plus)) -
             metric_matrix(params, AmbientPoint(params, minus))) /
            (2.0 * h);
  }
  return koszul(metric_matrix(params, p), dg);
}

Christoffel christoffel_exact(const BcvParams& params, const AmbientPoint& p) {
  using Scalar = Eigen::AutoDiffScalar<Eigen::Vector2d>;
  const Scalar x(p.x(), 2, 0);
  const Scalar y(p.y(), 2, 1);
  const Eigen::Matrix<Scalar, 3, 3> g = metric_coefficients<Scalar>(params, x, y);
  Eigen::Matrix3d value;
  std::array<Eigen::Matrix3d, 3> dg;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      value(i, j) = g(i, j).value();
      dg[0](i, j) = g(i, j).derivatives()[0];
      dg[1](i, j) = g(i, j).derivatives()[1];
      dg[2](i, j) = 0.0;
    }
  }
  return koszul(value, dg);
}

Eigen::Vector3d contract(const Christoffel& gamma, const Eigen::Vector3d& a,
                         const Eigen::Vector3d& b) {
  return {a.dot(gamma[0] * b), a.dot(gamma[1] * b), a.dot(gamma[2] * b)};
}

TangentVector connection(const BcvParams& params, const AmbientPoint& p,
                         const TangentVector& x, const VectorField& y,
                         const ConnectionSteps& steps) {
  require_same_base(p, x);
  const Eigen::Vector3d y_here = y(p);
  Eigen::Vector3d derivative = Eigen::Vector3d::Zero();
  const double size = x.v.lpNorm<Eigen::Infinity>();
  if (size > 0.0) {
    const double t = scaled_step(steps.field_step, p.coords().lpNorm<Eigen::Infinity>()) / size;
    derivative = (y(AmbientPoint(params, p.coords() + t * x.v)) -
                  y(AmbientPoint(params, p.coords() - t * x.v))) /
                 (2.0 * t);
  }
  const Christoffel gamma = christoffel_fd(params, p, steps.metric_step);
  return TangentVector(p, derivative + contract(gamma, x.v, y_here));
}

double ricci(const BcvParams& params, const AmbientPoint& p, const TangentVector& a,
             const TangentVector& b) {
  require_same_base(p, a);
  require_same_base(p, b);
  const Eigen::Vector3d fa = to_frame(params, p, a.v);
  const Eigen::Vector3d fb = to_frame(params, p, b.v);
  const double horizontal = params.kappa - 2.0 * params.tau * params.tau;
  const double vertical = 2.0 * params.tau * params.tau;
  return horizontal * (fa.x() * fb.x() + fa.y() * fb.y()) + vertical * fa.z() * fb.z();
}

Eigen::Vector2d hopf_project(const AmbientPoint& p) { return {p.x(), p.y()}; }

Eigen::Vector2d hopf_differential(const TangentVector& a) { return {a.v.x(), a.v.y()}; }

double base_norm(const BcvParams& params, const Eigen::Vector2d& base,
                 const Eigen::Vector2d& w) {
  return w.norm() / smoothing_factor(params, base.x(), base.y());
}

}  // namespace bcv
