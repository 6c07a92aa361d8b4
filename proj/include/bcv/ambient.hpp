#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <string_view>

#include <Eigen/Core>

namespace bcv {

/// Smallest admissible value of F = 1 + (kappa/4)(x^2 + y^2).
inline constexpr double kDomainEpsilon = 1e-9;
inline constexpr double kSpaceFormTolerance = 1e-12;

/// A point or surface chart left the open set F > kDomainEpsilon.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A quantity was requested where its defining frame or chart degenerates.
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The pair (kappa, tau) selecting one member of the BCV family.
struct BcvParams {
  double kappa = 0.0;
  double tau = 0.0;

  /// Validating factory; both values must be finite.
  static BcvParams make(double kappa, double tau);

  bool is_space_form() const;
  /// The factor 4 tau^2 - kappa carried by the tangential Ricci term.
  double ricci_gap() const { return 4.0 * tau * tau - kappa; }
};

enum class GeometryClass {
  Euclidean,
  SphereMinusPoint,
  SphereTimesLine,
  HyperbolicTimesLine,
  SU2MinusPoint,
  SL2RCover,
  Nil3,
};

std::string_view to_string(GeometryClass cls);

double smoothing_factor(const BcvParams& params, double x, double y);

GeometryClass classify_space(const BcvParams& params);

/// Cartesian point of N_{kappa,tau}. Construction enforces F > kDomainEpsilon.
class AmbientPoint {
 public:
  AmbientPoint(const BcvParams& params, double x, double y, double z);
  AmbientPoint(const BcvParams& params, const Eigen::Vector3d& coords);

  const Eigen::Vector3d& coords() const { return coords_; }
  double x() const { return coords_.x(); }
  double y() const { return coords_.y(); }
  double z() const { return coords_.z(); }

  bool operator==(const AmbientPoint& other) const {
    return coords_ == other.coords_;
  }

 private:
  Eigen::Vector3d coords_;
};

/// Vector in the coordinate basis (d/dx, d/dy, d/dz) at a base point.
struct TangentVector {
  AmbientPoint base;
  Eigen::Vector3d v;

  TangentVector(const AmbientPoint& at, const Eigen::Vector3d& components);

  TangentVector& operator+=(const TangentVector& other);
  TangentVector& operator-=(const TangentVector& other);
  TangentVector& operator*=(double s);
};

TangentVector operator+(TangentVector a, const TangentVector& b);
TangentVector operator-(TangentVector a, const TangentVector& b);
TangentVector operator*(double s, TangentVector a);

/// Metric coefficients g_ij in the coordinate basis.
Eigen::Matrix3d metric_matrix(const BcvParams& params, const AmbientPoint& p);

double metric_eval(const BcvParams& params, const AmbientPoint& p,
                   const TangentVector& a, const TangentVector& b);
double norm(const BcvParams& params, const TangentVector& a);

/// E1 = F d/dx - tau y d/dz, E2 = F d/dy + tau x d/dz, E3 = d/dz.
std::array<TangentVector, 3> frame_at(const BcvParams& params,
                                      const AmbientPoint& p);

/// Components of a coordinate vector in the orthonormal frame {E1, E2, E3}.
/// The metric is the Euclidean dot product in these components.
Eigen::Vector3d to_frame(const BcvParams& params, const AmbientPoint& p,
                         const Eigen::Vector3d& coordinate_components);
Eigen::Vector3d from_frame(const BcvParams& params, const AmbientPoint& p,
                           const Eigen::Vector3d& frame_components);

/// gamma[k](i, j) = Gamma^k_ij in coordinates.
using Christoffel = std::array<Eigen::Matrix3d, 3>;

/// Koszul formula with central finite differences of the metric
/// (step 1e-5 * max(1, |coordinate|)).
Christoffel christoffel_fd(const BcvParams& params, const AmbientPoint& p,
                           double relative_step = 1e-5);

/// Koszul formula with metric derivatives from forward-mode automatic
/// differentiation. Agrees with christoffel_fd to its truncation error.
Christoffel christoffel_exact(const BcvParams& params, const AmbientPoint& p);

/// Gamma(a, b)^k = Gamma^k_ij a^i b^j.
Eigen::Vector3d contract(const Christoffel& gamma, const Eigen::Vector3d& a,
                         const Eigen::Vector3d& b);

using VectorField = std::function<Eigen::Vector3d(const AmbientPoint&)>;

struct ConnectionSteps {
  double field_step = 1e-5;   ///< relative step for the derivative of Y
  double metric_step = 1e-5;  ///< relative step inside the Koszul formula
};

/// Levi-Civita derivative of the field Y along X at p, finite-difference
/// Koszul path.
TangentVector connection(const BcvParams& params, const AmbientPoint& p,
                         const TangentVector& x, const VectorField& y,
                         const ConnectionSteps& steps = {});

/// Closed-form Ricci tensor: diag(kappa - 2 tau^2, kappa - 2 tau^2, 2 tau^2)
/// in {E1, E2, E3}.
double ricci(const BcvParams& params, const AmbientPoint& p,
             const TangentVector& a, const TangentVector& b);

/// psi(x, y, z) = (x, y).
Eigen::Vector2d hopf_project(const AmbientPoint& p);
/// d psi drops the vertical component.
Eigen::Vector2d hopf_differential(const TangentVector& a);
/// Length of a base vector in h = (dx^2 + dy^2) / F^2.
double base_norm(const BcvParams& params, const Eigen::Vector2d& base,
                 const Eigen::Vector2d& w);

}  // namespace bcv
