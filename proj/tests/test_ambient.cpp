#include <cmath>
#include <limits>

#include "doctest.h"

#include "bcv/ambient.hpp"
#include "bcv/app/suites.hpp"
#include "bcv/finite_difference.hpp"
#include "support.hpp"

using namespace bcv;
using Eigen::Vector3d;

TEST_CASE("smoothing factor and the domain guard") {
  CHECK(smoothing_factor({0.0, 0.3}, 5.0, -2.0) == 1.0);
  CHECK(smoothing_factor({4.0, 0.0}, 1.0, 1.0) == doctest::Approx(3.0));
  const BcvParams hyper{-4.0, 0.0};
  CHECK(smoothing_factor(hyper, 1.0, 0.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(AmbientPoint(hyper, 1.0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(AmbientPoint(hyper, 0.0, 1.2, 0.0), DomainError);
  CHECK_NOTHROW(AmbientPoint(hyper, 0.5, 0.5, 3.0));
  CHECK_THROWS_AS(AmbientPoint(hyper, std::nan(""), 0.0, 0.0), DomainError);
}

TEST_CASE("params factory rejects non-finite values") {
  CHECK_THROWS_AS(BcvParams::make(std::numeric_limits<double>::infinity(), 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(BcvParams::make(0.0, std::nan("")), std::invalid_argument);
  CHECK(BcvParams::make(4.0, 1.0).is_space_form());
  CHECK_FALSE(BcvParams::make(4.0, 0.9).is_space_form());
}

TEST_CASE("classification covers every class") {
  CHECK(classify_space({0.0, 0.0}) == GeometryClass::Euclidean);
  CHECK(classify_space({4.0, 1.0}) == GeometryClass::SphereMinusPoint);
  CHECK(classify_space({1.0, 0.0}) == GeometryClass::SphereTimesLine);
  CHECK(classify_space({-1.0, 0.0}) == GeometryClass::HyperbolicTimesLine);
  CHECK(classify_space({1.0, 0.3}) == GeometryClass::SU2MinusPoint);
  CHECK(classify_space({-1.0, 0.3}) == GeometryClass::SL2RCover);
  CHECK(classify_space({0.0, 0.5}) == GeometryClass::Nil3);
  // The space-form test comes before the sign of kappa.
  CHECK(classify_space({1.0, 0.5}) == GeometryClass::SphereMinusPoint);
  for (double kappa : {-2.0, 0.0, 1.0, 4.0}) {
    for (double tau : {0.0, 0.5, 1.0}) {
      CHECK(classify_space({kappa, tau}) == classify_space({kappa, -tau}));
    }
  }
}

TEST_CASE("metric evaluation") {
  const BcvParams nil{0.0, 0.5};
  const AmbientPoint p(nil, 1.0, 0.0, 0.0);
  const TangentVector dy(p, Vector3d::UnitY());
  CHECK(metric_eval(nil, p, dy, dy) == doctest::Approx(1.25).epsilon(1e-15));

  for (const BcvParams& params : test::parameter_pairs()) {
    for (const Vector3d& c : app::random_points(params, 20, 7)) {
      const AmbientPoint q(params, c);
      const TangentVector dz(q, Vector3d::UnitZ());
      CHECK(metric_eval(params, q, dz, dz) == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(metric_matrix(params, q).isApprox(metric_matrix(params, q).transpose()));
    }
    const AmbientPoint origin(params, 0.0, 0.0, 2.0);
    const TangentVector dx(origin, Vector3d::UnitX());
    CHECK(metric_eval(params, origin, dx, dx) == doctest::Approx(1.0));
  }
  const AmbientPoint other(nil, 0.0, 1.0, 0.0);
  CHECK_THROWS_AS(metric_eval(nil, p, dy, TangentVector(other, Vector3d::UnitX())),
                  std::invalid_argument);
  CHECK_THROWS_AS(dy + TangentVector(other, Vector3d::UnitX()), std::invalid_argument);
  CHECK_THROWS_AS(TangentVector(p, Vector3d(0.0, std::nan(""), 0.0)), std::invalid_argument);
}

TEST_CASE("frame values and orthonormality") {
  for (const BcvParams& params : test::parameter_pairs()) {
    const AmbientPoint origin(params, 0.0, 0.0, 0.0);
    const auto e = frame_at(params, origin);
    for (int i = 0; i < 3; ++i) CHECK(e[i].v.isApprox(Vector3d::Unit(i)));

    double worst = 0.0;
    for (const Vector3d& c : app::random_points(params, 100, 11)) {
      const AmbientPoint p(params, c);
      const auto f = frame_at(params, p);
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          worst = std::max(worst, std::abs(metric_eval(params, p, f[a], f[b]) - (a == b)));
        }
        CHECK((from_frame(params, p, to_frame(params, p, f[a].v)) - f[a].v).norm() < 1e-13);
      }
    }
    CHECK(worst < 1e-10);
  }
  const BcvParams nil{0.0, 1.0};
  const AmbientPoint p(nil, 1.0, 2.0, 0.0);
  CHECK(frame_at(nil, p)[0].v.isApprox(Vector3d(1.0, 0.0, -2.0)));
}

TEST_CASE("Christoffel symbols: automatic differentiation against Koszul differences") {
  for (const BcvParams& params : test::parameter_pairs()) {
    for (const Vector3d& c : app::random_points(params, 10, 3)) {
      const AmbientPoint p(params, c);
      const Christoffel exact = christoffel_exact(params, p);
      const Christoffel fd = christoffel_fd(params, p);
      for (int k = 0; k < 3; ++k) {
        CHECK((exact[k] - fd[k]).cwiseAbs().maxCoeff() < 1e-8);
        CHECK(exact[k].isApprox(exact[k].transpose()));
      }
    }
  }
}

namespace {

Vector3d field_y(const AmbientPoint& p) {
  return Vector3d(std::sin(p.y()) + 0.3, p.x() * p.z(), std::cos(p.x()) - 0.2 * p.y());
}
Vector3d field_z(const AmbientPoint& p) {
  return Vector3d(p.z() - p.y(), 0.5 + p.x() * p.x(), std::sin(p.z() + p.x()));
}
Vector3d field_x(const AmbientPoint& p) {
  return Vector3d(1.0 + 0.2 * p.y(), -0.4 * p.z(), 0.7 + 0.1 * p.x() * p.y());
}

/// Directional derivative of a point function along coordinate vector w.
template <typename Fn>
auto along(const BcvParams& params, const AmbientPoint& p, const Vector3d& w, Fn fn) {
  return fd::first([&](double t) { return fn(AmbientPoint(params, p.coords() + t * w)); }, 0.0,
                   1e-4);
}

}  // namespace

TEST_CASE("connection is metric compatible and torsion free") {
  const BcvParams flat{0.0, 0.0};
  const AmbientPoint q(flat, 0.4, -0.2, 1.0);
  const VectorField dx = [](const AmbientPoint&) { return Vector3d::UnitX(); };
  CHECK(connection(flat, q, TangentVector(q, Vector3d::UnitX()), dx).v.norm() < 1e-12);

  for (const BcvParams& params : test::parameter_pairs()) {
    for (const Vector3d& c : app::random_points(params, 10, 5)) {
      const AmbientPoint p(params, c);
      const TangentVector x(p, field_x(p));
      const TangentVector y(p, field_y(p));
      const TangentVector z(p, field_z(p));
      const TangentVector dxy = connection(params, p, x, field_y);
      const TangentVector dxz = connection(params, p, x, field_z);
      const double lhs = along(params, p, x.v, [&](const AmbientPoint& a) {
        return metric_eval(params, a, TangentVector(a, field_y(a)), TangentVector(a, field_z(a)));
      });
      CHECK(std::abs(lhs - metric_eval(params, p, dxy, z) - metric_eval(params, p, y, dxz)) <
            1e-5);

      const TangentVector dyx = connection(params, p, y, field_x);
      const Vector3d bracket = along(params, p, x.v, field_y) - along(params, p, y.v, field_x);
      CHECK(norm(params, dxy - dyx - TangentVector(p, bracket)) < 1e-5);
    }
  }
}

TEST_CASE("Ricci closed form") {
  const BcvParams s2r{1.0, 0.0};
  const AmbientPoint p(s2r, 0.2, 0.1, 0.0);
  auto e = frame_at(s2r, p);
  CHECK(ricci(s2r, p, e[0], e[0]) == doctest::Approx(1.0));
  const BcvParams nil{0.0, 0.5};
  const AmbientPoint q(nil, 0.3, -0.7, 1.0);
  e = frame_at(nil, q);
  CHECK(ricci(nil, q, e[2], e[2]) == doctest::Approx(0.5));
  CHECK(std::abs(ricci(nil, q, e[0], e[2])) < 1e-15);
  CHECK(ricci(nil, q, e[0], e[0]) == doctest::Approx(-0.5));
}

TEST_CASE("Ricci closed form against finite-difference curvature") {
  for (const BcvParams& params : test::parameter_pairs()) {
    double worst = 0.0;
    for (const Vector3d& c : app::random_points(params, 20, 13)) {
      const AmbientPoint p(params, c);
      const auto e = frame_at(params, p);
      const Eigen::Matrix3d fd = app::ricci_fd_frame(params, p);
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
          worst = std::max(worst, std::abs(ricci(params, p, e[a], e[b]) - fd(a, b)));
        }
      }
    }
    CHECK(worst < 1e-4);
  }
}

TEST_CASE("Hopf fibration") {
  for (const BcvParams& params : test::parameter_pairs()) {
    const AmbientPoint p(params, 0.1, 0.2, 5.0);
    CHECK(hopf_project(p).isApprox(Eigen::Vector2d(0.1, 0.2)));
    for (const Vector3d& c : app::random_points(params, 50, 17)) {
      const AmbientPoint q(params, c);
      const auto e = frame_at(params, q);
      CHECK(hopf_differential(e[2]).isZero(0.0));
      CHECK(base_norm(params, hopf_project(q), hopf_differential(e[0])) ==
            doctest::Approx(1.0).epsilon(1e-12));
      const TangentVector h = 0.3 * e[0] - 1.7 * e[1];
      CHECK(std::abs(base_norm(params, hopf_project(q), hopf_differential(h)) - norm(params, h)) <
            1e-8);
    }
  }
}
