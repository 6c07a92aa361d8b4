#include <cmath>
#include <numbers>

#include "doctest.h"

#include "bcv/app/suites.hpp"
#include "bcv/biconservative.hpp"
#include "bcv/rotation.hpp"
#include "support.hpp"

using namespace bcv;
using Eigen::Vector2d;
using Eigen::Vector3d;

namespace {

constexpr double kPi = std::numbers::pi;

/// Plane through the origin whose normal there makes the angle pi/4 with E3.
ParametricSurface tilted_plane() {
  return ParametricSurface([](double u, double v) { return Vector3d(u, v, u); },
                           {-0.5, 0.5, -0.5, 0.5});
}

BaseCurve straight_line() {
  BaseCurve c;
  c.point = [](double t) { return Vector2d(t, 0.3 * t + 0.1); };
  c.d1 = [](double) { return Vector2d(1.0, 0.3); };
  c.d2 = [](double) { return Vector2d(0.0, 0.0); };
  c.t0 = -1.0;
  c.t1 = 1.0;
  return c;
}

}  // namespace

TEST_CASE("tangential Ricci term") {
  const BcvParams nil{0.0, 0.5};
  const ParametricSurface s = tilted_plane();
  const SurfaceJet jet = surface_jet(s, nil, 0.0, 0.0);
  CHECK(jet.alpha() == doctest::Approx(kPi / 4).epsilon(1e-12));
  const TangentVector closed = ricci_normal_tangential(nil, jet);
  const TangentVector generic = ricci_normal_tangential_generic(nil, jet);
  CHECK(metric_eval(nil, jet.p, closed, *jet.e1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(norm(nil, closed - generic) < 1e-8);

  const BcvParams sphere{4.0, 1.0};
  const SurfaceJet sj = surface_jet(tilted_plane(), sphere, 0.1, 0.2);
  CHECK(norm(sphere, ricci_normal_tangential(sphere, sj)) < 1e-15);
  CHECK(norm(sphere, ricci_normal_tangential_generic(sphere, sj)) < 1e-14);

  const BcvParams params{1.0, 0.5};
  const ParametricSurface tube = hopf_tube(params, ellipse_curve(1.0, 0.6));
  const SurfaceJet tj = surface_jet(tube, params, 0.4, 0.2);
  CHECK(norm(params, ricci_normal_tangential(params, tj)) < 1e-15);

  for (const BcvParams& p : test::parameter_pairs()) {
    const ParametricSurface rev = revolution_surface(p, app::generic_profile(p));
    for (const Vector2d& uv : app::interior_grid(rev.domain(), 3, 3)) {
      const SurfaceJet j = surface_jet(rev, p, uv.x(), uv.y());
      CHECK(norm(p, ricci_normal_tangential(p, j) - ricci_normal_tangential_generic(p, j)) <
            1e-8);
    }
  }

  const ParametricSurface flat([](double u, double v) { return Vector3d(u, v, 0.0); },
                               {-1.0, 1.0, -1.0, 1.0});
  CHECK_THROWS_AS(ricci_normal_tangential(nil, surface_jet(flat, nil, 0.0, 0.0)),
                  DegenerateError);
}

TEST_CASE("minimal samples have zero tangential bitension") {
  const BcvParams flat{0.0, 0.0};
  const ParametricSurface plane([](double u, double v) { return Vector3d(u, v, 0.3 * u); },
                                {-1.0, 1.0, -1.0, 1.0});
  CHECK(norm(flat, tangential_bitension(plane, flat, 0.2, 0.1)) < 1e-10);
  CHECK(std::abs(normal_bitension(plane, flat, 0.2, 0.1)) < 1e-5);

  const BcvParams nil{0.0, 0.5};
  const ParametricSurface tube = hopf_tube(nil, straight_line());
  for (const Vector2d& uv : app::interior_grid(tube.domain(), 4, 3)) {
    CHECK(std::abs(shape_operator(tube, nil, uv.x(), uv.y()).f) < 1e-5);
    CHECK(norm(nil, tangential_bitension(tube, nil, uv.x(), uv.y())) < 1e-6);
  }
}

TEST_CASE("Hopf circular cylinders are biconservative") {
  for (const BcvParams& params : test::parameter_pairs()) {
    for (double r0 : app::admissible_cylinder_radii(params)) {
      const ParametricSurface s = hopf_cylinder(params, r0);
      const double f = 1.0 / r0 - 0.25 * params.kappa * r0;
      for (const Vector2d& uv : app::interior_grid(s.domain(), 4, 3)) {
        const BitensionResiduals res = bitension_residuals(s, params, uv.x(), uv.y());
        CHECK(res.tangential_norm < 1e-6);
        CHECK(std::abs(res.normal - f * (f * f + params.ricci_gap())) < 1e-5);
        REQUIRE(res.frame_pair.has_value());
        CHECK(std::abs(res.frame_pair->first) < 1e-6);
        CHECK(std::abs(res.frame_pair->second) < 1e-6);
      }
    }
  }
}

TEST_CASE("CMC surfaces in a space form") {
  const BcvParams params{4.0, 1.0};
  REQUIRE(params.is_space_form());
  for (const ParametricSurface& s :
       {hopf_cylinder(params, 0.7), revolution_surface(params, app::cmc_profile(params, 1.0))}) {
    for (const Vector2d& uv : app::interior_grid(s.domain(), 4, 4)) {
      CHECK(norm(params, tangential_bitension(s, params, uv.x(), uv.y())) < 1e-6);
      const SurfaceJet jet = surface_jet(s, params, uv.x(), uv.y());
      const double f = shape_operator(s, params, uv.x(), uv.y()).f;
      CHECK(2.0 * std::abs(f) * norm(params, ricci_normal_tangential_generic(params, jet)) <
            1e-12);
    }
  }
}

TEST_CASE("normal bitension of round spheres") {
  const BcvParams flat{0.0, 0.0};
  for (double radius : {1.0, 2.0}) {
    const ParametricSurface s = revolution_surface(flat, round_sphere_profile(radius));
    for (const Vector2d& uv : app::interior_grid(s.domain(), 3, 3)) {
      CHECK(normal_bitension(s, flat, uv.x(), uv.y()) ==
            doctest::Approx(4.0 / (radius * radius * radius)).epsilon(1e-5));
    }
  }
}

TEST_CASE("frame system equals the adapted components of the tangential bitension") {
  // The proportionality factor between the two is exactly 1 for both components.
  CHECK(frame_system({1.0, 0.5}, FrameDerivatives{}) == std::pair<double, double>{0.0, 0.0});
  for (const BcvParams& params : test::parameter_pairs()) {
    const ParametricSurface s = revolution_surface(params, app::generic_profile(params));
    for (const Vector2d& uv : app::interior_grid(s.domain(), 4, 4)) {
      const SurfaceJet jet = surface_jet(s, params, uv.x(), uv.y());
      if (jet.sin_alpha <= 0.1) continue;
      const BitensionResiduals res = bitension_residuals(s, params, uv.x(), uv.y());
      const Vector3d tb = to_frame(params, jet.p, res.tangential.v);
      CHECK(std::abs(tb.dot(jet.normal_frame)) < 1e-8);
      REQUIRE(res.frame_pair.has_value());
      CHECK(std::abs(res.frame_pair->first - tb.dot(jet.e1_frame())) < 1e-4);
      CHECK(std::abs(res.frame_pair->second - tb.dot(jet.e2_frame())) < 1e-4);
    }
  }
}

TEST_CASE("constant-angle quartic") {
  const QuarticReport round = constant_angle_suite({1.0, 0.0}, kPi / 3);
  REQUIRE(round.real_roots.size() == 2);
  CHECK(std::abs(round.real_roots[0] + std::sqrt(3.0) / 2) < 1e-10);
  CHECK(std::abs(round.real_roots[1] - std::sqrt(3.0) / 2) < 1e-10);
  CHECK(round.zero_root);
  CHECK_FALSE(round.degenerate);

  const QuarticReport nil = constant_angle_suite({0.0, 0.5}, kPi / 4);
  const double scale = 1.0 + std::max({std::abs(nil.coefficients[0]),
                                       std::abs(nil.coefficients[1]),
                                       std::abs(nil.coefficients[2])});
  CHECK_FALSE(nil.real_roots.empty());
  for (double root : nil.real_roots) CHECK(std::abs(nil.evaluate(root)) < 1e-10 * scale);

  CHECK(constant_angle_suite({1.0, 0.5}, kPi / 2).degenerate);
  CHECK_THROWS_AS(constant_angle_suite({1.0, 0.5}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(constant_angle_suite({1.0, 0.5}, kPi), std::invalid_argument);

  // tau = 0 leaves only the even structure 6 cot l^4 - 3 kappa sin(2 alpha) l^2.
  for (double alpha : {0.3, 1.0, 2.5}) {
    const QuarticReport q = constant_angle_suite({2.0, 0.0}, alpha);
    CHECK(q.coefficients[2] == 0.0);
    CHECK(q.coefficients[1] == doctest::Approx(-6.0 * std::sin(2.0 * alpha)));
    CHECK(q.coefficients[0] == doctest::Approx(6.0 / std::tan(alpha)));
  }
}

TEST_CASE("quartic roots give constant-angle biconservative data") {
  for (const BcvParams& params : {BcvParams{0.0, 0.5}, BcvParams{1.0, 0.0}, BcvParams{-1.0, 0.5},
                                  BcvParams{1.0, 1.0}, BcvParams{3.0, 0.2}}) {
    for (double alpha : {0.4, kPi / 4, 1.2, 2.0, 2.8}) {
      const QuarticReport q = constant_angle_suite(params, alpha);
      for (double root : q.real_roots) {
        const FrameDerivatives d = constant_angle_datum(params, alpha, root);
        const auto [first, second] = frame_system(params, d);
        CHECK(std::abs(first) < 1e-8 * (1.0 + root * root * root * root));
        CHECK(std::abs(second) < 1e-8 * (1.0 + root * root * root * root));
        // The datum satisfies the constant-angle Codazzi equation by construction.
        CHECK(std::abs(codazzi_equations(params, d).second) < 1e-10 * (1.0 + root * root));
      }
    }
  }
}
