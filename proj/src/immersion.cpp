#include "bcv/immersion.hpp"

#include <cmath>
#include <string>

#include <Eigen/Geometry>
#include <Eigen/LU>

#include "bcv/finite_difference.hpp"

namespace bcv {

namespace {

// Point, tangents and unit normal only; the inner loop of every stencil.
struct Frame {
  AmbientPoint p;
  Eigen::Vector3d xu;  // coordinate components
  Eigen::Vector3d xv;
  Eigen::Vector3d xu_f;  // frame components
  Eigen::Vector3d xv_f;
  Eigen::Vector3d n_f;
  Eigen::Matrix2d first_form;
};

Frame light_jet(const ParametricSurface& surface, const BcvParams& params, double u,
                double v) {
  AmbientPoint p = surface.point(params, u, v);
  const auto [xu, xv] = surface.tangents(u, v);
  const Eigen::Vector3d xu_f = to_frame(params, p, xu);
  const Eigen::Vector3d xv_f = to_frame(params, p, xv);
  Eigen::Matrix2d first_form;
  first_form << xu_f.dot(xu_f), xu_f.dot(xv_f), xu_f.dot(xv_f), xv_f.dot(xv_f);
  if (!(first_form.determinant() > kGramEpsilon)) {
    throw DegenerateError("chart is not regular at (" + std::to_string(u) + ", " +
                          std::to_string(v) + ")");
  }
  const Eigen::Vector3d n_f =
      static_cast<double>(surface.orientation()) * xu_f.cross(xv_f).normalized();
  return Frame{p, xu, xv, xu_f, xv_f, n_f, first_form};
}

Eigen::Vector3d normal_coordinates(const ParametricSurface& surface, const BcvParams& params,
                                   double u, double v) {
  const Frame fr = light_jet(surface, params, u, v);
  return from_frame(params, fr.p, fr.n_f);
}

Eigen::Vector3d tangent_part_of_e3(const Eigen::Vector3d& n_f) {
  return Eigen::Vector3d::UnitZ() - n_f.z() * n_f;
}

void require_adapted(const SurfaceJet& jet) {
  if (!jet.adapted()) {
    throw DegenerateError("adapted frame undefined: sin(alpha) below 1e-7");
  }
}

// Covariant derivative of a coordinate vector field W along X_u and X_v.
std::array<Eigen::Vector3d, 2> covariant_partials(
    const std::function<Eigen::Vector3d(double, double)>& field, const Frame& fr,
    const Christoffel& gamma, double u, double v, double h) {
  const Eigen::Vector3d w = field(u, v);
  return {fd::partial_u(field, u, v, h) + contract(gamma, fr.xu, w),
          fd::partial_v(field, u, v, h) + contract(gamma, fr.xv, w)};
}

}  // namespace

ParametricSurface::ParametricSurface(ChartMap chart, ParameterDomain domain,
                                     ChartPartials partials, int orientation, double step)
    : chart_(std::move(chart)),
      domain_(domain),
      partials_(std::move(partials)),
      orientation_(orientation >= 0 ? 1 : -1),
      step_(step) {
  if (!chart_) throw std::invalid_argument("surface chart is empty");
  if (!(step_ > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
}

AmbientPoint ParametricSurface::point(const BcvParams& params, double u, double v) const {
  return AmbientPoint(params, chart_(u, v));
}

std::array<Eigen::Vector3d, 2> ParametricSurface::tangents(double u, double v) const {
  if (partials_) return partials_(u, v);
  return {fd::partial_u(chart_, u, v, step_), fd::partial_v(chart_, u, v, step_)};
}

ParametricSurface ParametricSurface::flipped() const {
  ParametricSurface copy = *this;
  copy.orientation_ = -orientation_;
  return copy;
}

double SurfaceJet::alpha() const { return std::atan2(sin_alpha, cos_alpha); }

Eigen::Vector3d SurfaceJet::e1_frame() const { return t_frame / sin_alpha; }

Eigen::Vector3d SurfaceJet::e2_frame() const { return jt_frame / sin_alpha; }

Eigen::Vector2d SurfaceJet::chart_coefficients(const Eigen::Vector3d& w) const {
  return first_form.inverse() * Eigen::Vector2d(xu_frame.dot(w), xv_frame.dot(w));
}

Eigen::Vector3d SurfaceJet::from_chart(const Eigen::Vector2d& c) const {
  return c.x() * xu_frame + c.y() * xv_frame;
}

Eigen::Vector3d SurfaceJet::rotate(const Eigen::Vector3d& w) const {
  return normal_frame.cross(w);
}

Eigen::Vector3d SurfaceJet::tangential(const Eigen::Vector3d& w) const {
  return w - normal_frame.dot(w) * normal_frame;
}

SurfaceJet surface_jet(const ParametricSurface& surface, const BcvParams& params, double u,
                       double v) {
  const Frame fr = light_jet(surface, params, u, v);
  const Eigen::Vector3d& n = fr.n_f;
  const double cos_alpha = n.z();
  const Eigen::Vector3d t = tangent_part_of_e3(n);
  const double sin_alpha = t.norm();
  const Eigen::Vector3d jt = n.cross(t);
  auto coord = [&](const Eigen::Vector3d& w) {
    return TangentVector(fr.p, from_frame(params, fr.p, w));
  };
  SurfaceJet jet{fr.p,
                 TangentVector(fr.p, fr.xu),
                 TangentVector(fr.p, fr.xv),
                 fr.first_form,
                 coord(n),
                 cos_alpha,
                 sin_alpha,
                 coord(t),
                 coord(jt),
                 std::nullopt,
                 std::nullopt,
                 fr.xu_f,
                 fr.xv_f,
                 n,
                 t,
                 jt};
  if (sin_alpha > kAngleEpsilon) {
    jet.e1 = coord(t / sin_alpha);
    jet.e2 = coord(jt / sin_alpha);
  }
  return jet;
}

ShapeData shape_operator(const ParametricSurface& surface, const BcvParams& params,
                         double u, double v) {
  const SurfaceJet jet = surface_jet(surface, params, u, v);
  const Frame fr = light_jet(surface, params, u, v);
  const Christoffel gamma = christoffel_exact(params, jet.p);
  const auto normal_field = [&](double a, double b) {
    return normal_coordinates(surface, params, a, b);
  };
  const auto dn = covariant_partials(normal_field, fr, gamma, u, v, surface.step());
  const Eigen::Matrix3d g = metric_matrix(params, jet.p);

  ShapeData out;
  const std::array<Eigen::Vector3d, 2> x{fr.xu, fr.xv};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.second_form(i, j) = -dn[i].dot(g * x[j]);
  }
  out.mixed = jet.first_form.inverse() * out.second_form.transpose();
  out.f = out.mixed.trace();

  Eigen::Vector3d b1;
  Eigen::Vector3d b2;
  if (jet.adapted()) {
    out.adapted = true;
    b1 = jet.e1_frame();
    b2 = jet.e2_frame();
  } else {
    b1 = jet.xu_frame.normalized();
    b2 = (jet.xv_frame - jet.xv_frame.dot(b1) * b1).normalized();
  }
  Eigen::Matrix2d c;
  c.col(0) = jet.chart_coefficients(b1);
  c.col(1) = jet.chart_coefficients(b2);
  // a(i, j) = g(A b_j, b_i) = sum c_j^m c_i^n B(m, n)
  out.a = (c.transpose() * out.second_form * c).transpose();
  out.lambda = out.a(1, 1);
  return out;
}

Eigen::Vector3d apply_shape(const ShapeData& shape, const SurfaceJet& jet,
                            const Eigen::Vector3d& w) {
  return jet.from_chart(shape.mixed * jet.chart_coefficients(w));
}

ScalarField mean_curvature_field(const ParametricSurface& surface, const BcvParams& params) {
  return [surface, params](double u, double v) {
    return shape_operator(surface, params, u, v).f;
  };
}

ScalarField angle_field(const ParametricSurface& surface, const BcvParams& params) {
  return [surface, params](double u, double v) {
    const Eigen::Vector3d n = light_jet(surface, params, u, v).n_f;
    return std::atan2(tangent_part_of_e3(n).norm(), n.z());
  };
}

TangentVector surface_gradient(const ScalarField& field, const ParametricSurface& surface,
                               const BcvParams& params, double u, double v) {
  const Frame fr = light_jet(surface, params, u, v);
  const double h = surface.step();
  const Eigen::Vector2d d(fd::partial_u(field, u, v, h), fd::partial_v(field, u, v, h));
  const Eigen::Vector2d c = fr.first_form.inverse() * d;
  return TangentVector(fr.p, c.x() * fr.xu + c.y() * fr.xv);
}

double surface_laplacian(const ScalarField& field, const ParametricSurface& surface,
                         const BcvParams& params, double u, double v) {
  const double h = surface.step();
  // W = sqrt(det I) I^{-1} d(phi); Delta phi = -div(W) / sqrt(det I)
  const auto flux = [&](double a, double b) {
    const Eigen::Matrix2d first_form = light_jet(surface, params, a, b).first_form;
    const Eigen::Vector2d d(fd::partial_u(field, a, b, h), fd::partial_v(field, a, b, h));
    return Eigen::Vector2d(std::sqrt(first_form.determinant()) * (first_form.inverse() * d));
  };
  const double divergence =
      fd::partial_u(flux, u, v, h).x() + fd::partial_v(flux, u, v, h).y();
  const double area = std::sqrt(light_jet(surface, params, u, v).first_form.determinant());
  return -divergence / area;
}

Eigen::Vector2d adapted_derivatives(const ScalarField& field, const ParametricSurface& surface,
                                    const BcvParams& params, double u, double v) {
  const SurfaceJet jet = surface_jet(surface, params, u, v);
  require_adapted(jet);
  const double h = surface.step();
  const Eigen::Vector2d d(fd::partial_u(field, u, v, h), fd::partial_v(field, u, v, h));
  return {jet.chart_coefficients(jet.e1_frame()).dot(d),
          jet.chart_coefficients(jet.e2_frame()).dot(d)};
}

double intrinsic_curvature(const ParametricSurface& surface, const BcvParams& params,
                           double u, double v) {
  const double h = surface.step();
  const auto form = [&](double a, double b) {
    const Eigen::Matrix2d m = light_jet(surface, params, a, b).first_form;
    return Eigen::Vector3d(m(0, 0), m(0, 1), m(1, 1));
  };
  const Eigen::Vector3d efg = form(u, v);
  const Eigen::Vector3d du = fd::partial_u(form, u, v, h);
  const Eigen::Vector3d dv = fd::partial_v(form, u, v, h);
  const double e_vv = fd::second([&](double b) { return form(u, b).x(); }, v, h);
  const double g_uu = fd::second([&](double a) { return form(a, v).z(); }, u, h);
  const double f_uv = fd::first(
      [&](double a) { return fd::partial_v(form, a, v, h).y(); }, u, h);
  const double e = efg.x();
  const double f = efg.y();
  const double g = efg.z();
  Eigen::Matrix3d m1;
  m1 << -0.5 * e_vv + f_uv - 0.5 * g_uu, 0.5 * du.x(), du.y() - 0.5 * dv.x(),
      dv.y() - 0.5 * du.z(), e, f,
      0.5 * dv.z(), f, g;
  Eigen::Matrix3d m2;
  m2 << 0.0, 0.5 * dv.x(), 0.5 * du.z(),
      0.5 * dv.x(), e, f,
      0.5 * du.z(), f, g;
  const double det = e * g - f * f;
  return (m1.determinant() - m2.determinant()) / (det * det);
}

double gauss_residual(const ParametricSurface& surface, const BcvParams& params, double u,
                      double v) {
  const SurfaceJet jet = surface_jet(surface, params, u, v);
  const ShapeData shape = shape_operator(surface, params, u, v);
  const double k = intrinsic_curvature(surface, params, u, v);
  const double tau2 = params.tau * params.tau;
  return k - shape.determinant() - tau2 -
         (params.kappa - 4.0 * tau2) * jet.cos_alpha * jet.cos_alpha;
}

FrameDerivatives frame_derivatives(const ParametricSurface& surface, const BcvParams& params,
                                   double u, double v) {
  const SurfaceJet jet = surface_jet(surface, params, u, v);
  require_adapted(jet);
  const ScalarField alpha = angle_field(surface, params);
  const auto alpha_derivatives = [&](double a, double b) {
    return adapted_derivatives(alpha, surface, params, a, b);
  };
  const ScalarField lambda = [&](double a, double b) {
    return shape_operator(surface, params, a, b).lambda;
  };
  const double h = surface.step();
  const Eigen::Vector2d e_alpha = alpha_derivatives(u, v);
  // du(k), dv(k): chart partials of e_k(alpha)
  const Eigen::Vector2d du = fd::partial_u(alpha_derivatives, u, v, h);
  const Eigen::Vector2d dv = fd::partial_v(alpha_derivatives, u, v, h);
  const Eigen::Vector2d c1 = jet.chart_coefficients(jet.e1_frame());
  const Eigen::Vector2d c2 = jet.chart_coefficients(jet.e2_frame());
  const Eigen::Vector2d d_e1_alpha(du.x(), dv.x());
  const Eigen::Vector2d d_e2_alpha(du.y(), dv.y());
  const Eigen::Vector2d e_lambda = adapted_derivatives(lambda, surface, params, u, v);

  FrameDerivatives out;
  out.alpha = jet.alpha();
  out.lambda = lambda(u, v);
  out.e1_alpha = e_alpha.x();
  out.e2_alpha = e_alpha.y();
  out.e1_e1_alpha = c1.dot(d_e1_alpha);
  out.e2_e1_alpha = c2.dot(d_e1_alpha);
  out.e1_e2_alpha = c1.dot(d_e2_alpha);
  out.e2_e2_alpha = c2.dot(d_e2_alpha);
  out.e1_lambda = e_lambda.x();
  out.e2_lambda = e_lambda.y();
  return out;
}

std::pair<double, double> codazzi_equations(const BcvParams& params, const FrameDerivatives& d) {
  const double cot = std::cos(d.alpha) / std::sin(d.alpha);
  const double tau = params.tau;
  const double first = d.e1_e2_alpha + d.lambda * cot * d.e2_alpha +
                       cot * d.e1_alpha * (d.e2_alpha - 2.0 * tau) - d.e2_e1_alpha;
  const double second =
      cot * (2.0 * d.e2_alpha * d.e2_alpha - d.lambda * d.e1_alpha - 6.0 * tau * d.e2_alpha +
             4.0 * tau * tau + d.lambda * d.lambda) +
      d.e1_lambda - d.e2_e2_alpha -
      params.ricci_gap() * std::cos(d.alpha) * std::sin(d.alpha);
  return {first, second};
}

std::pair<double, double> codazzi_residual(const ParametricSurface& surface,
                                           const BcvParams& params, double u, double v) {
  return codazzi_equations(params, frame_derivatives(surface, params, u, v));
}

CompatibilityResidual compatibility_residual(const ParametricSurface& surface,
                                             const BcvParams& params, double u, double v,
                                             const TangentVector& x) {
  const SurfaceJet jet = surface_jet(surface, params, u, v);
  const Frame fr = light_jet(surface, params, u, v);
  const ShapeData shape = shape_operator(surface, params, u, v);
  const Christoffel gamma = christoffel_exact(params, jet.p);
  const double h = surface.step();

  const Eigen::Vector3d x_f = jet.tangential(to_frame(params, jet.p, x.v));
  const Eigen::Vector2d c = jet.chart_coefficients(x_f);

  const auto t_field = [&](double a, double b) {
    const Frame q = light_jet(surface, params, a, b);
    return from_frame(params, q.p, tangent_part_of_e3(q.n_f));
  };
  const auto dt = covariant_partials(t_field, fr, gamma, u, v, h);
  const Eigen::Vector3d nabla_t =
      jet.tangential(to_frame(params, jet.p, c.x() * dt[0] + c.y() * dt[1]));

  const Eigen::Vector3d ax_tau_jx = apply_shape(shape, jet, x_f) - params.tau * jet.rotate(x_f);
  const Eigen::Vector3d residual = nabla_t - jet.cos_alpha * ax_tau_jx;

  const ScalarField cos_alpha = [&](double a, double b) {
    return light_jet(surface, params, a, b).n_f.z();
  };
  const Eigen::Vector2d d_cos(fd::partial_u(cos_alpha, u, v, h),
                              fd::partial_v(cos_alpha, u, v, h));
  return {TangentVector(jet.p, from_frame(params, jet.p, residual)),
          ax_tau_jx.dot(jet.t_frame) + c.dot(d_cos)};
}

std::array<Eigen::Vector2d, 4> adapted_connection(const ParametricSurface& surface,
                                                  const BcvParams& params, double u,
                                                  double v) {
  const SurfaceJet jet = surface_jet(surface, params, u, v);
  require_adapted(jet);
  const Frame fr = light_jet(surface, params, u, v);
  const Christoffel gamma = christoffel_exact(params, jet.p);
  const double h = surface.step();

  const auto e_field = [&](int which) {
    return [&, which](double a, double b) {
      const SurfaceJet q = surface_jet(surface, params, a, b);
      require_adapted(q);
      return from_frame(params, q.p, which == 0 ? q.e1_frame() : q.e2_frame());
    };
  };
  const std::array<Eigen::Vector3d, 2> basis{jet.e1_frame(), jet.e2_frame()};
  std::array<Eigen::Vector2d, 4> out;
  for (int j = 0; j < 2; ++j) {
    const auto de = covariant_partials(e_field(j), fr, gamma, u, v, h);
    for (int i = 0; i < 2; ++i) {
      const Eigen::Vector2d c = jet.chart_coefficients(basis[i]);
      const Eigen::Vector3d w = to_frame(params, jet.p, c.x() * de[0] + c.y() * de[1]);
      out[2 * j + i] = Eigen::Vector2d(w.dot(basis[0]), w.dot(basis[1]));
    }
  }
  return out;
}

}  // namespace bcv
