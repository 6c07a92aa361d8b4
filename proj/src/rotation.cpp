#include "bcv/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bcv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNearAxisRadius = 10.0 * kRadiusEpsilon;
/// Largest change of sigma (radians) or relative change of r per fixed step.
constexpr double kMaxStepTurn = 0.25;
constexpr double kFprimeTolerance = 1e-4;
constexpr double kFprimeProbe = 1e-5;

struct Derivative {
  double r;
  double z;
  double sigma;
};

Derivative profile_rhs(const BcvParams& params, double s, double r, double sigma,
                       const SigmaRate& rate) {
  return {radial_factor(params, r) * std::cos(sigma),
          std::sin(sigma) * twist_factor(params, r), rate(s, r, sigma)};
}

SigmaRate branch_rate(const BcvParams& params) {
  return [params](double, double r, double sigma) {
    return branch_sigma_rate(params, r, sigma);
  };
}

// Cubic Hermite basis on [0, 1] with value and derivative.
struct Hermite {
  double h00, h10, h01, h11;
  double d00, d10, d01, d11;
};

Hermite hermite(double t) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  return {2 * t3 - 3 * t2 + 1, t3 - 2 * t2 + t, -2 * t3 + 3 * t2, t3 - t2,
          6 * t2 - 6 * t,      3 * t2 - 4 * t + 1, -6 * t2 + 6 * t, 3 * t2 - 2 * t};
}

}  // namespace

void validate(const BcvParams& params, const ProfileState& state) {
  if (!std::isfinite(state.s) || !std::isfinite(state.r) || !std::isfinite(state.z) ||
      !std::isfinite(state.sigma)) {
    throw DomainError("profile state is not finite");
  }
  if (!(state.r > kRadiusEpsilon)) throw DomainError("profile radius must exceed 1e-8");
  if (!(radial_factor(params, state.r) > kDomainEpsilon)) {
    throw DomainError("F(r) <= 1e-9 at the profile radius");
  }
}

double radial_factor(const BcvParams& params, double r) {
  return 1.0 + 0.25 * params.kappa * r * r;
}

double twist_factor(const BcvParams& params, double r) {
  return std::sqrt(1.0 + params.tau * params.tau * r * r);
}

double profile_r_prime(const BcvParams& params, const ProfileState& state) {
  return radial_factor(params, state.r) * std::cos(state.sigma);
}

double profile_z_prime(const BcvParams& params, const ProfileState& state) {
  return std::sin(state.sigma) * twist_factor(params, state.r);
}

Eigen::Matrix2d orbit_metric(const BcvParams& params, double r) {
  if (!(r >= 0.0)) throw DomainError("orbit space needs r >= 0");
  const double f = radial_factor(params, r);
  if (!(f > kDomainEpsilon)) throw DomainError("F(r) <= 1e-9 at this radius");
  Eigen::Matrix2d g = Eigen::Matrix2d::Zero();
  g(0, 0) = 1.0 / (f * f);
  g(1, 1) = 1.0 / (1.0 + params.tau * params.tau * r * r);
  return g;
}

ReducedCoefficients reduced_quantities(const BcvParams& params, const ProfileState& state) {
  validate(params, state);
  const double r = state.r;
  const double tau = params.tau;
  const double f = radial_factor(params, r);
  const double w2 = 1.0 + tau * tau * r * r;
  const double w = std::sqrt(w2);
  const double rp = profile_r_prime(params, state);
  const double zp = profile_z_prime(params, state);
  ReducedCoefficients out;
  out.sin_sigma = std::sin(state.sigma);
  out.cos_sigma = std::cos(state.sigma);
  out.cos_alpha = rp / (f * w);
  out.a = -rp * rp * tau / (f * w2);
  out.b = zp / w2;
  out.c = f * zp / (r * w);
  out.d = tau * r / w;
  return out;
}

double reduced_mean_curvature(const BcvParams& params, const ProfileState& state,
                              double sigma_prime) {
  validate(params, state);
  return (1.0 / state.r - 0.25 * params.kappa * state.r) * std::sin(state.sigma) + sigma_prime;
}

double cos_alpha_derivative(const BcvParams& params, const ProfileState& state,
                            double sigma_prime) {
  validate(params, state);
  const double r = state.r;
  const double tau2 = params.tau * params.tau;
  const double w = twist_factor(params, r);
  const double rp = profile_r_prime(params, state);
  return -std::sin(state.sigma) * sigma_prime / w -
         std::cos(state.sigma) * tau2 * r * rp / (w * w * w);
}

ReducedResiduals reduced_bicon_system(const BcvParams& params, const ProfileState& state,
                                      double sigma_prime, double f, double f_prime) {
  const ReducedCoefficients q = reduced_quantities(params, state);
  const double tau = params.tau;
  const double cos_alpha_prime = cos_alpha_derivative(params, state, sigma_prime);
  ReducedResiduals out;
  out.r1 = f_prime * (q.b * f - 2.0 * tau * q.d - 2.0 * cos_alpha_prime) -
           2.0 * f * params.ricci_gap() * q.cos_alpha * q.sin_alpha_squared();
  out.r2 = f_prime * (3.0 * q.d * f - 2.0 * tau * q.b);
  return out;
}

double branch_sigma_rate(const BcvParams& params, double r, double sigma) {
  return std::sin(sigma) * (0.25 * params.kappa * r - 1.0 / (3.0 * r));
}

double branch_mean_curvature(const ProfileState& state) {
  return 2.0 * std::sin(state.sigma) / (3.0 * state.r);
}

double branch_mean_curvature_derivative(const ProfileState& state) {
  return -4.0 * std::sin(2.0 * state.sigma) / (9.0 * state.r * state.r);
}

double theorem52_obstruction(const BcvParams& params, const ProfileState& state) {
  validate(params, state);
  const double tau2 = params.tau * params.tau;
  return -params.ricci_gap() * branch_mean_curvature(state) *
         (std::cos(2.0 * state.sigma) - 1.0 - 2.0 * tau2 * state.r * state.r) *
         std::cos(state.sigma);
}

std::string_view to_string(BranchStatus status) {
  switch (status) {
    case BranchStatus::Completed: return "completed";
    case BranchStatus::MaxSteps: return "max_steps";
    case BranchStatus::NearAxis: return "near_axis";
    case BranchStatus::StepUnderflow: return "step_underflow";
    case BranchStatus::DomainExit: return "domain_exit";
    case BranchStatus::SelfConsistencyFailure: return "self_consistency_failure";
  }
  return "unknown";
}

ProfileState profile_rk4_step(const BcvParams& params, const ProfileState& y,
                              const SigmaRate& rate, double h) {
  const Derivative k1 = profile_rhs(params, y.s, y.r, y.sigma, rate);
  const Derivative k2 = profile_rhs(params, y.s + 0.5 * h, y.r + 0.5 * h * k1.r,
                                    y.sigma + 0.5 * h * k1.sigma, rate);
  const Derivative k3 = profile_rhs(params, y.s + 0.5 * h, y.r + 0.5 * h * k2.r,
                                    y.sigma + 0.5 * h * k2.sigma, rate);
  const Derivative k4 =
      profile_rhs(params, y.s + h, y.r + h * k3.r, y.sigma + h * k3.sigma, rate);
  ProfileState out;
  out.s = y.s + h;
  out.r = y.r + h / 6.0 * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r);
  out.z = y.z + h / 6.0 * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z);
  out.sigma = y.sigma + h / 6.0 * (k1.sigma + 2.0 * k2.sigma + 2.0 * k3.sigma + k4.sigma);
  return out;
}

namespace {

struct StepCheck {
  bool ok = true;
  BranchStatus status = BranchStatus::Completed;
};

StepCheck check_state(const BcvParams& params, const ProfileState& state, double h) {
  if (!std::isfinite(state.r) || !std::isfinite(state.z) || !std::isfinite(state.sigma)) {
    return {false, BranchStatus::DomainExit};
  }
  if (state.r < kNearAxisRadius) return {false, BranchStatus::NearAxis};
  if (!(radial_factor(params, state.r) > kDomainEpsilon)) {
    return {false, BranchStatus::DomainExit};
  }
  const double turn = h * std::abs(branch_sigma_rate(params, state.r, state.sigma));
  const double stretch = h * std::abs(profile_r_prime(params, state)) / state.r;
  if (turn > kMaxStepTurn || stretch > kMaxStepTurn) {
    return {false, BranchStatus::StepUnderflow};
  }
  return {};
}

}  // namespace

BranchTrajectory integrate_noncmc_branch(const BcvParams& params, const ProfileState& init,
                                         const IntegrationConfig& config) {
  validate(params, init);
  if (!(config.step > 0.0)) throw std::invalid_argument("integration step must be positive");
  if (config.max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");

  BranchTrajectory out;
  if (params.is_space_form()) {
    out.warnings.emplace_back(
        "kappa = 4 tau^2: the ambient space is a space form and carries no obstruction");
  }
  if (params.tau == 0.0) {
    out.warnings.emplace_back("tau = 0: run carries no rotational classification claim");
  }

  const SigmaRate rate = branch_rate(params);
  const double h = config.step;

  // Returns false when the closed-form f' disagrees with a symmetric
  // difference of f along the flow.
  const auto record = [&](const ProfileState& state) {
    const double f = branch_mean_curvature(state);
    const double f_prime = branch_mean_curvature_derivative(state);
    const double f_plus = branch_mean_curvature(profile_rk4_step(params, state, rate, kFprimeProbe));
    const double f_minus =
        branch_mean_curvature(profile_rk4_step(params, state, rate, -kFprimeProbe));
    const double fd = (f_plus - f_minus) / (2.0 * kFprimeProbe);
    if (std::abs(fd - f_prime) > kFprimeTolerance * std::max(1.0, std::abs(f_prime))) {
      return false;
    }
    const double sigma_prime = branch_sigma_rate(params, state.r, state.sigma);
    const ReducedResiduals res = reduced_bicon_system(params, state, sigma_prime, f, f_prime);
    out.samples.push_back({state.s, state.r, state.z, state.sigma, f, f_prime, res.r1, res.r2,
                           theorem52_obstruction(params, state)});
    return true;
  };

  ProfileState state = init;
  if (const StepCheck c = check_state(params, state, h); !c.ok) {
    out.status = c.status;
    return out;
  }
  if (!record(state)) {
    out.status = BranchStatus::SelfConsistencyFailure;
    return out;
  }
  ProfileState shadow = init;
  for (long k = 1;; ++k) {
    if (static_cast<long>(out.samples.size()) >= config.max_steps) {
      out.status = BranchStatus::MaxSteps;
      break;
    }
    const double s_next = init.s + static_cast<double>(k) * h;
    if (s_next > config.s_max + 1e-9 * h) {
      out.status = BranchStatus::Completed;
      break;
    }
    ProfileState next = profile_rk4_step(params, state, rate, h);
    shadow = profile_rk4_step(params, profile_rk4_step(params, shadow, rate, 0.5 * h), rate,
                              0.5 * h);
    next.s = s_next;
    shadow.s = s_next;
    if (const StepCheck c = check_state(params, next, h); !c.ok) {
      out.status = c.status;
      break;
    }
    out.shadow_error = std::max({out.shadow_error, std::abs(next.r - shadow.r),
                                 std::abs(next.z - shadow.z),
                                 std::abs(next.sigma - shadow.sigma)});
    if (!record(next)) {
      out.status = BranchStatus::SelfConsistencyFailure;
      break;
    }
    state = next;
  }
  return out;
}

ProfileCurve vertical_profile(const BcvParams& params, double r0, double s_min, double s_max) {
  validate(params, ProfileState{s_min, r0, 0.0, kPi / 2});
  const double w = twist_factor(params, r0);
  ProfileCurve out;
  out.state = [r0, w](double s) { return ProfileState{s, r0, s * w, kPi / 2}; };
  out.sigma_prime = [](double) { return 0.0; };
  out.s_min = s_min;
  out.s_max = s_max;
  return out;
}

ProfileCurve integrated_profile(const BcvParams& params, const ProfileState& init,
                                SigmaRate rate, double s_max, int substeps) {
  validate(params, init);
  if (substeps < 1) throw std::invalid_argument("substeps must be positive");
  ProfileCurve out;
  out.state = [params, init, rate, substeps](double s) {
    ProfileState y = init;
    const double h = (s - init.s) / substeps;
    if (h == 0.0) return y;
    for (int i = 0; i < substeps; ++i) y = profile_rk4_step(params, y, rate, h);
    y.s = s;
    return y;
  };
  out.sigma_prime = [state = out.state, rate](double s) {
    const ProfileState y = state(s);
    return rate(s, y.r, y.sigma);
  };
  out.s_min = init.s;
  out.s_max = s_max;
  return out;
}

ProfileCurve round_sphere_profile(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("sphere radius must be positive");
  ProfileCurve out;
  out.state = [radius](double s) {
    return ProfileState{s, radius * std::sin(s / radius), -radius * std::cos(s / radius),
                        s / radius};
  };
  out.sigma_prime = [radius](double) { return 1.0 / radius; };
  out.s_min = 0.0;
  out.s_max = kPi * radius;
  return out;
}

ProfileCurve sampled_profile(const BcvParams& params, std::vector<ProfileState> rows) {
  if (rows.size() < 2) throw std::invalid_argument("sampled profile needs at least two rows");
  std::sort(rows.begin(), rows.end(),
            [](const ProfileState& a, const ProfileState& b) { return a.s < b.s; });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    validate(params, rows[i]);
    if (i > 0 && !(rows[i].s > rows[i - 1].s)) {
      throw std::invalid_argument("sampled profile needs strictly increasing s");
    }
  }
  // Slopes: r and z from the arc-length relations, sigma by central differences.
  std::vector<double> sigma_slope(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == rows.size() ? i : i + 1;
    sigma_slope[i] = (rows[hi].sigma - rows[lo].sigma) / (rows[hi].s - rows[lo].s);
  }
  struct Eval {
    ProfileState state;
    double sigma_prime;
  };
  auto evaluate = [params, rows, sigma_slope](double s) {
    auto it = std::upper_bound(rows.begin(), rows.end(), s,
                               [](double value, const ProfileState& row) { return value < row.s; });
    std::size_t i = it == rows.begin() ? 0 : static_cast<std::size_t>(it - rows.begin()) - 1;
    i = std::min(i, rows.size() - 2);
    const ProfileState& a = rows[i];
    const ProfileState& b = rows[i + 1];
    const double len = b.s - a.s;
    const Hermite hb = hermite((s - a.s) / len);
    const auto blend = [&](double va, double sa, double vb, double sb) {
      return hb.h00 * va + hb.h10 * len * sa + hb.h01 * vb + hb.h11 * len * sb;
    };
    const auto slope = [&](double va, double sa, double vb, double sb) {
      return (hb.d00 * va + hb.d10 * len * sa + hb.d01 * vb + hb.d11 * len * sb) / len;
    };
    Eval e;
    e.state.s = s;
    e.state.r = blend(a.r, profile_r_prime(params, a), b.r, profile_r_prime(params, b));
    e.state.z = blend(a.z, profile_z_prime(params, a), b.z, profile_z_prime(params, b));
    e.state.sigma = blend(a.sigma, sigma_slope[i], b.sigma, sigma_slope[i + 1]);
    e.sigma_prime = slope(a.sigma, sigma_slope[i], b.sigma, sigma_slope[i + 1]);
    return e;
  };
  ProfileCurve out;
  out.state = [evaluate](double s) { return evaluate(s).state; };
  out.sigma_prime = [evaluate](double s) { return evaluate(s).sigma_prime; };
  out.s_min = rows.front().s;
  out.s_max = rows.back().s;
  out.exact_tangent = false;
  return out;
}

ParametricSurface revolution_surface(const BcvParams& params, const ProfileCurve& profile) {
  const auto state = profile.state;
  ChartMap chart = [state](double theta, double s) {
    const ProfileState y = state(s);
    return Eigen::Vector3d(y.r * std::cos(theta), y.r * std::sin(theta), y.z);
  };
  ChartPartials partials;
  if (profile.exact_tangent) {
    partials = [state, params](double theta, double s) {
      const ProfileState y = state(s);
      const double rp = profile_r_prime(params, y);
      const double zp = profile_z_prime(params, y);
      const double c = std::cos(theta);
      const double sn = std::sin(theta);
      return std::array<Eigen::Vector3d, 2>{Eigen::Vector3d(-y.r * sn, y.r * c, 0.0),
                                            Eigen::Vector3d(rp * c, rp * sn, zp)};
    };
  }
  return ParametricSurface(std::move(chart),
                           ParameterDomain{0.0, 2.0 * kPi, profile.s_min, profile.s_max},
                           std::move(partials), -1);
}

ParametricSurface hopf_cylinder(const BcvParams& params, double r0, double height) {
  return revolution_surface(params,
                            vertical_profile(params, r0, 0.0, height / twist_factor(params, r0)));
}

BaseCurve circle_curve(double radius) { return ellipse_curve(radius, radius); }

BaseCurve ellipse_curve(double semi_x, double semi_y) {
  BaseCurve out;
  out.point = [=](double t) { return Eigen::Vector2d(semi_x * std::cos(t), semi_y * std::sin(t)); };
  out.d1 = [=](double t) { return Eigen::Vector2d(-semi_x * std::sin(t), semi_y * std::cos(t)); };
  out.d2 = [=](double t) { return Eigen::Vector2d(-semi_x * std::cos(t), -semi_y * std::sin(t)); };
  out.t0 = 0.0;
  out.t1 = 2.0 * kPi;
  return out;
}

BaseCurve sampled_curve(std::vector<Eigen::Vector2d> points) {
  if (points.size() < 2) throw std::invalid_argument("base curve needs at least two points");
  const std::size_t n = points.size();
  std::vector<Eigen::Vector2d> slopes(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = i + 1 == n ? i : i + 1;
    slopes[i] = (points[hi] - points[lo]) / static_cast<double>(hi - lo);
  }
  const auto segment = [n](double t) {
    const double clamped = std::clamp(t, 0.0, static_cast<double>(n - 1));
    const std::size_t i = std::min(static_cast<std::size_t>(clamped), n - 2);
    return std::pair<std::size_t, double>(i, t - static_cast<double>(i));
  };
  BaseCurve out;
  out.point = [points, slopes, segment](double t) {
    const auto [i, x] = segment(t);
    const Hermite b = hermite(x);
    return Eigen::Vector2d(b.h00 * points[i] + b.h10 * slopes[i] + b.h01 * points[i + 1] +
                           b.h11 * slopes[i + 1]);
  };
  out.d1 = [points, slopes, segment](double t) {
    const auto [i, x] = segment(t);
    const Hermite b = hermite(x);
    return Eigen::Vector2d(b.d00 * points[i] + b.d10 * slopes[i] + b.d01 * points[i + 1] +
                           b.d11 * slopes[i + 1]);
  };
  out.d2 = [points, slopes, segment](double t) {
    const auto [i, x] = segment(t);
    const double e00 = 12 * x - 6;
    const double e10 = 6 * x - 4;
    const double e01 = -12 * x + 6;
    const double e11 = 6 * x - 2;
    return Eigen::Vector2d(e00 * points[i] + e10 * slopes[i] + e01 * points[i + 1] +
                           e11 * slopes[i + 1]);
  };
  out.t0 = 0.0;
  out.t1 = static_cast<double>(n - 1);
  return out;
}

ParametricSurface hopf_tube(const BcvParams& params, const BaseCurve& curve, double height) {
  (void)params;
  const auto point = curve.point;
  const auto d1 = curve.d1;
  ChartMap chart = [point](double t, double h) {
    const Eigen::Vector2d q = point(t);
    return Eigen::Vector3d(q.x(), q.y(), h);
  };
  ChartPartials partials = [d1](double t, double) {
    const Eigen::Vector2d q = d1(t);
    return std::array<Eigen::Vector3d, 2>{Eigen::Vector3d(q.x(), q.y(), 0.0),
                                          Eigen::Vector3d::UnitZ()};
  };
  return ParametricSurface(std::move(chart), ParameterDomain{curve.t0, curve.t1, 0.0, height},
                           std::move(partials), -1);
}

double base_geodesic_curvature(const BcvParams& params, const BaseCurve& curve, double t) {
  const Eigen::Vector2d q = curve.point(t);
  const Eigen::Vector2d d1 = curve.d1(t);
  const Eigen::Vector2d d2 = curve.d2(t);
  const double speed = d1.norm();
  if (!(speed > 0.0)) throw DegenerateError("base curve is not regular");
  const double euclidean = (d1.x() * d2.y() - d1.y() * d2.x()) / (speed * speed * speed);
  const Eigen::Vector2d left(-d1.y() / speed, d1.x() / speed);
  return smoothing_factor(params, q.x(), q.y()) * euclidean + 0.5 * params.kappa * q.dot(left);
}

}  // namespace bcv
