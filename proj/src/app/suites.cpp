#include "bcv/app/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "bcv/app/parallel.hpp"
#include "bcv/biconservative.hpp"

namespace bcv::app {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Rng = std::mt19937_64;

Rng suite_rng(std::uint64_t seed, std::string_view name) {
  const auto& names = suite_registry();
  const auto index = static_cast<std::uint64_t>(
      std::find(names.begin(), names.end(), name) - names.begin());
  return Rng(seed + 0x9E3779B97F4A7C15ULL * (index + 1));
}

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// fn(i) for every sample, NaN for samples that throw.
std::vector<double> sweep(std::size_t n, const std::function<double(std::size_t)>& fn) {
  return parallel_map<double>(n, [&](std::size_t i) {
    try {
      return fn(i);
    } catch (const std::exception&) {
      return kNaN;
    }
  });
}

void add_all(EntryBuilder& entry, const std::vector<double>& values) {
  for (double v : values) entry.add(v);
}

double max_abs(const Eigen::Vector3d& v) { return v.cwiseAbs().maxCoeff(); }

// ---- suites ---------------------------------------------------------------

std::vector<SuiteEntry> frame_suite(const BcvParams& params, std::uint64_t seed) {
  const auto points = random_points(params, 100, seed);
  EntryBuilder entry("frame.orthonormality", 1e-10);
  add_all(entry, sweep(points.size(), [&](std::size_t i) {
            const AmbientPoint p(params, points[i]);
            const auto e = frame_at(params, p);
            double worst = 0.0;
            for (int a = 0; a < 3; ++a) {
              for (int b = 0; b < 3; ++b) {
                worst = std::max(worst, std::abs(metric_eval(params, p, e[a], e[b]) -
                                                 (a == b ? 1.0 : 0.0)));
              }
            }
            return worst;
          }));
  return {entry.finish()};
}

std::vector<SuiteEntry> ricci_suite(const BcvParams& params, std::uint64_t seed) {
  const auto points = random_points(params, 20, seed);
  EntryBuilder entry("ricci.fd_oracle", 1e-4);
  add_all(entry, sweep(points.size(), [&](std::size_t i) {
            const AmbientPoint p(params, points[i]);
            const auto e = frame_at(params, p);
            const Eigen::Matrix3d fd = ricci_fd_frame(params, p);
            double worst = 0.0;
            for (int a = 0; a < 3; ++a) {
              for (int b = 0; b < 3; ++b) {
                worst = std::max(worst, std::abs(ricci(params, p, e[a], e[b]) - fd(a, b)));
              }
            }
            return worst;
          }));
  return {entry.finish()};
}

std::vector<SuiteEntry> submersion_suite(const BcvParams& params, std::uint64_t seed) {
  const auto points = random_points(params, 100, seed);
  Rng rng(seed ^ 0x5bd1e995ULL);
  std::vector<Eigen::Vector2d> weights(points.size());
  for (auto& w : weights) w = Eigen::Vector2d(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0));

  EntryBuilder isometry("submersion.horizontal_isometry", 1e-8);
  EntryBuilder kernel("submersion.vertical_kernel", std::numeric_limits<double>::denorm_min());
  add_all(isometry, sweep(points.size(), [&](std::size_t i) {
            const AmbientPoint p(params, points[i]);
            const auto e = frame_at(params, p);
            const TangentVector h = weights[i].x() * e[0] + weights[i].y() * e[1];
            return base_norm(params, hopf_project(p), hopf_differential(h)) - norm(params, h);
          }));
  add_all(kernel, sweep(points.size(), [&](std::size_t i) {
            const AmbientPoint p(params, points[i]);
            return hopf_differential(frame_at(params, p)[2]).cwiseAbs().maxCoeff();
          }));
  return {isometry.finish(), kernel.finish()};
}

std::vector<SuiteEntry> gauss_codazzi_suite(const BcvParams& params, std::uint64_t) {
  EntryBuilder gauss("gauss-codazzi.gauss", 1e-4);
  EntryBuilder codazzi("gauss-codazzi.codazzi", 1e-3);
  EntryBuilder compat("gauss-codazzi.compatibility", 1e-4);
  EntryBuilder jet_entry("gauss-codazzi.jet", 1e-9);
  for (const NamedSurface& named : structural_surfaces(params)) {
    const ParametricSurface& s = named.surface;
    const auto grid = interior_grid(s.domain(), 6, 6);
    add_all(gauss, sweep(grid.size(), [&](std::size_t i) {
              return gauss_residual(s, params, grid[i].x(), grid[i].y());
            }));
    add_all(codazzi, sweep(grid.size(), [&](std::size_t i) {
              const auto [a, b] = codazzi_residual(s, params, grid[i].x(), grid[i].y());
              return std::max(std::abs(a), std::abs(b));
            }));
    add_all(compat, sweep(grid.size(), [&](std::size_t i) {
              const double u = grid[i].x();
              const double v = grid[i].y();
              const SurfaceJet jet = surface_jet(s, params, u, v);
              double worst = 0.0;
              for (const TangentVector& x : {jet.x_u, jet.x_v}) {
                const TangentVector unit = (1.0 / norm(params, x)) * x;
                const CompatibilityResidual r = compatibility_residual(s, params, u, v, unit);
                worst = std::max({worst, norm(params, r.derivative), std::abs(r.angle)});
              }
              return worst;
            }));
    add_all(jet_entry, sweep(grid.size(), [&](std::size_t i) {
              const SurfaceJet jet = surface_jet(s, params, grid[i].x(), grid[i].y());
              const Eigen::Vector3d split =
                  Eigen::Vector3d::UnitZ() - jet.cos_alpha * jet.normal_frame - jet.t_frame;
              return std::max(max_abs(split), std::abs(jet.t_frame.squaredNorm() -
                                                       jet.sin_alpha * jet.sin_alpha));
            }));
  }
  return {gauss.finish(), codazzi.finish(), compat.finish(), jet_entry.finish()};
}

double tangential_norm(const ParametricSurface& s, const BcvParams& params,
                       const Eigen::Vector2d& uv) {
  return norm(params, tangential_bitension(s, params, uv.x(), uv.y()));
}

std::vector<SuiteEntry> biconservative_suite(const BcvParams& params, std::uint64_t seed) {
  EntryBuilder cyl_tangential("biconservative.cylinder_tangential", 1e-6);
  EntryBuilder cyl_reduced("biconservative.cylinder_reduced", 1e-8);
  EntryBuilder cyl_normal("biconservative.cylinder_normal", 1e-5);
  for (double r0 : admissible_cylinder_radii(params)) {
    const ParametricSurface s = hopf_cylinder(params, r0);
    const auto grid = interior_grid(s.domain(), 6, 6);
    const double f = 1.0 / r0 - 0.25 * params.kappa * r0;
    const double closed = f * (f * f + params.ricci_gap());
    add_all(cyl_tangential,
            sweep(grid.size(), [&](std::size_t i) { return tangential_norm(s, params, grid[i]); }));
    add_all(cyl_normal, sweep(grid.size(), [&](std::size_t i) {
              return normal_bitension(s, params, grid[i].x(), grid[i].y()) - closed;
            }));
    add_all(cyl_reduced, sweep(grid.size(), [&](std::size_t i) {
              const double sv = grid[i].y();
              const ProfileState state{sv, r0, sv * twist_factor(params, r0), kPi / 2};
              const double fr = reduced_mean_curvature(params, state, 0.0);
              const ReducedResiduals r = reduced_bicon_system(params, state, 0.0, fr, 0.0);
              return std::max(std::abs(r.r1), std::abs(r.r2));
            }));
  }

  // Frame system against the component expansion of the tangential bitension.
  const ParametricSurface generic = revolution_surface(params, generic_profile(params));
  Rng rng(seed);
  std::vector<Eigen::Vector2d> samples;
  const ParameterDomain& dom = generic.domain();
  for (int attempts = 0; samples.size() < 50 && attempts < 5000; ++attempts) {
    const Eigen::Vector2d uv(uniform(rng, dom.u0, dom.u1), uniform(rng, dom.v0, dom.v1));
    if (surface_jet(generic, params, uv.x(), uv.y()).sin_alpha > 0.1) samples.push_back(uv);
  }
  EntryBuilder oracle("biconservative.frame_oracle", 1e-4);
  add_all(oracle, sweep(samples.size(), [&](std::size_t i) {
            const double u = samples[i].x();
            const double v = samples[i].y();
            const SurfaceJet jet = surface_jet(generic, params, u, v);
            const Eigen::Vector3d tb =
                to_frame(params, jet.p, tangential_bitension(generic, params, u, v).v);
            const auto [first, second] = frame_system_residual(generic, params, u, v);
            return std::max(std::abs(first - tb.dot(jet.e1_frame())),
                            std::abs(second - tb.dot(jet.e2_frame())));
          }));

  std::vector<SuiteEntry> out{cyl_tangential.finish(), cyl_reduced.finish(), cyl_normal.finish(),
                              oracle.finish()};

  if (params.is_space_form()) {
    const ParametricSurface cmc = revolution_surface(params, cmc_profile(params, 1.0));
    const auto grid = interior_grid(cmc.domain(), 6, 6);
    EntryBuilder tangential("biconservative.space_form_cmc", 1e-6);
    EntryBuilder curvature("biconservative.space_form_curvature", 1e-12);
    add_all(tangential,
            sweep(grid.size(), [&](std::size_t i) { return tangential_norm(cmc, params, grid[i]); }));
    add_all(curvature, sweep(grid.size(), [&](std::size_t i) {
              const SurfaceJet jet = surface_jet(cmc, params, grid[i].x(), grid[i].y());
              const double f = shape_operator(cmc, params, grid[i].x(), grid[i].y()).f;
              return 2.0 * f * norm(params, ricci_normal_tangential_generic(params, jet));
            }));
    out.push_back(tangential.finish());
    out.push_back(curvature.finish());
  }
  if (params.kappa == 0.0 && params.tau == 0.0) {
    const ParametricSurface sphere = revolution_surface(params, round_sphere_profile(1.0));
    const auto grid = interior_grid(sphere.domain(), 6, 6);
    EntryBuilder sphere_normal("biconservative.sphere_normal", 1e-5);
    add_all(sphere_normal, sweep(grid.size(), [&](std::size_t i) {
              return normal_bitension(sphere, params, grid[i].x(), grid[i].y()) - 4.0;
            }));
    out.push_back(sphere_normal.finish());
  }
  return out;
}

std::vector<SuiteEntry> theorem44_suite(const BcvParams& params, std::uint64_t) {
  const double rho = fixture_scale(params);
  const BaseCurve circle = circle_curve(0.8 * rho);
  const BaseCurve ellipse = ellipse_curve(rho, 0.6 * rho);
  const ParametricSurface circle_tube = hopf_tube(params, circle);
  const ParametricSurface ellipse_tube = hopf_tube(params, ellipse);

  EntryBuilder round("theorem44.circle_tube", 1e-6);
  EntryBuilder probe("theorem44.ellipse_tube", 1e-3, Bound::Exceeds);
  EntryBuilder curvature("theorem44.geodesic_curvature", 1e-4);

  const auto grid = interior_grid(circle_tube.domain(), 8, 4);
  add_all(round, sweep(grid.size(), [&](std::size_t i) {
            return tangential_norm(circle_tube, params, grid[i]);
          }));
  const auto ellipse_values = sweep(grid.size(), [&](std::size_t i) {
    return tangential_norm(ellipse_tube, params, grid[i]);
  });
  if (std::all_of(ellipse_values.begin(), ellipse_values.end(),
                  [](double v) { return std::isfinite(v); })) {
    probe.add(*std::max_element(ellipse_values.begin(), ellipse_values.end()));
  } else {
    probe.add_error();
  }
  for (const auto* pair : {&circle, &ellipse}) {
    const ParametricSurface tube = hopf_tube(params, *pair);
    add_all(curvature, sweep(grid.size(), [&](std::size_t i) {
              const double f = shape_operator(tube, params, grid[i].x(), grid[i].y()).f;
              return f - base_geodesic_curvature(params, *pair, grid[i].x());
            }));
  }
  return {round.finish(), probe.finish(), curvature.finish()};
}

std::vector<SuiteEntry> theorem52_suite(const BcvParams& params, std::uint64_t seed) {
  const double rho = fixture_scale(params);
  Rng rng(seed);
  std::vector<ProfileState> inits;
  while (inits.size() < 10) {
    const double r = rho * uniform(rng, 0.3, 1.2);
    const double sigma = uniform(rng, 0.0, kPi);
    if (std::abs(std::cos(sigma)) > 0.1) inits.push_back({0.0, r, 0.0, sigma});
  }
  IntegrationConfig config;
  config.s_max = rho;
  const auto runs = parallel_map<BranchTrajectory>(inits.size(), [&](std::size_t i) {
    return integrate_noncmc_branch(params, inits[i], config);
  });

  const bool space_form = params.is_space_form();
  EntryBuilder r2("theorem52.r2", 1e-10);
  EntryBuilder r1 = space_form ? EntryBuilder("theorem52.space_form_r1", 1e-8)
                               : EntryBuilder("theorem52.r1", 1e-3, Bound::Exceeds);
  EntryBuilder zero_sets("theorem52.zero_set_mismatches", 0.5);
  EntryBuilder ratio("theorem52.obstruction_ratio", 1e-9);
  for (const BranchTrajectory& run : runs) {
    if (run.status == BranchStatus::SelfConsistencyFailure || run.samples.size() < 2) {
      r1.add_error();
      r2.add_error();
      continue;
    }
    double worst_r1 = 0.0;
    for (const BranchSample& s : run.samples) {
      r2.add(s.r2);
      worst_r1 = std::max(worst_r1, std::abs(s.r1));
      const double w = twist_factor(params, s.r);
      ratio.add((s.r1 + 2.0 / (3.0 * w * w * w) * s.obstruction) /
                std::max(1.0, std::abs(s.r1)));
      if (space_form) r1.add(s.r1);
    }
    if (!space_form) r1.add(worst_r1);
    zero_sets.add(static_cast<double>(zero_set_mismatches(run)));
  }

  EntryBuilder order("theorem52.rk4_order", 0.3);
  try {
    order.add(observed_rk4_order(params, {0.0, rho, 0.0, 1.0}, rho, 0.1 * rho) - 4.0);
  } catch (const std::exception&) {
    order.add_error();
  }
  return {r2.finish(), r1.finish(), zero_sets.finish(), ratio.finish(), order.finish()};
}

using SuiteFn = std::vector<SuiteEntry> (*)(const BcvParams&, std::uint64_t);

SuiteFn lookup(std::string_view name) {
  if (name == "frame") return frame_suite;
  if (name == "ricci") return ricci_suite;
  if (name == "submersion") return submersion_suite;
  if (name == "gauss-codazzi") return gauss_codazzi_suite;
  if (name == "biconservative") return biconservative_suite;
  if (name == "theorem44") return theorem44_suite;
  if (name == "theorem52") return theorem52_suite;
  return nullptr;
}

}  // namespace

const std::vector<std::string>& suite_registry() {
  static const std::vector<std::string> names{"frame",          "ricci",     "submersion",
                                              "gauss-codazzi",  "biconservative",
                                              "theorem44",      "theorem52"};
  return names;
}

bool is_known_suite(std::string_view name) { return lookup(name) != nullptr; }

std::vector<SuiteEntry> run_suite(std::string_view name, const BcvParams& params,
                                  std::uint64_t seed) {
  const SuiteFn fn = lookup(name);
  if (fn == nullptr) throw std::invalid_argument("unknown suite: " + std::string(name));
  const Rng rng = suite_rng(seed, name);
  return fn(params, Rng(rng)());
}

VerifyReport run_verify(const BcvParams& params, const std::vector<std::string>& names,
                        std::uint64_t seed) {
  for (const std::string& name : names) {
    if (!is_known_suite(name)) throw std::invalid_argument("unknown suite: " + name);
  }
  VerifyReport report;
  report.params = params;
  report.seed = seed;
  for (const std::string& name : suite_registry()) {
    if (!names.empty() && std::find(names.begin(), names.end(), name) == names.end()) continue;
    for (SuiteEntry& e : run_suite(name, params, seed)) report.entries.push_back(std::move(e));
  }
  return report;
}

double fixture_scale(const BcvParams& params) {
  const double k = std::abs(params.kappa);
  return k > 1.0 ? 1.0 / std::sqrt(k) : 1.0;
}

std::vector<Eigen::Vector3d> random_points(const BcvParams& params, std::size_t count,
                                           std::uint64_t seed) {
  Rng rng(seed);
  const double reach = params.kappa < 0.0 ? std::sqrt(3.0 / -params.kappa) : 2.0;
  const double box = std::min(2.0, reach);
  std::vector<Eigen::Vector3d> out;
  out.reserve(count);
  while (out.size() < count) {
    const Eigen::Vector3d p(uniform(rng, -box, box), uniform(rng, -box, box),
                            uniform(rng, -2.0, 2.0));
    if (smoothing_factor(params, p.x(), p.y()) >= 0.25) out.push_back(p);
  }
  return out;
}

Eigen::Matrix3d ricci_fd_frame(const BcvParams& params, const AmbientPoint& p) {
  const Christoffel gamma = christoffel_fd(params, p);
  // dgamma[i][k](a, b) = d_i Gamma^k_ab
  std::array<Christoffel, 3> dgamma;
  for (int i = 0; i < 3; ++i) {
    const double h = 2e-3 * std::max(1.0, std::abs(p.coords()(i)));
    const auto at = [&](double offset) {
      Eigen::Vector3d q = p.coords();
      q(i) += offset * h;
      return christoffel_fd(params, AmbientPoint(params, q));
    };
    const Christoffel p2 = at(2.0), p1 = at(1.0), m1 = at(-1.0), m2 = at(-2.0);
    for (int k = 0; k < 3; ++k) {
      dgamma[i][k] = (-p2[k] + 8.0 * p1[k] - 8.0 * m1[k] + m2[k]) / (12.0 * h);
    }
  }
  // Ric_jk = d_i Gamma^i_jk - d_j Gamma^i_ik + Gamma^i_im Gamma^m_jk - Gamma^i_jm Gamma^m_ik
  Eigen::Matrix3d ric = Eigen::Matrix3d::Zero();
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      double sum = 0.0;
      for (int i = 0; i < 3; ++i) {
        sum += dgamma[i][i](j, k) - dgamma[j][i](i, k);
        for (int m = 0; m < 3; ++m) {
          sum += gamma[i](i, m) * gamma[m](j, k) - gamma[i](j, m) * gamma[m](i, k);
        }
      }
      ric(j, k) = sum;
    }
  }
  Eigen::Matrix3d frame;
  for (int a = 0; a < 3; ++a) frame.col(a) = from_frame(params, p, Eigen::Vector3d::Unit(a));
  return frame.transpose() * ric * frame;
}

std::vector<double> admissible_cylinder_radii(const BcvParams& params) {
  std::vector<double> out;
  for (double r0 : {0.5, 1.0, 2.0}) {
    if (radial_factor(params, r0) > 0.05) out.push_back(r0);
  }
  return out;
}

ProfileCurve generic_profile(const BcvParams& params) {
  const double rho = fixture_scale(params);
  const ProfileState init{0.0, 0.8 * rho, 0.0, 0.6};
  return integrated_profile(
      params, init, [rho](double s, double, double) { return (0.3 + 0.4 * s / rho) / rho; },
      rho);
}

ProfileCurve cmc_profile(const BcvParams& params, double mean_curvature) {
  const double rho = fixture_scale(params);
  const ProfileState init{0.0, 0.8 * rho, 0.0, 0.6};
  const double kappa = params.kappa;
  return integrated_profile(
      params, init,
      [mean_curvature, kappa](double, double r, double sigma) {
        return mean_curvature - (1.0 / r - 0.25 * kappa * r) * std::sin(sigma);
      },
      rho);
}

std::vector<NamedSurface> structural_surfaces(const BcvParams& params) {
  std::vector<NamedSurface> out;
  for (double r0 : admissible_cylinder_radii(params)) {
    out.push_back({"hopf_cylinder_r" + format_real(r0), hopf_cylinder(params, r0)});
  }
  out.push_back({"revolution", revolution_surface(params, generic_profile(params))});
  const double rho = fixture_scale(params);
  out.push_back({"ellipse_tube", hopf_tube(params, ellipse_curve(rho, 0.6 * rho))});
  return out;
}

std::vector<Eigen::Vector2d> interior_grid(const ParameterDomain& domain, int nu, int nv) {
  std::vector<Eigen::Vector2d> out;
  out.reserve(static_cast<std::size_t>(nu * nv));
  for (int i = 1; i <= nu; ++i) {
    for (int j = 1; j <= nv; ++j) {
      out.emplace_back(domain.u0 + (domain.u1 - domain.u0) * i / (nu + 1),
                       domain.v0 + (domain.v1 - domain.v0) * j / (nv + 1));
    }
  }
  return out;
}

double observed_rk4_order(const BcvParams& params, const ProfileState& init, double s_end,
                          double h) {
  const SigmaRate rate = [params](double, double r, double sigma) {
    return branch_sigma_rate(params, r, sigma);
  };
  const auto solve = [&](double step) {
    const int n = static_cast<int>(std::lround((s_end - init.s) / step));
    ProfileState y = init;
    for (int i = 0; i < n; ++i) y = profile_rk4_step(params, y, rate, step);
    return Eigen::Vector3d(y.r, y.z, y.sigma);
  };
  const Eigen::Vector3d coarse = solve(h);
  const Eigen::Vector3d mid = solve(0.5 * h);
  const Eigen::Vector3d fine = solve(0.25 * h);
  return std::log2(max_abs(coarse - mid) / max_abs(mid - fine));
}

std::size_t zero_set_mismatches(const BranchTrajectory& trajectory, double window) {
  const auto crosses = [window](double a, double b) {
    return std::abs(a) < window || std::abs(b) < window || (a < 0.0) != (b < 0.0);
  };
  std::size_t count = 0;
  const auto& rows = trajectory.samples;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const bool r1 = crosses(rows[i - 1].r1, rows[i].r1);
    const bool obstruction = crosses(rows[i - 1].obstruction, rows[i].obstruction);
    if (r1 != obstruction) ++count;
  }
  return count;
}

}  // namespace bcv::app
