// bcv: verification suites, branch trajectories and surface meshes.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bcv/app/export.hpp"
#include "bcv/app/report.hpp"
#include "bcv/app/suites.hpp"
#include "bcv/rotation.hpp"

namespace {

enum Exit : int { kPass = 0, kFailed = 1, kUsage = 2, kDomain = 3 };

struct Common {
  double kappa = 0.0;
  double tau = 0.0;
  std::string out;
};

void add_params(CLI::App* cmd, Common& common) {
  cmd->add_option("--kappa", common.kappa, "base curvature")->capture_default_str();
  cmd->add_option("--tau", common.tau, "bundle curvature")->capture_default_str();
  cmd->add_option("--out", common.out, "output file (default stdout)");
}

int emit(const Common& common, const std::string& text) {
  if (common.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return kPass;
  }
  std::ofstream file(common.out, std::ios::binary);
  if (!file) {
    std::cerr << "bcv: cannot write " << common.out << '\n';
    return kUsage;
  }
  file << text;
  return kPass;
}

struct VerifyArgs {
  Common common;
  std::vector<std::string> suites;
  std::uint64_t seed = 42;
  bool timing = false;
};

int run_verify(const VerifyArgs& args) {
  for (const std::string& name : args.suites) {
    if (!bcv::app::is_known_suite(name)) {
      std::cerr << "bcv: unknown suite '" << name << "' (known:";
      for (const std::string& known : bcv::app::suite_registry()) std::cerr << ' ' << known;
      std::cerr << ")\n";
      return kUsage;
    }
  }
  const auto params = bcv::BcvParams::make(args.common.kappa, args.common.tau);
  const auto start = std::chrono::steady_clock::now();
  bcv::app::VerifyReport report = bcv::app::run_verify(params, args.suites, args.seed);
  if (args.timing) {
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  const int written = emit(args.common, bcv::app::to_json(report));
  if (written != kPass) return written;
  return report.pass() ? kPass : kFailed;
}

struct IntegrateArgs {
  Common common;
  double r0 = 1.0;
  double sigma0 = std::numbers::pi / 2;
  double step = 1e-3;
  double smax = 1.0;
  int max_steps = 1000000;
};

int run_integrate(const IntegrateArgs& args) {
  const auto params = bcv::BcvParams::make(args.common.kappa, args.common.tau);
  if (!(args.step > 0.0) || args.max_steps < 1) {
    std::cerr << "bcv: --step must be positive and --max-steps at least 1\n";
    return kUsage;
  }
  const bcv::ProfileState init{0.0, args.r0, 0.0, args.sigma0};
  try {
    bcv::validate(params, init);
  } catch (const bcv::DomainError& e) {
    std::cerr << "bcv: invalid initial state: " << e.what() << '\n';
    return kUsage;
  }
  bcv::IntegrationConfig config;
  config.step = args.step;
  config.s_max = args.smax;
  config.max_steps = args.max_steps;
  const bcv::BranchTrajectory run = bcv::integrate_noncmc_branch(params, init, config);
  std::ostringstream csv;
  bcv::app::write_trajectory_csv(csv, run);
  return emit(args.common, csv.str());
}

struct MeshArgs {
  Common common;
  int nu = 16;
  int nv = 16;
  double r0 = 1.0;
  double height = 1.0;
  std::string profile;
  std::string base;
};

int run_mesh(const MeshArgs& args, const std::string& kind) {
  const auto params = bcv::BcvParams::make(args.common.kappa, args.common.tau);
  if (args.nu < 2 || args.nv < 2) {
    std::cerr << "bcv: --nu and --nv must be at least 2\n";
    return kUsage;
  }
  std::unique_ptr<bcv::ParametricSurface> surface;
  std::string label = kind;
  if (kind == "hopf-cylinder") {
    surface = std::make_unique<bcv::ParametricSurface>(
        bcv::hopf_cylinder(params, args.r0, args.height));
    label += " r0 " + bcv::app::format_real(args.r0);
  } else if (kind == "revolution") {
    const auto rows = bcv::app::read_profile_csv(args.profile);
    surface = std::make_unique<bcv::ParametricSurface>(
        bcv::revolution_surface(params, bcv::sampled_profile(params, rows)));
    label += " profile " + args.profile;
  } else {
    const auto points = bcv::app::read_base_csv(args.base);
    surface = std::make_unique<bcv::ParametricSurface>(
        bcv::hopf_tube(params, bcv::sampled_curve(points), args.height));
    label += " base " + args.base;
  }
  const bcv::app::MeshGrid mesh = bcv::app::sample_mesh(*surface, params, args.nu, args.nv);
  std::ostringstream obj;
  bcv::app::write_obj(obj, mesh, params, label);
  return emit(args.common, obj.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometry of BCV spaces: verification suites, branch trajectories, meshes"};
  app.require_subcommand(1);

  VerifyArgs verify;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run verification suites, JSON report");
  add_params(verify_cmd, verify.common);
  verify_cmd->add_option("--suite", verify.suites, "suite name (repeatable; default all)");
  verify_cmd->add_option("--seed", verify.seed, "RNG seed")->capture_default_str();
  verify_cmd->add_flag("--timing", verify.timing, "add wall time to the report");

  IntegrateArgs integrate;
  CLI::App* integrate_cmd =
      app.add_subcommand("integrate", "integrate the non-CMC rotational branch, CSV");
  add_params(integrate_cmd, integrate.common);
  integrate_cmd->add_option("--r0", integrate.r0, "initial radius")->capture_default_str();
  integrate_cmd->add_option("--sigma0", integrate.sigma0, "initial profile angle")
      ->capture_default_str();
  integrate_cmd->add_option("--step", integrate.step, "RK4 step")->capture_default_str();
  integrate_cmd->add_option("--smax", integrate.smax, "final arc length")->capture_default_str();
  integrate_cmd->add_option("--max-steps", integrate.max_steps, "row budget")
      ->capture_default_str();

  MeshArgs mesh;
  CLI::App* mesh_cmd = app.add_subcommand("mesh", "export a surface as OBJ");
  mesh_cmd->require_subcommand(1);
  std::string mesh_kind;
  const auto add_grid = [&](CLI::App* cmd) {
    add_params(cmd, mesh.common);
    cmd->add_option("--nu", mesh.nu, "vertices along u")->capture_default_str();
    cmd->add_option("--nv", mesh.nv, "vertices along v")->capture_default_str();
    cmd->callback([&mesh_kind, cmd] { mesh_kind = cmd->get_name(); });
  };
  CLI::App* cylinder_cmd = mesh_cmd->add_subcommand("hopf-cylinder", "Hopf circular cylinder");
  add_grid(cylinder_cmd);
  cylinder_cmd->add_option("--r0", mesh.r0, "radius")->capture_default_str();
  cylinder_cmd->add_option("--height", mesh.height, "fiber height")->capture_default_str();
  CLI::App* revolution_cmd =
      mesh_cmd->add_subcommand("revolution", "rotational surface from a profile CSV");
  add_grid(revolution_cmd);
  revolution_cmd->add_option("--profile", mesh.profile, "CSV with s,r,z,sigma")->required();
  CLI::App* tube_cmd = mesh_cmd->add_subcommand("hopf-tube", "Hopf tube over a base curve CSV");
  add_grid(tube_cmd);
  tube_cmd->add_option("--base", mesh.base, "CSV with x,y")->required();
  tube_cmd->add_option("--height", mesh.height, "fiber height")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (verify_cmd->parsed()) return run_verify(verify);
    if (integrate_cmd->parsed()) return run_integrate(integrate);
    return run_mesh(mesh, mesh_kind);
  } catch (const bcv::app::InputError& e) {
    std::cerr << "bcv: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bcv: " << e.what() << '\n';
    return kUsage;
  } catch (const bcv::DomainError& e) {
    std::cerr << "bcv: domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const bcv::DegenerateError& e) {
    std::cerr << "bcv: degenerate geometry: " << e.what() << '\n';
    return kDomain;
  }
}
