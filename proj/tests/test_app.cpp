#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "json.hpp"

#include "bcv/app/export.hpp"
#include "bcv/app/parallel.hpp"
#include "bcv/app/report.hpp"
#include "bcv/app/suites.hpp"

using namespace bcv;
using namespace bcv::app;

namespace {

std::string scratch(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("bcv_test_app_" + name);
  std::ofstream(path) << content;
  return path.string();
}

int count_prefix(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) n += line.rfind(prefix, 0) == 0;
  return n;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK(format_real(1.0) == "1");
  CHECK(format_real(-0.0) == "0");
  CHECK(format_real(1e-6) == "9.9999999999999995e-07");
  CHECK(format_real(std::nan("")) == "null");
}

TEST_CASE("entry builder") {
  EntryBuilder below("a", 1e-3);
  below.add(1e-4);
  below.add(-5e-4);
  SuiteEntry e = below.finish();
  CHECK(e.pass);
  CHECK(e.max_residual == 5e-4);
  CHECK(e.samples == 2);

  EntryBuilder probe("b", 1.0, Bound::Exceeds);
  probe.add(3.0);
  probe.add(2.0);
  CHECK(probe.finish().max_residual == 2.0);
  CHECK(probe.finish().pass);
  probe.add(0.5);
  CHECK_FALSE(probe.finish().pass);

  EntryBuilder broken("c", 1.0);
  broken.add(0.1);
  broken.add(std::nan(""));
  CHECK_FALSE(broken.finish().pass);
  CHECK(broken.finish().errors == 1);
  CHECK_FALSE(EntryBuilder("empty", 1.0).finish().pass);
}

TEST_CASE("report JSON") {
  VerifyReport report;
  report.params = {0.0, 0.5};
  report.entries.push_back(EntryBuilder("x", 1e-6).finish());
  std::string text = to_json(report);
  const auto parsed = nlohmann::ordered_json::parse(text);
  std::vector<std::string> keys;
  for (const auto& [k, v] : parsed.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"params", "seed", "suites", "pass"});
  CHECK(parsed["params"]["geometry"] == "Nil3");
  CHECK(parsed["seed"] == 42);
  CHECK(text.back() == '\n');
  CHECK(text.find("wall_time") == std::string::npos);
  CHECK(parsed["pass"] == false);

  report.entries[0] = [] {
    EntryBuilder b("x", 1e-6);
    b.add(1e-7);
    return b.finish();
  }();
  report.wall_time_seconds = 0.25;
  text = to_json(report);
  CHECK(nlohmann::json::parse(text)["pass"] == true);
  CHECK(text.find("\"wall_time_seconds\": 0.25") != std::string::npos);
  CHECK(text.find("\"tolerance\": 9.9999999999999995e-07") != std::string::npos);
}

TEST_CASE("worker pool") {
  const auto out = parallel_map<int>(1000, [](std::size_t i) { return static_cast<int>(i * i); });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i * i));
  CHECK_THROWS_AS(parallel_map<int>(10,
                                    [](std::size_t i) {
                                      if (i == 7) throw std::runtime_error("seven");
                                      return 0;
                                    }),
                  std::runtime_error);
  ::setenv("BCV_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  ::setenv("BCV_THREADS", "junk", 1);
  CHECK(worker_count() >= 1);
  ::unsetenv("BCV_THREADS");
}

TEST_CASE("suite registry") {
  CHECK(suite_registry().size() == 7);
  CHECK(is_known_suite("gauss-codazzi"));
  CHECK_FALSE(is_known_suite("nonsense"));
  CHECK_THROWS_AS(run_suite("nonsense", {0.0, 0.0}, 42), std::invalid_argument);
  CHECK_THROWS_AS(run_verify({0.0, 0.0}, {"frame", "nonsense"}, 42), std::invalid_argument);

  const VerifyReport frame = run_verify({1.0, 0.5}, {"frame"}, 42);
  REQUIRE(frame.entries.size() == 1);
  CHECK(frame.entries[0].name == "frame.orthonormality");
  CHECK(frame.pass());

  const std::string a = to_json(run_verify({0.0, 0.5}, {"submersion", "ricci"}, 7));
  const std::string b = to_json(run_verify({0.0, 0.5}, {"ricci", "submersion"}, 7));
  CHECK(a == b);
  const std::string c = to_json(run_verify({0.0, 0.5}, {"ricci"}, 8));
  CHECK(a != c);
}

TEST_CASE("fixtures stay inside the domain") {
  for (const BcvParams& params : {BcvParams{-1.0, 0.5}, BcvParams{-4.0, 0.2}, BcvParams{9.0, 1.0}}) {
    for (const Eigen::Vector3d& p : random_points(params, 200, 1)) {
      CHECK(smoothing_factor(params, p.x(), p.y()) >= 0.25);
    }
    CHECK_NOTHROW(structural_surfaces(params));
  }
  CHECK(admissible_cylinder_radii({-1.0, 0.5}) == std::vector<double>{0.5, 1.0});
  CHECK(interior_grid({0.0, 1.0, 0.0, 2.0}, 3, 1).size() == 3);
}

TEST_CASE("trajectory CSV") {
  BranchTrajectory run;
  run.samples.push_back({0.0, 1.0, 0.0, 0.5, 0.3, -0.1, 0.0, 0.2, 0.15});
  run.warnings.push_back("note");
  run.status = BranchStatus::NearAxis;
  std::ostringstream out;
  write_trajectory_csv(out, run);
  CHECK(out.str() ==
        "s,r,z,sigma,f,R1,R2,obstruction\n"
        "0,1,0,0.5,0.29999999999999999,0,0.20000000000000001,0.14999999999999999\n"
        "# warning: note\n"
        "# status: near_axis\n");
}

TEST_CASE("CSV readers") {
  const auto profile = read_profile_csv(scratch(
      "profile.csv", "s,r,z,sigma,f\n# comment\n0,1,0,1.5,9\n0.1,1.01,0.1,1.5,9\n"));
  REQUIRE(profile.size() == 2);
  CHECK(profile[1].r == 1.01);
  const auto base = read_base_csv(scratch("base.csv", "1,0\r\n0,1\r\n-1,0\r\n"));
  REQUIRE(base.size() == 3);
  CHECK(base[2].x() == -1.0);
  CHECK_THROWS_AS(read_base_csv("/nonexistent/base.csv"), InputError);
  CHECK_THROWS_AS(read_base_csv(scratch("bad.csv", "1,0\n1,zz\n")), InputError);
  CHECK_THROWS_AS(read_profile_csv(scratch("short.csv", "0,1,0\n")), InputError);
  CHECK_THROWS_AS(read_base_csv(scratch("empty.csv", "x,y\n")), InputError);
}

TEST_CASE("mesh export") {
  const BcvParams params{0.0, 0.5};
  const MeshGrid mesh = sample_mesh(hopf_cylinder(params, 1.0), params, 5, 4);
  CHECK(mesh.vertices.size() == 20);
  CHECK(mesh.max_residual() < 1e-6);
  std::ostringstream out;
  write_obj(out, mesh, params, "hopf-cylinder");
  const std::string text = out.str();
  CHECK(count_prefix(text, "v ") == 20);
  CHECK(count_prefix(text, "f ") == 12);
  CHECK(text.find("# max_tangential_bitension ") != std::string::npos);
  CHECK(text.find("\nf 1 5 6 2\n") != std::string::npos);
  CHECK_THROWS_AS(sample_mesh(hopf_cylinder(params, 1.0), params, 1, 4), std::invalid_argument);
}
