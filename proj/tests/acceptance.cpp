// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "bcv/app/suites.hpp"
#include "bcv/biconservative.hpp"

using namespace bcv;
using namespace bcv::app;

namespace {

constexpr std::uint64_t kSeed = 42;

const std::vector<BcvParams> kPairs = {{0.0, 0.0}, {1.0, 0.0}, {-1.0, 0.0},
                                       {0.0, 0.5}, {1.0, 0.5}, {4.0, 1.0}};

struct Outcome {
  bool pass = true;
  std::string detail;
};

void note(Outcome& out, const std::string& label, bool ok, const std::string& detail) {
  out.pass = out.pass && ok;
  if (!out.detail.empty()) out.detail += "; ";
  out.detail += label + " " + detail + (ok ? "" : " [fail]");
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

/// Runs `suite` for each pair and folds the named entries into the outcome,
/// keeping the worst residual across pairs.
void fold(Outcome& out, const std::string& suite, const std::vector<BcvParams>& pairs,
          const std::vector<std::string>& names) {
  std::vector<std::vector<SuiteEntry>> runs;
  for (const BcvParams& p : pairs) runs.push_back(run_suite(suite, p, kSeed));
  for (const std::string& name : names) {
    bool ok = true;
    bool found = false;
    double worst = 0.0;
    Bound bound = Bound::Below;
    for (const auto& entries : runs) {
      for (const SuiteEntry& e : entries) {
        if (e.name != name) continue;
        if (!found) worst = e.max_residual;
        found = true;
        bound = e.bound;
        ok = ok && e.pass;
        worst = bound == Bound::Exceeds ? std::min(worst, e.max_residual)
                                        : std::max(worst, e.max_residual);
      }
    }
    note(out, name, found && ok,
         found ? (bound == Bound::Exceeds ? "min=" : "max=") + sci(worst) : "missing");
  }
}

std::vector<BcvParams> non_space_forms() {
  std::vector<BcvParams> out;
  for (const BcvParams& p : kPairs) {
    if (!p.is_space_form()) out.push_back(p);
  }
  return out;
}

Outcome quartic() {
  Outcome out;
  constexpr double pi = std::numbers::pi;
  const QuarticReport round = constant_angle_suite({1.0, 0.0}, pi / 3);
  double err = round.real_roots.size() == 2 ? 0.0 : 1.0;
  if (round.real_roots.size() == 2) {
    err = std::max(std::abs(round.real_roots[0] + std::sqrt(3.0) * 0.5),
                   std::abs(round.real_roots[1] - std::sqrt(3.0) * 0.5));
  }
  note(out, "roots(1,0,pi/3)", err < 1e-10, "err=" + sci(err));

  const QuarticReport nil = constant_angle_suite({0.0, 0.5}, pi / 4);
  double worst = 0.0;
  for (double root : nil.real_roots) worst = std::max(worst, std::abs(nil.evaluate(root)));
  note(out, "residual(0,0.5,pi/4)", !nil.real_roots.empty() && worst < 1e-10,
       std::to_string(nil.real_roots.size()) + " roots max=" + sci(worst));

  note(out, "degenerate(pi/2)", constant_angle_suite({1.0, 0.5}, pi / 2).degenerate, "flag");
  return out;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<BcvParams> trio = {{1.0, 1.0}, {0.0, 0.5}, {-1.0, 0.5}};
  const std::vector<Criterion> criteria = {
      {1, "frame orthonormality",
       [] {
         Outcome o;
         fold(o, "frame", kPairs, {"frame.orthonormality"});
         return o;
       }},
      {2, "Ricci closed form vs finite differences",
       [] {
         Outcome o;
         fold(o, "ricci", kPairs, {"ricci.fd_oracle"});
         return o;
       }},
      {3, "Hopf submersion",
       [] {
         Outcome o;
         fold(o, "submersion", kPairs,
              {"submersion.horizontal_isometry", "submersion.vertical_kernel"});
         return o;
       }},
      {4, "structural identities on sampled surfaces",
       [] {
         Outcome o;
         fold(o, "gauss-codazzi", kPairs,
              {"gauss-codazzi.gauss", "gauss-codazzi.codazzi", "gauss-codazzi.compatibility",
               "gauss-codazzi.jet"});
         return o;
       }},
      {5, "Hopf circular cylinders are biconservative",
       [] {
         Outcome o;
         fold(o, "biconservative", non_space_forms(),
              {"biconservative.cylinder_tangential", "biconservative.cylinder_reduced"});
         return o;
       }},
      {6, "Hopf tube discrimination",
       [] {
         Outcome o;
         fold(o, "theorem44", {{0.0, 0.5}}, {"theorem44.ellipse_tube", "theorem44.circle_tube"});
         return o;
       }},
      {7, "non-CMC branch: R2 vanishes, R1 does not",
       [trio] {
         Outcome o;
         fold(o, "theorem52", trio,
              {"theorem52.r2", "theorem52.r1", "theorem52.zero_set_mismatches"});
         return o;
       }},
      {8, "CMC revolution surface in a space form",
       [] {
         Outcome o;
         fold(o, "biconservative", {{4.0, 1.0}},
              {"biconservative.space_form_cmc", "biconservative.space_form_curvature"});
         return o;
       }},
      {9, "constant-angle quartic", quartic},
      {10, "frame system vs tangential bitension components",
       [] {
         Outcome o;
         fold(o, "biconservative", kPairs, {"biconservative.frame_oracle"});
         return o;
       }},
      {11, "RK4 observed order",
       [trio] {
         Outcome o;
         fold(o, "theorem52", trio, {"theorem52.rk4_order"});
         return o;
       }},
      {12, "normal bitension closed form",
       [] {
         Outcome o;
         fold(o, "biconservative", kPairs, {"biconservative.cylinder_normal"});
         fold(o, "biconservative", {{0.0, 0.0}}, {"biconservative.sphere_normal"});
         return o;
       }},
  };

  int failures = 0;
  const auto start = std::chrono::steady_clock::now();
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::printf("%s %2d %s (%.2fs): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d/%zu criteria passed in %.1fs\n", static_cast<int>(criteria.size()) - failures,
              criteria.size(), total);
  return failures == 0 ? 0 : 1;
}
