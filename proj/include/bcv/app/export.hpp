#pragma once

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "bcv/immersion.hpp"
#include "bcv/rotation.hpp"

namespace bcv::app {

/// Unreadable or malformed input file.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Header `s,r,z,sigma,f,R1,R2,obstruction`, one row per sample, then
/// `# status: <status>` and one `# warning:` line per warning.
void write_trajectory_csv(std::ostream& out, const BranchTrajectory& trajectory);

/// Rows `s,r,z,sigma[,...]`; lines starting with '#' and a non-numeric header
/// are skipped, extra columns ignored.
std::vector<ProfileState> read_profile_csv(const std::string& path);
/// Rows `x,y`.
std::vector<Eigen::Vector2d> read_base_csv(const std::string& path);

struct MeshGrid {
  std::vector<Eigen::Vector3d> vertices;  ///< row-major in u, nv per row
  std::vector<double> residuals;          ///< tangential bitension norm per vertex
  int nu = 0;
  int nv = 0;

  double max_residual() const;
};

/// nu x nv vertices spanning the closed parameter domain. Throws DomainError
/// when the chart leaves the domain.
MeshGrid sample_mesh(const ParametricSurface& surface, const BcvParams& params, int nu, int nv);

void write_obj(std::ostream& out, const MeshGrid& mesh, const BcvParams& params,
               const std::string& label);

}  // namespace bcv::app
