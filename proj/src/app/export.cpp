#include "bcv/app/export.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "bcv/app/parallel.hpp"
#include "bcv/app/report.hpp"
#include "bcv/biconservative.hpp"

namespace bcv::app {

namespace {

bool parse_real(std::string_view text, double& value) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::vector<std::vector<double>> read_rows(const std::string& path, std::size_t columns) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#' || line == "\r") continue;
    std::vector<double> row;
    std::stringstream fields(line);
    std::string field;
    bool numeric = true;
    while (row.size() < columns && std::getline(fields, field, ',')) {
      double v = 0.0;
      if (!parse_real(field, v)) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric && rows.empty() && line_no == 1) continue;
    if (!numeric || row.size() < columns) {
      throw InputError(path + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(columns) + " numeric columns");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError(path + ": no data rows");
  return rows;
}

}  // namespace

void write_trajectory_csv(std::ostream& out, const BranchTrajectory& trajectory) {
  out << "s,r,z,sigma,f,R1,R2,obstruction\n";
  for (const BranchSample& s : trajectory.samples) {
    out << format_real(s.s) << ',' << format_real(s.r) << ',' << format_real(s.z) << ','
        << format_real(s.sigma) << ',' << format_real(s.f) << ',' << format_real(s.r1) << ','
        << format_real(s.r2) << ',' << format_real(s.obstruction) << '\n';
  }
  for (const std::string& w : trajectory.warnings) out << "# warning: " << w << '\n';
  out << "# status: " << to_string(trajectory.status) << '\n';
}

std::vector<ProfileState> read_profile_csv(const std::string& path) {
  std::vector<ProfileState> out;
  for (const auto& row : read_rows(path, 4)) out.push_back({row[0], row[1], row[2], row[3]});
  return out;
}

std::vector<Eigen::Vector2d> read_base_csv(const std::string& path) {
  std::vector<Eigen::Vector2d> out;
  for (const auto& row : read_rows(path, 2)) out.emplace_back(row[0], row[1]);
  return out;
}

double MeshGrid::max_residual() const {
  return residuals.empty() ? 0.0 : *std::max_element(residuals.begin(), residuals.end());
}

MeshGrid sample_mesh(const ParametricSurface& surface, const BcvParams& params, int nu, int nv) {
  if (nu < 2 || nv < 2) throw std::invalid_argument("mesh needs nu, nv >= 2");
  const ParameterDomain& d = surface.domain();
  MeshGrid mesh;
  mesh.nu = nu;
  mesh.nv = nv;
  const auto n = static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv);
  const auto uv = [&](std::size_t k) {
    const int i = static_cast<int>(k) / nv;
    const int j = static_cast<int>(k) % nv;
    return Eigen::Vector2d(d.u0 + (d.u1 - d.u0) * i / (nu - 1),
                           d.v0 + (d.v1 - d.v0) * j / (nv - 1));
  };
  mesh.vertices = parallel_map<Eigen::Vector3d>(n, [&](std::size_t k) {
    const Eigen::Vector2d p = uv(k);
    return surface.point(params, p.x(), p.y()).coords();
  });
  mesh.residuals = parallel_map<double>(n, [&](std::size_t k) {
    const Eigen::Vector2d p = uv(k);
    return norm(params, tangential_bitension(surface, params, p.x(), p.y()));
  });
  return mesh;
}

void write_obj(std::ostream& out, const MeshGrid& mesh, const BcvParams& params,
               const std::string& label) {
  out << "# bcv mesh " << label << '\n';
  out << "# kappa " << format_real(params.kappa) << '\n';
  out << "# tau " << format_real(params.tau) << '\n';
  out << "# grid " << mesh.nu << ' ' << mesh.nv << '\n';
  out << "# max_tangential_bitension " << format_real(mesh.max_residual()) << '\n';
  for (const Eigen::Vector3d& v : mesh.vertices) {
    out << "v " << format_real(v.x()) << ' ' << format_real(v.y()) << ' ' << format_real(v.z())
        << '\n';
  }
  for (int i = 0; i + 1 < mesh.nu; ++i) {
    for (int j = 0; j + 1 < mesh.nv; ++j) {
      const int a = i * mesh.nv + j + 1;
      const int b = (i + 1) * mesh.nv + j + 1;
      out << "f " << a << ' ' << b << ' ' << b + 1 << ' ' << a + 1 << '\n';
    }
  }
}

}  // namespace bcv::app
