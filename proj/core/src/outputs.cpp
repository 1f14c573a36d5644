#include "oedg/outputs.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "oedg/version.hpp"

namespace oedg {

namespace {

void append_num(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void append_row(std::string& out, const double* vals, int count) {
  for (int i = 0; i < count; ++i) {
    if (i) out += ',';
    append_num(out, vals[i]);
  }
  out += '\n';
}

std::string comp_columns(int n_comp) {
  std::string s;
  for (int c = 0; c < n_comp; ++c) {
    s += ",u";
    s += std::to_string(c);
  }
  return s;
}

}  // namespace

std::string csv_header_comment(const OutputMeta& meta) {
  std::string s = "# problem=" + meta.problem + " k=" + std::to_string(meta.k) +
                  " resolution=" + meta.resolution + " cfl=";
  append_num(s, meta.cfl);
  s += " build=";
  s += kBuildId;
  s += '\n';
  return s;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

void write_cell_average_csv(const std::string& path, const OutputMeta& meta,
                            const DGSolution1D& sol) {
  const int nc = sol.n_comp;
  std::string out = csv_header_comment(meta);
  out += "x" + comp_columns(nc) + "\n";
  std::vector<double> row(1 + nc);
  for (int j = 0; j < sol.mesh->num_cells(); ++j) {
    row[0] = sol.mesh->center(j);
    for (int c = 0; c < nc; ++c) row[1 + c] = sol.cell_average(j, c);
    append_row(out, row.data(), 1 + nc);
  }
  write_file_atomic(path, out);
}

void write_cell_average_csv(const std::string& path, const OutputMeta& meta,
                            const DGSolution2D& sol) {
  const int nc = sol.n_comp;
  std::string out = csv_header_comment(meta);
  out += "x,y" + comp_columns(nc) + "\n";
  std::vector<double> row(2 + nc);
  for (int j = 0; j < sol.mesh->ny(); ++j)
    for (int i = 0; i < sol.mesh->nx(); ++i) {
      const int cell = sol.mesh->flat(i, j);
      row[0] = sol.mesh->x_center(i);
      row[1] = sol.mesh->y_center(j);
      for (int c = 0; c < nc; ++c) row[2 + c] = sol.cell_average(cell, c);
      append_row(out, row.data(), 2 + nc);
    }
  write_file_atomic(path, out);
}

void write_point_samples_csv(const std::string& path, const OutputMeta& meta,
                             const DGSolution1D& sol) {
  constexpr int kPerCell = 8;
  const int nc = sol.n_comp;
  std::string out = csv_header_comment(meta);
  out += "x" + comp_columns(nc) + "\n";
  std::vector<double> row(1 + nc);
  for (int j = 0; j < sol.mesh->num_cells(); ++j) {
    for (int s = 0; s < kPerCell; ++s) {
      const double xi = -0.5 + static_cast<double>(s) / (kPerCell - 1);
      row[0] = sol.mesh->center(j) + xi * sol.mesh->width(j);
      for (int c = 0; c < nc; ++c) row[1 + c] = evaluate_1d(sol, j, c, xi);
      append_row(out, row.data(), 1 + nc);
    }
  }
  write_file_atomic(path, out);
}

void write_contour_grid_csv(const std::string& path, const OutputMeta& meta,
                            const DGSolution2D& sol) {
  constexpr int kPerCell = 4;
  const int nc = sol.n_comp;
  std::string out = csv_header_comment(meta);
  out += "x,y" + comp_columns(nc) + "\n";
  out.reserve(out.size() + static_cast<size_t>(sol.mesh->num_cells()) * kPerCell * kPerCell *
                               (2 + nc) * 12);
  std::vector<double> row(2 + nc);
  const int nx = sol.mesh->nx(), ny = sol.mesh->ny();
  for (int j = 0; j < ny; ++j) {
    for (int sj = 0; sj < kPerCell; ++sj) {
      const double eta = -0.5 + (2.0 * sj + 1.0) / (2.0 * kPerCell);
      for (int i = 0; i < nx; ++i) {
        const int cell = sol.mesh->flat(i, j);
        for (int si = 0; si < kPerCell; ++si) {
          const double xi = -0.5 + (2.0 * si + 1.0) / (2.0 * kPerCell);
          row[0] = sol.mesh->x_center(i) + xi * sol.mesh->hx(i);
          row[1] = sol.mesh->y_center(j) + eta * sol.mesh->hy(j);
          for (int c = 0; c < nc; ++c) row[2 + c] = evaluate_2d(sol, cell, c, xi, eta);
          append_row(out, row.data(), 2 + nc);
        }
      }
    }
  }
  write_file_atomic(path, out);
}

void write_error_report_csv(const std::string& path, const OutputMeta& meta,
                            const ErrorReport& report) {
  std::string out = csv_header_comment(meta);
  out += "e1,e2,e3,e4,e5\n";
  const double vals[5] = {report.e1, report.e2, report.e3, report.e4, report.e5};
  append_row(out, vals, 5);
  write_file_atomic(path, out);
}

void write_residue_csv(const std::string& path, const OutputMeta& meta,
                       const std::vector<std::pair<double, double>>& history) {
  std::string out = csv_header_comment(meta);
  out += "t,residue\n";
  for (const auto& [t, res] : history) {
    const double vals[2] = {t, res};
    append_row(out, vals, 2);
  }
  write_file_atomic(path, out);
}

void write_reference_csv(const std::string& path, const OutputMeta& meta,
                         const ReferenceSolution& ref) {
  std::string out = csv_header_comment(meta);
  out += "x" + comp_columns(ref.n_comp) + "\n";
  std::vector<double> row(1 + ref.n_comp);
  for (int j = 0; j < ref.n_cells; ++j) {
    row[0] = ref.x_center(j);
    for (int c = 0; c < ref.n_comp; ++c) row[1 + c] = ref.at(j, c);
    append_row(out, row.data(), 1 + ref.n_comp);
  }
  write_file_atomic(path, out);
}

}  // namespace oedg
