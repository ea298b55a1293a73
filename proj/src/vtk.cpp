#include "gdm/vtk.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gdm/errors.hpp"

namespace gdm {

namespace {
constexpr int kVtkPolygon = 7;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

std::string vtk_unstructured_grid(const PolytopalMesh& mesh,
                                  const std::vector<double>& cell_values,
                                  const std::string& field_name, const std::string& title) {
  if (static_cast<int>(cell_values.size()) != mesh.n_cells())
    throw IoError("cell data size does not match the cell count");

  std::ostringstream out;
  out << "# vtk DataFile Version 2.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";

  out << "POINTS " << mesh.n_vertices() << " double\n";
  for (const Vec2& v : mesh.vertices()) out << fmt(v.x()) << " " << fmt(v.y()) << " 0\n";

  int list_size = 0;
  for (const Cell& K : mesh.cells()) list_size += 1 + static_cast<int>(K.vertices.size());
  out << "CELLS " << mesh.n_cells() << " " << list_size << "\n";
  for (const Cell& K : mesh.cells()) {
    out << K.vertices.size();
    for (int v : K.vertices) out << " " << v;
    out << "\n";
  }

  out << "CELL_TYPES " << mesh.n_cells() << "\n";
  for (int c = 0; c < mesh.n_cells(); ++c) out << kVtkPolygon << "\n";

  out << "CELL_DATA " << mesh.n_cells() << "\n";
  out << "SCALARS " << field_name << " double 1\nLOOKUP_TABLE default\n";
  for (double v : cell_values) out << fmt(v) << "\n";
  return out.str();
}

void write_vtk_file(const std::string& path, const PolytopalMesh& mesh,
                    const std::vector<double>& cell_values, const std::string& field_name,
                    const std::string& title) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write VTK file '" + path + "'");
  out << vtk_unstructured_grid(mesh, cell_values, field_name, title);
}

}  // namespace gdm
