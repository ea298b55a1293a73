// Minimal legacy-VTK (version 2.0, ASCII) writer: the mesh as an
// unstructured grid of polygon cells with one scalar cell-data field.

#pragma once

#include <string>
#include <vector>

#include "gdm/mesh.hpp"

namespace gdm {

std::string vtk_unstructured_grid(const PolytopalMesh& mesh,
                                  const std::vector<double>& cell_values,
                                  const std::string& field_name = "density",
                                  const std::string& title = "gdm-rd");

void write_vtk_file(const std::string& path, const PolytopalMesh& mesh,
                    const std::vector<double>& cell_values,
                    const std::string& field_name = "density",
                    const std::string& title = "gdm-rd");

}  // namespace gdm
