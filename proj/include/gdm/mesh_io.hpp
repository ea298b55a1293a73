// Plain-text mesh format, line oriented:
//
//   POLYMESH 2
//   VERTICES n          followed by n lines "x y"
//   FACES m             followed by m lines "v1 v2"
//   CELLS k             followed by k lines "cx cy nf f1 ... f_nf"
//
// Indices are 0-based, comments start with '#'.

#pragma once

#include <iosfwd>
#include <string>

#include "gdm/mesh.hpp"

namespace gdm {

PolytopalMesh parse_mesh(const std::string& text);
PolytopalMesh read_mesh_file(const std::string& path);

std::string serialize_mesh(const PolytopalMesh& mesh);
void write_mesh_file(const PolytopalMesh& mesh, const std::string& path);

}  // namespace gdm
