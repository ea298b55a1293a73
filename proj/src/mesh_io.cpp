#include "gdm/mesh_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace gdm {

namespace {

// line reader that skips blanks and '#' comments while tracking line numbers
class LineReader {
 public:
  explicit LineReader(const std::string& text) : in_(text) {}

  bool next(std::string& out) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      out = line.substr(first);
      return true;
    }
    return false;
  }

  int line_no() const { return line_no_; }

 private:
  std::istringstream in_;
  int line_no_ = 0;
};

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

PolytopalMesh parse_mesh(const std::string& text) {
  LineReader reader(text);
  std::string line;

  auto expect_line = [&](const char* what) {
    if (!reader.next(line)) throw ParseError(reader.line_no(), std::string("expected ") + what);
  };

  expect_line("header POLYMESH 2");
  {
    std::istringstream ss(line);
    std::string magic;
    int version = 0;
    if (!(ss >> magic >> version) || magic != "POLYMESH" || version != 2)
      throw ParseError(reader.line_no(), "bad header, expected 'POLYMESH 2'");
  }

  auto read_count = [&](const char* keyword) {
    expect_line(keyword);
    std::istringstream ss(line);
    std::string kw;
    long count = -1;
    if (!(ss >> kw >> count) || kw != keyword || count < 0)
      throw ParseError(reader.line_no(), std::string("expected '") + keyword + " <count>'");
    return count;
  };

  const long nv = read_count("VERTICES");
  std::vector<Vec2> vertices(nv);
  for (long i = 0; i < nv; ++i) {
    expect_line("vertex line");
    std::istringstream ss(line);
    double x, y;
    if (!(ss >> x >> y)) throw ParseError(reader.line_no(), "bad vertex line");
    vertices[i] = Vec2(x, y);
  }

  const long nf = read_count("FACES");
  std::vector<std::array<int, 2>> faces(nf);
  for (long i = 0; i < nf; ++i) {
    expect_line("face line");
    std::istringstream ss(line);
    int a, b;
    if (!(ss >> a >> b)) throw ParseError(reader.line_no(), "bad face line");
    if (a < 0 || a >= nv || b < 0 || b >= nv)
      throw ParseError(reader.line_no(), "face vertex index out of range");
    faces[i] = {a, b};
  }

  const long nc = read_count("CELLS");
  std::vector<std::vector<int>> cells(nc);
  std::vector<Vec2> centres(nc);
  for (long i = 0; i < nc; ++i) {
    expect_line("cell line");
    std::istringstream ss(line);
    double cx, cy;
    int count;
    if (!(ss >> cx >> cy >> count) || count < 3)
      throw ParseError(reader.line_no(), "bad cell line");
    centres[i] = Vec2(cx, cy);
    cells[i].resize(count);
    for (int k = 0; k < count; ++k) {
      if (!(ss >> cells[i][k])) throw ParseError(reader.line_no(), "truncated cell face list");
      if (cells[i][k] < 0 || cells[i][k] >= nf)
        throw ParseError(reader.line_no(), "cell face index out of range");
    }
  }

  return build_polytopal_mesh(vertices, faces, cells, centres);
}

std::string serialize_mesh(const PolytopalMesh& mesh) {
  std::ostringstream out;
  out << "POLYMESH 2\n";
  out << "VERTICES " << mesh.n_vertices() << "\n";
  for (const Vec2& v : mesh.vertices())
    out << fmt_double(v.x()) << " " << fmt_double(v.y()) << "\n";
  out << "FACES " << mesh.n_faces() << "\n";
  for (const Face& f : mesh.faces()) out << f.vertices[0] << " " << f.vertices[1] << "\n";
  out << "CELLS " << mesh.n_cells() << "\n";
  for (const Cell& K : mesh.cells()) {
    out << fmt_double(K.centre.x()) << " " << fmt_double(K.centre.y()) << " " << K.faces.size();
    for (int f : K.faces) out << " " << f;
    out << "\n";
  }
  return out.str();
}

PolytopalMesh read_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open mesh file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_mesh(buf.str());
}

void write_mesh_file(const PolytopalMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write mesh file '" + path + "'");
  out << serialize_mesh(mesh);
}

}  // namespace gdm
