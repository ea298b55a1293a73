#include "gdm/mesh_gen.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <utility>

namespace gdm {

std::string to_string(MeshKind kind) {
  switch (kind) {
    case MeshKind::triangular: return "triangular";
    case MeshKind::rectangular: return "rectangular";
    case MeshKind::hexagonal: return "hexagonal";
    case MeshKind::kershaw: return "kershaw";
  }
  return "?";
}

MeshKind mesh_kind_from_string(const std::string& name) {
  if (name == "triangular") return MeshKind::triangular;
  if (name == "rectangular") return MeshKind::rectangular;
  if (name == "hexagonal") return MeshKind::hexagonal;
  if (name == "kershaw") return MeshKind::kershaw;
  throw InvalidParams("unknown mesh kind '" + name + "'");
}

namespace {

// deduplicating face registry keyed by the (sorted) vertex pair
class EdgeRegistry {
 public:
  int add(int a, int b) {
    const auto key = std::minmax(a, b);
    auto [it, fresh] = ids_.try_emplace(key, static_cast<int>(edges_.size()));
    if (fresh) edges_.push_back({key.first, key.second});
    return it->second;
  }
  const std::vector<std::array<int, 2>>& edges() const { return edges_; }

 private:
  std::map<std::pair<int, int>, int> ids_;
  std::vector<std::array<int, 2>> edges_;
};

PolytopalMesh grid_mesh(double L, int nx, int ny,
                        const std::function<double(int, int)>& x_of,
                        const std::function<double(int, int)>& y_of) {
  std::vector<Vec2> vertices((nx + 1) * (ny + 1));
  auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) vertices[vid(i, j)] = Vec2(x_of(i, j), y_of(i, j));

  EdgeRegistry reg;
  std::vector<std::vector<int>> cells;
  cells.reserve(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int sw = vid(i, j), se = vid(i + 1, j), ne = vid(i + 1, j + 1), nw = vid(i, j + 1);
      cells.push_back({reg.add(sw, se), reg.add(se, ne), reg.add(ne, nw), reg.add(nw, sw)});
    }
  (void)L;
  return build_polytopal_mesh(vertices, reg.edges(), cells);
}

PolytopalMesh rectangular_mesh(double L, int n) {
  const double h = 2.0 * L / n;
  return grid_mesh(L, n, n,
                   [L, h](int i, int) { return -L + i * h; },
                   [L, h](int, int j) { return -L + j * h; });
}

PolytopalMesh triangular_mesh(double L, int n) {
  const int nx = 8 * n, ny = 7 * n;
  const double dx = 2.0 * L / nx, dy = 2.0 * L / ny;
  std::vector<Vec2> vertices((nx + 1) * (ny + 1) + nx * ny);
  auto vid = [nx](int i, int j) { return j * (nx + 1) + i; };
  auto cid = [nx, ny](int i, int j) { return (nx + 1) * (ny + 1) + j * nx + i; };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) vertices[vid(i, j)] = Vec2(-L + i * dx, -L + j * dy);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      vertices[cid(i, j)] = Vec2(-L + (i + 0.5) * dx, -L + (j + 0.5) * dy);

  EdgeRegistry reg;
  std::vector<std::vector<int>> cells;
  cells.reserve(4u * nx * ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const int sw = vid(i, j), se = vid(i + 1, j), ne = vid(i + 1, j + 1), nw = vid(i, j + 1);
      const int c = cid(i, j);
      const int corners[5] = {sw, se, ne, nw, sw};
      for (int k = 0; k < 4; ++k)
        cells.push_back({reg.add(corners[k], corners[k + 1]), reg.add(corners[k + 1], c),
                         reg.add(c, corners[k])});
    }
  return build_polytopal_mesh(vertices, reg.edges(), cells);
}

// --- kershaw distortion ---------------------------------------------------
// 1D boundary transforms of the unit interval; eps in (0,1], eps = 1 is the
// identity. The x-range splits into six layers blending the two transforms.

double kw_right(double eps, double v) { return (v <= 0.5) ? (2.0 - eps) * v : 1.0 + eps * (v - 1.0); }
double kw_left(double eps, double v) { return 1.0 - kw_right(eps, 1.0 - v); }
double kw_step(double a, double b, double lambda) {
  if (lambda <= 0.0) return a;
  if (lambda >= 1.0) return b;
  return a + (b - a) * lambda;
}

double kershaw_map(double eps, double u, double v) {
  const int layer = std::min(static_cast<int>(u * 6.0), 5);
  const double lambda = u * 6.0 - layer;
  switch (layer) {
    case 0: return kw_left(eps, v);
    case 1:
    case 4: return kw_step(kw_left(eps, v), kw_right(eps, v), lambda);
    case 2: return kw_step(kw_right(eps, v), kw_left(eps, v), 0.5 * lambda);
    case 3: return kw_step(kw_right(eps, v), kw_left(eps, v), 0.5 * (1.0 + lambda));
    default: return kw_right(eps, v);
  }
}

PolytopalMesh kershaw_mesh(double L, int n, double distortion) {
  if (distortion < 0.0 || distortion >= 1.0)
    throw InvalidParams("kershaw distortion must lie in [0,1)");
  const double h = 2.0 * L / n;
  if (distortion == 0.0)
    return grid_mesh(L, n, n,
                     [L, h](int i, int) { return -L + i * h; },
                     [L, h](int, int j) { return -L + j * h; });
  const double eps = 1.0 - distortion;
  return grid_mesh(L, n, n,
                   [L, h](int i, int) { return -L + i * h; },
                   [L, n, eps](int i, int j) {
                     return -L + 2.0 * L * kershaw_map(eps, double(i) / n, double(j) / n);
                   });
}

// --- hexagonal (Voronoi of a staggered lattice) ---------------------------

using Polygon = std::vector<Vec2>;

// keeps the part of `poly` with (x - mid).dot(dir) <= 0
Polygon clip_half_plane(const Polygon& poly, const Vec2& mid, const Vec2& dir) {
  Polygon out;
  const int m = static_cast<int>(poly.size());
  for (int i = 0; i < m; ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % m];
    const double da = (a - mid).dot(dir);
    const double db = (b - mid).dot(dir);
    if (da <= 0.0) out.push_back(a);
    if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
      const double t = da / (da - db);
      out.push_back(a + t * (b - a));
    }
  }
  return out;
}

class VertexWelder {
 public:
  explicit VertexWelder(double tol) : tol_(tol) {}

  int id_of(const Vec2& p) {
    const long long kx = llround(p.x() / tol_);
    const long long ky = llround(p.y() / tol_);
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy) {
        auto it = grid_.find({kx + dx, ky + dy});
        if (it != grid_.end() && (points_[it->second] - p).norm() <= 2.0 * tol_)
          return it->second;
      }
    const int id = static_cast<int>(points_.size());
    points_.push_back(p);
    grid_.emplace(std::make_pair(kx, ky), id);
    return id;
  }

  const std::vector<Vec2>& points() const { return points_; }

 private:
  double tol_;
  std::vector<Vec2> points_;
  std::map<std::pair<long long, long long>, int> grid_;
};

PolytopalMesh hexagonal_mesh(double L, int n) {
  const double H = 2.0 * L / n;
  auto generator = [&](int i, int j) {
    const double shift = (i % 2 == 0) ? 0.25 * H : -0.25 * H;
    return Vec2(-L + (i + 0.5) * H, -L + (j + 0.5) * H + shift);
  };

  VertexWelder welder(1e-9 * H);
  std::vector<std::vector<int>> cell_loops(static_cast<std::size_t>(n) * n);
  std::vector<Vec2> centres(static_cast<std::size_t>(n) * n);

  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const Vec2 g = generator(i, j);
      Polygon poly = {Vec2(-L, -L), Vec2(L, -L), Vec2(L, L), Vec2(-L, L)};
      for (int dj = -2; dj <= 2; ++dj)
        for (int di = -2; di <= 2; ++di) {
          if (di == 0 && dj == 0) continue;
          const int oi = i + di, oj = j + dj;
          if (oi < 0 || oi >= n || oj < 0 || oj >= n) continue;
          const Vec2 o = generator(oi, oj);
          poly = clip_half_plane(poly, 0.5 * (g + o), o - g);
          if (poly.size() < 3) break;
        }
      if (poly.size() < 3) throw ValidationError("hexagonal generator produced an empty cell");

      std::vector<int>& loop = cell_loops[static_cast<std::size_t>(j) * n + i];
      for (const Vec2& p : poly) {
        const int id = welder.id_of(p);
        if (loop.empty() || loop.back() != id) loop.push_back(id);
      }
      while (loop.size() > 1 && loop.front() == loop.back()) loop.pop_back();
      if (loop.size() < 3) throw ValidationError("hexagonal cell degenerated while welding");
      centres[static_cast<std::size_t>(j) * n + i] = g;
    }

  EdgeRegistry reg;
  std::vector<std::vector<int>> cells(cell_loops.size());
  for (std::size_t c = 0; c < cell_loops.size(); ++c) {
    const auto& loop = cell_loops[c];
    for (std::size_t k = 0; k < loop.size(); ++k)
      cells[c].push_back(reg.add(loop[k], loop[(k + 1) % loop.size()]));
  }
  return build_polytopal_mesh(welder.points(), reg.edges(), cells, centres);
}

}  // namespace

PolytopalMesh generate_mesh(MeshKind kind, double half_width, int resolution,
                            std::optional<double> distortion) {
  if (half_width <= 0.0) throw InvalidParams("half_width must be positive");
  if (resolution < 1) throw InvalidResolution("resolution must be >= 1");
  if (distortion && kind != MeshKind::kershaw)
    throw InvalidParams("distortion only applies to kershaw meshes");

  switch (kind) {
    case MeshKind::rectangular: return rectangular_mesh(half_width, resolution);
    case MeshKind::triangular: return triangular_mesh(half_width, resolution);
    case MeshKind::hexagonal: return hexagonal_mesh(half_width, resolution);
    case MeshKind::kershaw:
      return kershaw_mesh(half_width, resolution, distortion.value_or(kDefaultKershawDistortion));
  }
  throw InvalidParams("unknown mesh kind");
}

}  // namespace gdm
