#include "smallscat/mesh.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <unordered_map>

#include "smallscat/errors.hpp"

namespace smallscat {

SurfaceMesh::SurfaceMesh(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  const int nv = static_cast<int>(vertices_.size());
  if (nv < 4 || triangles_.empty()) throw ConfigError("mesh: too few vertices or triangles");
  for (const auto& v : vertices_)
    if (!v.allFinite()) throw ConfigError("mesh: non-finite vertex");

  // Edge bookkeeping: count per undirected edge and net winding direction.
  std::unordered_map<std::uint64_t, std::pair<int, int>> edges;
  edges.reserve(triangles_.size() * 3);
  auto edge_key = [nv](int a, int b) {
    return static_cast<std::uint64_t>(std::min(a, b)) * static_cast<std::uint64_t>(nv) +
           static_cast<std::uint64_t>(std::max(a, b));
  };
  for (const auto& tri : triangles_) {
    for (int e = 0; e < 3; ++e) {
      const int a = tri[e], b = tri[(e + 1) % 3];
      if (a < 0 || a >= nv || b < 0 || b >= nv) throw ConfigError("mesh: triangle index out of range");
      if (a == b) throw ConfigError("mesh: degenerate triangle edge");
      auto& rec = edges[edge_key(a, b)];
      rec.first += 1;
      rec.second += (a < b) ? 1 : -1;
    }
  }
  for (const auto& [key, rec] : edges) {
    (void)key;
    if (rec.first != 2 || rec.second != 0)
      throw ConfigError("mesh: surface not closed or inconsistently oriented");
  }

  panels_.reserve(triangles_.size());
  Vec3 center = Vec3::Zero();
  for (const auto& v : vertices_) center += v;
  center /= static_cast<double>(nv);

  double orientation_sum = 0.0;
  for (const auto& tri : triangles_) {
    const Vec3& v0 = vertices_[tri[0]];
    const Vec3& v1 = vertices_[tri[1]];
    const Vec3& v2 = vertices_[tri[2]];
    const Vec3 cross = (v1 - v0).cross(v2 - v0);
    const double area = 0.5 * cross.norm();
    if (!(area > 0.0)) throw ConfigError("mesh: zero-area panel");
    Panel p;
    p.centroid = (v0 + v1 + v2) / 3.0;
    p.normal = cross / cross.norm();
    p.area = area;
    orientation_sum += area * p.normal.dot(p.centroid - center);
    panels_.push_back(p);
  }
  if (!(orientation_sum > 0.0)) throw ConfigError("mesh: normals not outward");
}

double SurfaceMesh::total_area() const {
  double s = 0.0;
  for (const auto& p : panels_) s += p.area;
  return s;
}

double SurfaceMesh::diameter() const {
  double best = 0.0;
  const auto n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      best = std::max(best, (vertices_[i] - vertices_[j]).squaredNorm());
  return std::sqrt(best);
}

namespace {

std::uint64_t midpoint_key(int a, int b) {
  return (static_cast<std::uint64_t>(std::min(a, b)) << 32) | static_cast<std::uint64_t>(std::max(a, b));
}

}  // namespace

SurfaceMesh make_sphere_mesh(int refinement_level) {
  if (refinement_level < 0 || refinement_level > 6)
    throw ConfigError("sphere mesh: refinement level must be in [0, 6]");

  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  std::vector<Vec3> verts = {
      {-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
      {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
      {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
  std::vector<std::array<int, 3>> tris = {
      {0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
      {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
      {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};

  const double radius = 0.5;
  for (auto& v : verts) v *= radius / v.norm();

  for (int level = 0; level < refinement_level; ++level) {
    std::unordered_map<std::uint64_t, int> midpoint;
    std::vector<std::array<int, 3>> next;
    next.reserve(tris.size() * 4);
    auto mid = [&](int a, int b) {
      const auto key = midpoint_key(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      Vec3 m = 0.5 * (verts[a] + verts[b]);
      m *= radius / m.norm();
      const int idx = static_cast<int>(verts.size());
      verts.push_back(m);
      midpoint.emplace(key, idx);
      return idx;
    };
    for (const auto& t : tris) {
      const int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
      next.push_back({t[0], ab, ca});
      next.push_back({t[1], bc, ab});
      next.push_back({t[2], ca, bc});
      next.push_back({ab, bc, ca});
    }
    tris = std::move(next);
  }
  return SurfaceMesh(std::move(verts), std::move(tris));
}

SurfaceMesh make_cube_mesh(int per_side) {
  if (per_side < 1 || per_side > 64) throw ConfigError("cube mesh: per_side must be in [1, 64]");
  const int n = per_side;
  std::map<std::array<int, 3>, int> index_of;
  std::vector<Vec3> verts;
  std::vector<std::array<int, 3>> tris;

  auto vertex = [&](std::array<int, 3> gi) {
    auto it = index_of.find(gi);
    if (it != index_of.end()) return it->second;
    const Vec3 v(static_cast<double>(gi[0]) / n - 0.5, static_cast<double>(gi[1]) / n - 0.5,
                 static_cast<double>(gi[2]) / n - 0.5);
    const int idx = static_cast<int>(verts.size());
    verts.push_back(v);
    index_of.emplace(gi, idx);
    return idx;
  };

  // Axes picked so e_u x e_v = sign * e_axis (outward winding).
  for (int axis = 0; axis < 3; ++axis) {
    for (int sign = -1; sign <= 1; sign += 2) {
      int ua = (axis + 1) % 3, va = (axis + 2) % 3;
      if (sign < 0) std::swap(ua, va);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          auto grid = [&](int ii, int jj) {
            std::array<int, 3> g{};
            g[axis] = (sign > 0) ? n : 0;
            g[ua] = ii;
            g[va] = jj;
            return vertex(g);
          };
          const int p00 = grid(i, j), p10 = grid(i + 1, j);
          const int p11 = grid(i + 1, j + 1), p01 = grid(i, j + 1);
          tris.push_back({p00, p10, p11});
          tris.push_back({p00, p11, p01});
        }
      }
    }
  }
  return SurfaceMesh(std::move(verts), std::move(tris));
}

SurfaceMesh scaled(const SurfaceMesh& mesh, double factor) {
  return transformed(mesh, factor * Mat3::Identity(), Vec3::Zero());
}

SurfaceMesh translated(const SurfaceMesh& mesh, const Vec3& offset) {
  return transformed(mesh, Mat3::Identity(), offset);
}

SurfaceMesh transformed(const SurfaceMesh& mesh, const Mat3& linear, const Vec3& offset) {
  std::vector<Vec3> verts;
  verts.reserve(mesh.vertices().size());
  for (const auto& v : mesh.vertices()) verts.push_back(linear * v + offset);
  return SurfaceMesh(std::move(verts), mesh.triangles());
}

SurfaceMesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("mesh file not readable: " + path);
  std::size_t nv = 0, nf = 0;
  if (!(in >> nv >> nf)) throw ConfigError("mesh file: bad header in " + path);
  std::vector<Vec3> verts(nv);
  for (std::size_t i = 0; i < nv; ++i)
    if (!(in >> verts[i][0] >> verts[i][1] >> verts[i][2]))
      throw ConfigError("mesh file: bad vertex line in " + path);
  std::vector<std::array<int, 3>> tris(nf);
  for (std::size_t i = 0; i < nf; ++i)
    if (!(in >> tris[i][0] >> tris[i][1] >> tris[i][2]))
      throw ConfigError("mesh file: bad triangle line in " + path);
  return SurfaceMesh(std::move(verts), std::move(tris));
}

void save_mesh(const SurfaceMesh& mesh, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("mesh file not writable: " + path);
  out << mesh.vertices().size() << " " << mesh.triangles().size() << "\n";
  char buf[96];
  for (const auto& v : mesh.vertices()) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", v[0], v[1], v[2]);
    out << buf;
  }
  for (const auto& t : mesh.triangles()) out << t[0] << " " << t[1] << " " << t[2] << "\n";
}

}  // namespace smallscat
