#pragma once

#include <array>
#include <string>
#include <vector>

#include "smallscat/types.hpp"

namespace smallscat {

struct Panel {
  Vec3 centroid;
  Vec3 normal;  // outward unit normal
  double area;
};

/// Closed, consistently oriented triangulation of a reference shape.
/// Validation at construction: index bounds, positive panel areas, every
/// edge shared by exactly two triangles with opposite winding, and global
/// outward orientation.
class SurfaceMesh {
public:
  SurfaceMesh(std::vector<Vec3> vertices, std::vector<std::array<int, 3>> triangles);

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::vector<Panel>& panels() const { return panels_; }
  int panel_count() const { return static_cast<int>(triangles_.size()); }

  std::array<Vec3, 3> triangle_vertices(int t) const {
    const auto& tri = triangles_[t];
    return {vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]};
  }

  double total_area() const;
  /// Max pairwise vertex distance.
  double diameter() const;

private:
  std::vector<Vec3> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<Panel> panels_;
};

/// Icosphere of unit diameter centered at the origin; level k has 20*4^k
/// triangles. Levels 0..6.
SurfaceMesh make_sphere_mesh(int refinement_level);

/// Axis-aligned cube of side 1 centered at the origin, per_side x per_side
/// grid on each face (12*per_side^2 triangles).
SurfaceMesh make_cube_mesh(int per_side);

SurfaceMesh scaled(const SurfaceMesh& mesh, double factor);
SurfaceMesh translated(const SurfaceMesh& mesh, const Vec3& offset);
SurfaceMesh transformed(const SurfaceMesh& mesh, const Mat3& linear, const Vec3& offset);

/// ASCII format: line 1 "V F", then V lines "x y z", then F lines "i j k"
/// (0-based indices).
SurfaceMesh load_mesh(const std::string& path);
void save_mesh(const SurfaceMesh& mesh, const std::string& path);

}  // namespace smallscat
