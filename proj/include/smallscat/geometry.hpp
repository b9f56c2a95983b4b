#pragma once

#include <limits>
#include <memory>
#include <vector>

#include "smallscat/mesh.hpp"
#include "smallscat/types.hpp"

namespace smallscat {

/// World body scale * B + center placed from a shared reference mesh.
struct Obstacle {
  Vec3 center = Vec3::Zero();
  std::shared_ptr<const SurfaceMesh> shape;
  double scale = 1.0;

  SurfaceMesh world_mesh() const;
};

struct GeometryStats {
  double a = 0.0;           // max world diameter
  double d = 0.0;           // min pairwise surface distance (+inf for M = 1)
  double diam_omega = 0.0;  // diameter of an enclosing ball of all obstacles
  int count = 0;

  static constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();
};

struct BoundingSphere {
  Vec3 center = Vec3::Zero();
  double radius = 0.0;
};

/// Ritter's deterministic two-pass approximate minimal enclosing ball.
BoundingSphere ritter_bounding_sphere(const std::vector<Vec3>& points);

/// a, d and diam(Omega) for a configuration. d is measured panel centroid to
/// panel centroid (O(h) above the exact surface distance). Throws ConfigError
/// on an empty configuration or when bodies overlap.
GeometryStats compute_stats(const std::vector<Obstacle>& obstacles);

}  // namespace smallscat
