#include "smallscat/geometry.hpp"

#include "smallscat/errors.hpp"

namespace smallscat {

SurfaceMesh Obstacle::world_mesh() const {
  if (!shape) throw ConfigError("obstacle: missing reference shape");
  if (!(scale > 0.0)) throw ConfigError("obstacle: scale must be positive");
  return transformed(*shape, scale * Mat3::Identity(), center);
}

BoundingSphere ritter_bounding_sphere(const std::vector<Vec3>& points) {
  if (points.empty()) throw ConfigError("bounding sphere: no points");

  // First pass: span of the coordinate-extreme pair.
  std::array<std::size_t, 3> lo{0, 0, 0}, hi{0, 0, 0};
  for (std::size_t i = 1; i < points.size(); ++i) {
    for (int dim = 0; dim < 3; ++dim) {
      if (points[i][dim] < points[lo[dim]][dim]) lo[dim] = i;
      if (points[i][dim] > points[hi[dim]][dim]) hi[dim] = i;
    }
  }
  std::size_t p1 = lo[0], p2 = hi[0];
  double best = -1.0;
  for (int dim = 0; dim < 3; ++dim) {
    const double len = (points[hi[dim]] - points[lo[dim]]).norm();
    if (len > best) {
      best = len;
      p1 = lo[dim];
      p2 = hi[dim];
    }
  }
  BoundingSphere s;
  s.center = 0.5 * (points[p1] + points[p2]);
  s.radius = 0.5 * (points[p2] - points[p1]).norm();

  // Second pass: grow around stragglers.
  for (const auto& p : points) {
    const double dist = (p - s.center).norm();
    if (dist > s.radius) {
      const double grown = 0.5 * (s.radius + dist);
      s.center += ((dist - grown) / dist) * (p - s.center);
      s.radius = grown;
    }
  }
  return s;
}

namespace {

double panel_radius(const SurfaceMesh& mesh, int t) {
  const auto verts = mesh.triangle_vertices(t);
  const Vec3& c = mesh.panels()[t].centroid;
  double r = 0.0;
  for (const auto& v : verts) r = std::max(r, (v - c).norm());
  return r;
}

}  // namespace

GeometryStats compute_stats(const std::vector<Obstacle>& obstacles) {
  if (obstacles.empty()) throw ConfigError("stats: no obstacles");

  std::vector<SurfaceMesh> world;
  world.reserve(obstacles.size());
  for (const auto& ob : obstacles) world.push_back(ob.world_mesh());

  GeometryStats stats;
  stats.count = static_cast<int>(obstacles.size());

  std::vector<Vec3> all_vertices;
  std::vector<BoundingSphere> bounds;
  for (const auto& mesh : world) {
    stats.a = std::max(stats.a, mesh.diameter());
    all_vertices.insert(all_vertices.end(), mesh.vertices().begin(), mesh.vertices().end());
    bounds.push_back(ritter_bounding_sphere(mesh.vertices()));
  }
  stats.diam_omega = 2.0 * ritter_bounding_sphere(all_vertices).radius;

  stats.d = GeometryStats::kInfiniteDistance;
  for (std::size_t m = 0; m < world.size(); ++m) {
    for (std::size_t j = m + 1; j < world.size(); ++j) {
      double closest = GeometryStats::kInfiniteDistance;
      double closest_gap = GeometryStats::kInfiniteDistance;
      const bool spheres_touch =
          (bounds[m].center - bounds[j].center).norm() < bounds[m].radius + bounds[j].radius;
      std::vector<double> radius_m, radius_j;
      if (spheres_touch) {
        for (int t = 0; t < world[m].panel_count(); ++t) radius_m.push_back(panel_radius(world[m], t));
        for (int t = 0; t < world[j].panel_count(); ++t) radius_j.push_back(panel_radius(world[j], t));
      }
      for (int tm = 0; tm < world[m].panel_count(); ++tm) {
        const Vec3& cm = world[m].panels()[tm].centroid;
        for (int tj = 0; tj < world[j].panel_count(); ++tj) {
          const double dist = (cm - world[j].panels()[tj].centroid).norm();
          closest = std::min(closest, dist);
          if (spheres_touch)
            closest_gap = std::min(closest_gap, dist - radius_m[tm] - radius_j[tj]);
        }
      }
      if (spheres_touch && closest_gap <= 0.0)
        throw ConfigError("stats: obstacles overlap or touch");
      stats.d = std::min(stats.d, closest);
    }
  }
  return stats;
}

}  // namespace smallscat
