#include "smallscat/quadrature.hpp"

namespace smallscat {

namespace {

void subdivide(const Vec3& a, const Vec3& b, const Vec3& c, int depth, double weight,
               std::vector<QuadraturePoint>& out) {
  if (depth == 0) {
    out.push_back({(a + b + c) / 3.0, weight});
    return;
  }
  const Vec3 ab = 0.5 * (a + b), bc = 0.5 * (b + c), ca = 0.5 * (c + a);
  const double w = 0.25 * weight;
  subdivide(a, ab, ca, depth - 1, w, out);
  subdivide(b, bc, ab, depth - 1, w, out);
  subdivide(c, ca, bc, depth - 1, w, out);
  subdivide(ab, bc, ca, depth - 1, w, out);
}

}  // namespace

std::vector<QuadraturePoint> panel_quadrature(const std::array<Vec3, 3>& tri, int depth) {
  std::vector<QuadraturePoint> out;
  out.reserve(std::size_t(1) << (2 * depth));
  subdivide(tri[0], tri[1], tri[2], depth, 1.0, out);
  return out;
}

int near_field_depth(double dist, double radius_sum) {
  const double ratio = dist / radius_sum;
  if (ratio < 1.5) return 3;
  if (ratio < 3.0) return 2;
  if (ratio < 6.0) return 1;
  return 0;
}

}  // namespace smallscat
