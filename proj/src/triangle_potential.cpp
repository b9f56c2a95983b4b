#include "smallscat/triangle_potential.hpp"

#include <cmath>

namespace smallscat {

double newtonian_triangle_potential(const std::array<Vec3, 3>& verts, const Vec3& p) {
  const Vec3 n = (verts[1] - verts[0]).cross(verts[2] - verts[0]).normalized();
  double scale = 0.0;
  for (int e = 0; e < 3; ++e) scale = std::max(scale, (verts[(e + 1) % 3] - verts[e]).norm());

  double total = 0.0;
  for (int e = 0; e < 3; ++e) {
    const Vec3& a = verts[e];
    const Vec3& b = verts[(e + 1) % 3];
    const Vec3 lhat = (b - a).normalized();
    const Vec3 u = lhat.cross(n);
    const double s = (a - p).dot(u);  // signed in-plane distance to the edge line
    if (std::abs(s) < 1e-14 * scale) continue;
    const double lm = (a - p).dot(lhat);
    const double lp = (b - p).dot(lhat);
    const double rm = (a - p).norm();
    const double rp = (b - p).norm();
    total += s * std::log((rp + lp) / (rm + lm));
  }
  return total;
}

}  // namespace smallscat
