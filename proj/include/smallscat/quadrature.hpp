#pragma once

#include <array>
#include <vector>

#include "smallscat/types.hpp"

namespace smallscat {

struct QuadraturePoint {
  Vec3 point;
  double weight;  // fraction of the panel area
};

/// Midpoint-composite rule on 4^depth equal-area subtriangles.
std::vector<QuadraturePoint> panel_quadrature(const std::array<Vec3, 3>& tri, int depth);

/// Subdivision depth for a source panel seen from distance `dist`;
/// 0 means the plain centroid product is accurate enough.
int near_field_depth(double dist, double radius_sum);

}  // namespace smallscat
