#pragma once

#include <array>

#include "smallscat/types.hpp"

namespace smallscat {

/// Integral of 1/|y - p| over a planar triangle for an observation point p
/// lying in the triangle plane (edge-log closed form; arctangent terms
/// vanish at zero height). Edges collinear with p contribute zero and are
/// skipped.
double newtonian_triangle_potential(const std::array<Vec3, 3>& verts, const Vec3& p);

}  // namespace smallscat
