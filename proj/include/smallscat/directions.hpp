#pragma once

#include <vector>

#include "smallscat/types.hpp"

namespace smallscat {

/// Near-uniform deterministic sampling of the unit sphere (golden-angle
/// spiral). count >= 1.
std::vector<Vec3> fibonacci_sphere(int count);

/// Least-squares slope of log(y) against log(x). Identical y values give 0;
/// otherwise all entries must be positive and at least two points given.
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace smallscat
