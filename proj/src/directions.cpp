#include "smallscat/directions.hpp"

#include <cmath>
#include <stdexcept>

#include "smallscat/errors.hpp"

namespace smallscat {

std::vector<Vec3> fibonacci_sphere(int count) {
  if (count < 1) throw ConfigError("directions: count must be >= 1");
  std::vector<Vec3> dirs;
  dirs.reserve(count);
  const double golden_angle = 3.14159265358979323846 * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / count;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * i;
    dirs.push_back(Vec3(rho * std::cos(phi), rho * std::sin(phi), z).normalized());
  }
  return dirs;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("slope fit: need at least two matching samples");
  bool constant = true;
  for (double v : y) constant = constant && v == y.front();
  if (constant) return 0.0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw std::invalid_argument("slope fit: samples must be positive");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(x.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace smallscat
