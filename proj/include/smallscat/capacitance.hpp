#pragma once

#include <vector>

#include "smallscat/mesh.hpp"
#include "smallscat/types.hpp"

namespace smallscat {

/// 3x3 elastic capacitance of a shape together with its scalar acoustic
/// companion, both in units of length. Scales linearly with the shape.
struct CapacitanceMatrix {
  Mat3 matrix = Mat3::Zero();
  double acoustic = 0.0;
  int mesh_panels = 0;
};

/// Collocation solution of the static first-kind equation; column l of
/// sigma[panel] is the traction density generating constant boundary
/// potential e_l. Area-weighted sums reproduce the capacitance matrix.
struct SurfaceDensity {
  std::vector<Mat3> sigma;
  std::vector<double> areas;

  Mat3 total() const;
};

SurfaceDensity solve_first_kind_kelvin(const SurfaceMesh& mesh, const LameParameters& lame);

CapacitanceMatrix capacitance_matrix(const SurfaceMesh& mesh, const LameParameters& lame);

/// Scalar analog with the Laplace kernel 1/(4 pi |t - s|); a sphere of
/// radius r has value 4 pi r.
double acoustic_capacitance(const SurfaceMesh& mesh);

/// Per-panel scalar densities of the acoustic first-kind equation.
std::vector<double> solve_first_kind_acoustic(const SurfaceMesh& mesh);

struct EigenvalueBoundsReport {
  bool ok = false;
  double eig_min = 0.0;
  double eig_max = 0.0;
  double lower_bound = 0.0;  // mu * acoustic
  double upper_bound = 0.0;  // (lambda + 2 mu) * acoustic
  double slack = 0.02;
};

/// Checks mu C^a <= eig_min <= eig_max <= (lambda + 2 mu) C^a with
/// discretization slack.
EigenvalueBoundsReport verify_eigenvalue_bounds(const CapacitanceMatrix& cap,
                                                const LameParameters& lame,
                                                double slack = 0.02);

namespace detail {
inline constexpr int kMaxPanels = 20480;
inline constexpr double kConditionLimit = 1e12;
}  // namespace detail

}  // namespace smallscat
