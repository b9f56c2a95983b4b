#pragma once

#include <vector>

#include "smallscat/foldy_lax.hpp"
#include "smallscat/geometry.hpp"
#include "smallscat/types.hpp"

namespace smallscat {

/// Reference solution of the full scattering problem: single-layer
/// first-kind collocation over the union of world panels.
struct OracleSolution {
  std::vector<Vec3> panel_centroid;
  std::vector<double> panel_area;
  std::vector<int> panel_obstacle;
  std::vector<CVec3> density;       // Neumann-trace density per panel
  std::vector<CVec3> panel_charge;  // area * density
  std::vector<CVec3> charges;       // per-obstacle totals Q_m
  double boundary_residual_rel = 0.0;
  double condition_estimate = 0.0;

  CVec3 panel_field(const Vec3& x, const WaveNumbers& wn, const LameParameters& lame) const;
};

OracleSolution oracle_solve(const std::vector<Obstacle>& obstacles, const IncidentWave& wave,
                            const WaveNumbers& wn, const LameParameters& lame);

FarFieldPattern oracle_farfield(const OracleSolution& sol, const std::vector<Vec3>& directions,
                                const WaveNumbers& wn, const LameParameters& lame);

struct CompareMetrics {
  double p_max_abs = 0.0, p_rms_abs = 0.0;
  double s_max_abs = 0.0, s_rms_abs = 0.0;
  double p_max_rel = 0.0, p_rms_rel = 0.0;
  double s_max_rel = 0.0, s_rms_rel = 0.0;
  double combined_max_abs = 0.0;
  double combined_max_rel = 0.0;
};

/// Pointwise far-field discrepancy over a shared direction set.
CompareMetrics compare(const FarFieldPattern& foldy, const FarFieldPattern& oracle);

}  // namespace smallscat
