#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "smallscat/capacitance.hpp"
#include "smallscat/geometry.hpp"
#include "smallscat/types.hpp"

namespace smallscat {

/// Plane pressure/shear incident wave
///   U^i(x) = alpha theta e^{i kp theta.x} + beta theta_perp e^{i ks theta.x}.
struct IncidentWave {
  Complex alpha{0.0, 0.0};
  Complex beta{0.0, 0.0};
  Vec3 theta = Vec3::UnitZ();
  Vec3 theta_perp = Vec3::UnitX();
};

/// Normalizes theta and picks the deterministic shear polarization:
/// theta_perp = normalize(e3 x theta), or e1 when theta is within 1e-9 of e3.
IncidentWave make_incident_wave(Complex alpha, Complex beta, const Vec3& theta);

CVec3 incident_field(const IncidentWave& wave, const Vec3& x, const WaveNumbers& wn);

/// Dense interaction system: diagonal blocks -C_m^{-1}, off-diagonal blocks
/// -Gamma^w(z_m, z_j), right-hand side the incident field at the centers.
struct FoldyLaxSystem {
  Eigen::MatrixXcd matrix;
  Eigen::VectorXcd rhs;
  std::vector<Vec3> centers;
};

/// caps[m] is the capacitance of obstacle m's reference shape; it is scaled
/// by the obstacle scale before inversion.
FoldyLaxSystem assemble(const std::vector<Obstacle>& obstacles,
                        const std::vector<CapacitanceMatrix>& caps, const IncidentWave& wave,
                        const WaveNumbers& wn, const LameParameters& lame);

struct ChargeSet {
  std::vector<CVec3> q;
  double residual = 0.0;

  double norm_sum() const;
};

ChargeSet solve_charges(const FoldyLaxSystem& sys);

struct FarFieldSample {
  Vec3 x_hat;
  CVec3 u_p;
  CVec3 u_s;
};
using FarFieldPattern = std::vector<FarFieldSample>;

FarFieldPattern farfield(const ChargeSet& charges, const std::vector<Vec3>& centers,
                         const std::vector<Vec3>& directions, const WaveNumbers& wn,
                         const LameParameters& lame);

/// Computable ingredients of the validity and invertibility conditions.
struct ValidityReport {
  int n_omega = 1;
  double t = 0.0;
  double sqrt_m1_a_over_d = 0.0;
  bool t_positive = false;
  bool footnote_small_domain = false;
};

ValidityReport validity_report(const GeometryStats& stats, const WaveNumbers& wn,
                               const LameParameters& lame);

struct SolvabilityResult {
  bool certified = false;
  double charge_sum_bound = 0.0;  // certified upper bound on sum of ||Q_m||_2
};

/// Sufficient invertibility condition in terms of the acoustic capacitances
/// of the world obstacles:
///   (lambda+2mu)^2 (max C^a)^2 < t^{-1} (5 pi / 3) mu d (min C^a).
/// When it holds, also returns the resulting bound on sum_m ||Q_m||_2.
/// Throws std::domain_error when t <= 0 (condition inapplicable).
SolvabilityResult solvability_check(const std::vector<double>& world_acoustic_caps, double d,
                                    const ValidityReport& report, const LameParameters& lame,
                                    double max_incident_norm);

struct ErrorBudgetTerm {
  std::string name;
  double value = 0.0;
};

struct ErrorRegime {
  double t_exp = 1.0 / 3.0;  // d = a^t
  double s_exp = 1.0;        // M = a^{-s}
  double alpha = 0.25;
};

/// Remainder monomials with constants set to one: rate predictors, not
/// certified bounds.
struct ErrorBudget {
  std::vector<ErrorBudgetTerm> general_terms;  // M a^2, M(M-1) a^3/d^2, M(M-1)^2 a^4/d^3
  std::vector<ErrorBudgetTerm> ball_terms;     // refined remainder for equal balls
  double general_total = 0.0;
  double ball_total = 0.0;
  std::vector<double> regime_exponents;  // a-exponents under d = a^t, M = a^{-s}
  double dominant_exponent = 0.0;        // min of the above
};

ErrorBudget error_budget(const GeometryStats& stats, const ErrorRegime& regime);

namespace detail {
inline constexpr int kMaxObstacles = 2000;
}

}  // namespace smallscat
