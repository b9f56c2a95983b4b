#include "smallscat/bem.hpp"

#include <Eigen/Dense>
#include <random>
#include <sstream>
#include <unordered_map>

#include "smallscat/errors.hpp"
#include "smallscat/kernels.hpp"
#include "smallscat/quadrature.hpp"
#include "smallscat/triangle_potential.hpp"

namespace smallscat {

namespace {

constexpr double kPi = 3.14159265358979323846;

double kelvin_self_coef(const LameParameters& lame) {
  const double sum_c = 1.0 / lame.cs2() + 1.0 / lame.cp2();
  const double dif_c = 1.0 / lame.cs2() - 1.0 / lame.cp2();
  return (sum_c + dif_c / 3.0) / (8.0 * kPi);
}

struct ProbePoint {
  Vec3 position;
  int adjacent_a;  // global panel ids of the two panels sharing the edge
  int adjacent_b;
};

}  // namespace

CVec3 OracleSolution::panel_field(const Vec3& x, const WaveNumbers& wn,
                                  const LameParameters& lame) const {
  CVec3 field = CVec3::Zero();
  for (std::size_t j = 0; j < panel_centroid.size(); ++j)
    field += kupradze_tensor(x, panel_centroid[j], wn, lame) * panel_charge[j];
  return field;
}

OracleSolution oracle_solve(const std::vector<Obstacle>& obstacles, const IncidentWave& wave,
                            const WaveNumbers& wn, const LameParameters& lame) {
  if (obstacles.empty()) throw ConfigError("oracle: no obstacles");
  if (obstacles.size() > 1) compute_stats(obstacles);  // rejects overlapping bodies

  std::vector<SurfaceMesh> world;
  world.reserve(obstacles.size());
  int total_panels = 0;
  for (const auto& ob : obstacles) {
    world.push_back(ob.world_mesh());
    total_panels += world.back().panel_count();
  }
  if (total_panels > 20480) throw ConfigError("oracle: total panel count exceeds cap of 20480");

  OracleSolution sol;
  sol.panel_centroid.reserve(total_panels);
  sol.panel_area.reserve(total_panels);
  sol.panel_obstacle.reserve(total_panels);
  std::vector<std::array<Vec3, 3>> panel_verts;
  panel_verts.reserve(total_panels);
  std::vector<ProbePoint> probes;
  for (std::size_t m = 0; m < world.size(); ++m) {
    const auto& mesh = world[m];
    const int base = static_cast<int>(sol.panel_centroid.size());
    for (int t = 0; t < mesh.panel_count(); ++t) {
      sol.panel_centroid.push_back(mesh.panels()[t].centroid);
      sol.panel_area.push_back(mesh.panels()[t].area);
      sol.panel_obstacle.push_back(static_cast<int>(m));
      panel_verts.push_back(mesh.triangle_vertices(t));
    }
    // Inter-node probes: midpoints of the first edge of a panel sample,
    // paired with the neighbor panel across that edge.
    std::unordered_map<std::uint64_t, std::pair<int, int>> edge_panels;
    const int nv = static_cast<int>(mesh.vertices().size());
    for (int t = 0; t < mesh.panel_count(); ++t) {
      const auto& tri = mesh.triangles()[t];
      for (int e = 0; e < 3; ++e) {
        const int a = tri[e], b = tri[(e + 1) % 3];
        const std::uint64_t key =
            static_cast<std::uint64_t>(std::min(a, b)) * static_cast<std::uint64_t>(nv) +
            static_cast<std::uint64_t>(std::max(a, b));
        auto it = edge_panels.find(key);
        if (it == edge_panels.end())
          edge_panels.emplace(key, std::make_pair(t, -1));
        else
          it->second.second = t;
      }
    }
    const int stride = std::max(1, mesh.panel_count() / 10);
    for (int t = 0; t < mesh.panel_count(); t += stride) {
      const auto& tri = mesh.triangles()[t];
      const int a = tri[0], b = tri[1];
      const std::uint64_t key =
          static_cast<std::uint64_t>(std::min(a, b)) * static_cast<std::uint64_t>(nv) +
          static_cast<std::uint64_t>(std::max(a, b));
      const auto& pair = edge_panels.at(key);
      ProbePoint probe;
      probe.position = 0.5 * (mesh.vertices()[a] + mesh.vertices()[b]);
      probe.adjacent_a = base + pair.first;
      probe.adjacent_b = pair.second >= 0 ? base + pair.second : base + pair.first;
      probes.push_back(probe);
    }
  }

  const int n = total_panels;
  std::vector<double> radii(n);
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    for (const auto& v : panel_verts[i]) r = std::max(r, (v - sol.panel_centroid[i]).norm());
    radii[i] = r;
  }

  Eigen::MatrixXcd mat(3 * n, 3 * n);
  const double self_coef = kelvin_self_coef(lame);
  const CMat3 remainder = kupradze_minus_kelvin_limit(wn, lame);
#pragma omp parallel for schedule(dynamic, 8)
  for (int i = 0; i < n; ++i) {
    const double self = newtonian_triangle_potential(panel_verts[i], sol.panel_centroid[i]);
    mat.block<3, 3>(3 * i, 3 * i) =
        (self_coef * self / sol.panel_area[i]) * CMat3::Identity() + remainder;
    for (int j = i + 1; j < n; ++j) {
      const double dist = (sol.panel_centroid[i] - sol.panel_centroid[j]).norm();
      const int depth = near_field_depth(dist, radii[i] + radii[j]);
      CMat3 block;
      if (depth == 0) {
        block = kupradze_tensor(sol.panel_centroid[i], sol.panel_centroid[j], wn, lame);
      } else {
        // Symmetrized near-field quadrature preserves block(i,j) = block(j,i)^T.
        CMat3 q_ij = CMat3::Zero(), q_ji = CMat3::Zero();
        for (const auto& qp : panel_quadrature(panel_verts[j], depth))
          q_ij += qp.weight * kupradze_tensor(sol.panel_centroid[i], qp.point, wn, lame);
        for (const auto& qp : panel_quadrature(panel_verts[i], depth))
          q_ji += qp.weight * kupradze_tensor(sol.panel_centroid[j], qp.point, wn, lame);
        block = 0.5 * (q_ij + q_ji);
      }
      mat.block<3, 3>(3 * i, 3 * j) = block;
      mat.block<3, 3>(3 * j, 3 * i) = block.transpose();
    }
  }

  Eigen::VectorXcd rhs(3 * n);
  for (int i = 0; i < n; ++i)
    rhs.segment<3>(3 * i) = -incident_field(wave, sol.panel_centroid[i], wn);

  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(mat);
  std::mt19937 rng(0xC0FFEEu);
  std::uniform_int_distribution<int> coin(0, 1);
  double inv_norm = 0.0;
  for (int probe = 0; probe < 4; ++probe) {
    Eigen::VectorXcd v(3 * n);
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = coin(rng) ? 1.0 : -1.0;
    inv_norm = std::max(inv_norm, lu.solve(v).lpNorm<1>() / v.lpNorm<1>());
  }
  sol.condition_estimate = mat.cwiseAbs().colwise().sum().maxCoeff() * inv_norm;
  if (!(sol.condition_estimate < 1e12)) {
    std::ostringstream msg;
    msg << "oracle system near-singular: condition estimate " << sol.condition_estimate;
    throw NumericalError(msg.str());
  }

  const Eigen::VectorXcd solution = lu.solve(rhs);
  sol.density.resize(n);
  sol.panel_charge.resize(n);
  sol.charges.assign(obstacles.size(), CVec3::Zero());
  for (int i = 0; i < n; ++i) {
    sol.panel_charge[i] = solution.segment<3>(3 * i);
    sol.density[i] = sol.panel_charge[i] / sol.panel_area[i];
    sol.charges[sol.panel_obstacle[i]] += sol.panel_charge[i];
  }

  // Dirichlet residual between collocation nodes. Panels adjacent to the
  // probe contain it in their plane: integrate their Kelvin part exactly,
  // midpoint-rule the smooth remainder.
  double max_residual = 0.0, max_incident = 0.0;
  for (const auto& probe : probes) {
    CVec3 field = incident_field(wave, probe.position, wn);
    max_incident = std::max(max_incident, field.norm());
    for (int j = 0; j < n; ++j) {
      if (j == probe.adjacent_a || j == probe.adjacent_b) {
        const double newton = newtonian_triangle_potential(panel_verts[j], probe.position);
        field += (self_coef * newton) * sol.density[j];
        field += (kupradze_tensor(probe.position, sol.panel_centroid[j], wn, lame) -
                  kelvin_tensor(probe.position, sol.panel_centroid[j], lame).cast<Complex>()) *
                 sol.panel_charge[j];
        continue;
      }
      const double dist = (probe.position - sol.panel_centroid[j]).norm();
      const int depth = near_field_depth(dist, 2.0 * radii[j]);
      if (depth == 0) {
        field += kupradze_tensor(probe.position, sol.panel_centroid[j], wn, lame) *
                 sol.panel_charge[j];
      } else {
        CMat3 q = CMat3::Zero();
        for (const auto& qp : panel_quadrature(panel_verts[j], depth))
          q += qp.weight * kupradze_tensor(probe.position, qp.point, wn, lame);
        field += q * sol.panel_charge[j];
      }
    }
    max_residual = std::max(max_residual, field.norm());
  }
  sol.boundary_residual_rel = max_incident > 0.0 ? max_residual / max_incident : 0.0;
  return sol;
}

FarFieldPattern oracle_farfield(const OracleSolution& sol, const std::vector<Vec3>& directions,
                                const WaveNumbers& wn, const LameParameters& lame) {
  ChargeSet charges;
  charges.q = sol.panel_charge;
  return farfield(charges, sol.panel_centroid, directions, wn, lame);
}

CompareMetrics compare(const FarFieldPattern& foldy, const FarFieldPattern& oracle) {
  if (foldy.size() != oracle.size())
    throw std::invalid_argument("compare: direction sets differ in size");
  if (foldy.empty()) throw std::invalid_argument("compare: empty direction set");
  for (std::size_t i = 0; i < foldy.size(); ++i)
    if ((foldy[i].x_hat - oracle[i].x_hat).norm() > 1e-12)
      throw std::invalid_argument("compare: direction sets do not match");

  CompareMetrics m;
  double p_sq = 0.0, s_sq = 0.0, p_ref_sq = 0.0, s_ref_sq = 0.0;
  double p_ref_max = 0.0, s_ref_max = 0.0;
  for (std::size_t i = 0; i < foldy.size(); ++i) {
    const double dp = (foldy[i].u_p - oracle[i].u_p).norm();
    const double ds = (foldy[i].u_s - oracle[i].u_s).norm();
    m.p_max_abs = std::max(m.p_max_abs, dp);
    m.s_max_abs = std::max(m.s_max_abs, ds);
    p_sq += dp * dp;
    s_sq += ds * ds;
    p_ref_max = std::max(p_ref_max, oracle[i].u_p.norm());
    s_ref_max = std::max(s_ref_max, oracle[i].u_s.norm());
    p_ref_sq += oracle[i].u_p.squaredNorm();
    s_ref_sq += oracle[i].u_s.squaredNorm();
  }
  const double inv_n = 1.0 / static_cast<double>(foldy.size());
  m.p_rms_abs = std::sqrt(p_sq * inv_n);
  m.s_rms_abs = std::sqrt(s_sq * inv_n);
  auto rel = [](double num, double den) {
    if (den > 0.0) return num / den;
    return num > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  };
  m.p_max_rel = rel(m.p_max_abs, p_ref_max);
  m.s_max_rel = rel(m.s_max_abs, s_ref_max);
  m.p_rms_rel = rel(m.p_rms_abs, std::sqrt(p_ref_sq * inv_n));
  m.s_rms_rel = rel(m.s_rms_abs, std::sqrt(s_ref_sq * inv_n));
  m.combined_max_abs = std::max(m.p_max_abs, m.s_max_abs);
  m.combined_max_rel = rel(m.combined_max_abs, std::max(p_ref_max, s_ref_max));
  return m;
}

}  // namespace smallscat
