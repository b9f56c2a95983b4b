#include "smallscat/capacitance.hpp"

#include <Eigen/Dense>
#include <random>
#include <sstream>

#include "smallscat/errors.hpp"
#include "smallscat/kernels.hpp"
#include "smallscat/quadrature.hpp"
#include "smallscat/triangle_potential.hpp"

namespace smallscat {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_mesh(const SurfaceMesh& mesh) {
  if (mesh.panel_count() < 20)
    throw std::invalid_argument("capacitance: need at least 20 panels");
  if (mesh.panel_count() > detail::kMaxPanels)
    throw ConfigError("capacitance: panel count exceeds cap of 20480");
}

// 1-norm condition estimate from a handful of deterministic random probes.
template <typename Solver, typename Matrix>
double estimate_condition(const Solver& lu, const Matrix& mat) {
  using VectorT = Eigen::Matrix<typename Matrix::Scalar, Eigen::Dynamic, 1>;
  std::mt19937 rng(0xC0FFEEu);
  std::uniform_int_distribution<int> coin(0, 1);
  const Eigen::Index n = mat.rows();
  double inv_norm = 0.0;
  for (int probe = 0; probe < 4; ++probe) {
    VectorT v(n);
    for (Eigen::Index i = 0; i < n; ++i)
      v[i] = coin(rng) ? typename Matrix::Scalar(1) : typename Matrix::Scalar(-1);
    const VectorT x = lu.solve(v);
    inv_norm = std::max(inv_norm, x.template lpNorm<1>() / v.template lpNorm<1>());
  }
  return mat.cwiseAbs().colwise().sum().maxCoeff() * inv_norm;
}

[[noreturn]] void conditioning_failure(double estimate, int panels) {
  std::ostringstream msg;
  msg << "first-kind system near-singular: condition estimate " << estimate << " on " << panels
      << " panels";
  throw NumericalError(msg.str());
}

std::vector<double> panel_radii(const SurfaceMesh& mesh) {
  std::vector<double> radii(mesh.panel_count());
  for (int t = 0; t < mesh.panel_count(); ++t) {
    const auto verts = mesh.triangle_vertices(t);
    const Vec3& c = mesh.panels()[t].centroid;
    double r = 0.0;
    for (const auto& v : verts) r = std::max(r, (v - c).norm());
    radii[t] = r;
  }
  return radii;
}

}  // namespace

Mat3 SurfaceDensity::total() const {
  Mat3 c = Mat3::Zero();
  for (std::size_t i = 0; i < sigma.size(); ++i) c += areas[i] * sigma[i];
  return c;
}

SurfaceDensity solve_first_kind_kelvin(const SurfaceMesh& mesh, const LameParameters& lame) {
  check_mesh(mesh);
  const int n = mesh.panel_count();
  const auto& panels = mesh.panels();

  // Unknowns are panel charges (area-weighted densities): the collocation
  // matrix K then inherits the exact symmetry of the Kelvin kernel.
  const double sum_c = 1.0 / lame.cs2() + 1.0 / lame.cp2();
  const double dif_c = 1.0 / lame.cs2() - 1.0 / lame.cp2();
  const double self_coef = (sum_c + dif_c / 3.0) / (8.0 * kPi);

  const std::vector<double> radii = panel_radii(mesh);
  Eigen::MatrixXd K(3 * n, 3 * n);
#pragma omp parallel for schedule(dynamic, 8)
  for (int i = 0; i < n; ++i) {
    const double self = newtonian_triangle_potential(mesh.triangle_vertices(i), panels[i].centroid);
    K.block<3, 3>(3 * i, 3 * i) = (self_coef * self / panels[i].area) * Mat3::Identity();
    for (int j = i + 1; j < n; ++j) {
      const double dist = (panels[i].centroid - panels[j].centroid).norm();
      const int depth = near_field_depth(dist, radii[i] + radii[j]);
      Mat3 block;
      if (depth == 0) {
        block = kelvin_tensor(panels[i].centroid, panels[j].centroid, lame);
      } else {
        // Symmetrized subdivided quadrature keeps the exact block symmetry
        // the charge-unknown formulation relies on.
        Mat3 q_ij = Mat3::Zero(), q_ji = Mat3::Zero();
        for (const auto& qp : panel_quadrature(mesh.triangle_vertices(j), depth))
          q_ij += qp.weight * kelvin_tensor(panels[i].centroid, qp.point, lame);
        for (const auto& qp : panel_quadrature(mesh.triangle_vertices(i), depth))
          q_ji += qp.weight * kelvin_tensor(panels[j].centroid, qp.point, lame);
        block = 0.5 * (q_ij + q_ji);
      }
      K.block<3, 3>(3 * i, 3 * j) = block;
      K.block<3, 3>(3 * j, 3 * i) = block;
    }
  }

  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(3 * n, 3);
  for (int i = 0; i < n; ++i) rhs.block<3, 3>(3 * i, 0) = Mat3::Identity();

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(K);
  const double cond = estimate_condition(lu, K);
  if (!(cond < detail::kConditionLimit)) conditioning_failure(cond, n);
  const Eigen::MatrixXd charges = lu.solve(rhs);

  SurfaceDensity density;
  density.sigma.resize(n);
  density.areas.resize(n);
  for (int i = 0; i < n; ++i) {
    density.areas[i] = panels[i].area;
    density.sigma[i] = charges.block<3, 3>(3 * i, 0) / panels[i].area;
  }
  return density;
}

std::vector<double> solve_first_kind_acoustic(const SurfaceMesh& mesh) {
  check_mesh(mesh);
  const int n = mesh.panel_count();
  const auto& panels = mesh.panels();

  const std::vector<double> radii = panel_radii(mesh);
  Eigen::MatrixXd K(n, n);
#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < n; ++i) {
    const double self = newtonian_triangle_potential(mesh.triangle_vertices(i), panels[i].centroid);
    K(i, i) = self / (4.0 * kPi * panels[i].area);
    for (int j = i + 1; j < n; ++j) {
      const double dist = (panels[i].centroid - panels[j].centroid).norm();
      const int depth = near_field_depth(dist, radii[i] + radii[j]);
      double entry;
      if (depth == 0) {
        entry = 1.0 / (4.0 * kPi * dist);
      } else {
        double q_ij = 0.0, q_ji = 0.0;
        for (const auto& qp : panel_quadrature(mesh.triangle_vertices(j), depth))
          q_ij += qp.weight / (panels[i].centroid - qp.point).norm();
        for (const auto& qp : panel_quadrature(mesh.triangle_vertices(i), depth))
          q_ji += qp.weight / (panels[j].centroid - qp.point).norm();
        entry = 0.5 * (q_ij + q_ji) / (4.0 * kPi);
      }
      K(i, j) = entry;
      K(j, i) = entry;
    }
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(K);
  const double cond = estimate_condition(lu, K);
  if (!(cond < detail::kConditionLimit)) conditioning_failure(cond, n);
  const Eigen::VectorXd charges = lu.solve(Eigen::VectorXd::Ones(n));

  std::vector<double> density(n);
  for (int i = 0; i < n; ++i) density[i] = charges[i] / panels[i].area;
  return density;
}

double acoustic_capacitance(const SurfaceMesh& mesh) {
  const auto density = solve_first_kind_acoustic(mesh);
  const auto& panels = mesh.panels();
  double total = 0.0;
  for (int i = 0; i < mesh.panel_count(); ++i) total += panels[i].area * density[i];
  return total;
}

CapacitanceMatrix capacitance_matrix(const SurfaceMesh& mesh, const LameParameters& lame) {
  CapacitanceMatrix cap;
  cap.matrix = solve_first_kind_kelvin(mesh, lame).total();
  cap.acoustic = acoustic_capacitance(mesh);
  cap.mesh_panels = mesh.panel_count();
  return cap;
}

EigenvalueBoundsReport verify_eigenvalue_bounds(const CapacitanceMatrix& cap,
                                                const LameParameters& lame, double slack) {
  EigenvalueBoundsReport report;
  report.slack = slack;
  Eigen::SelfAdjointEigenSolver<Mat3> eig(0.5 * (cap.matrix + cap.matrix.transpose()));
  report.eig_min = eig.eigenvalues().minCoeff();
  report.eig_max = eig.eigenvalues().maxCoeff();
  report.lower_bound = lame.mu * cap.acoustic;
  report.upper_bound = (lame.lambda + 2.0 * lame.mu) * cap.acoustic;
  report.ok = report.eig_min >= report.lower_bound * (1.0 - slack) &&
              report.eig_max <= report.upper_bound * (1.0 + slack);
  return report;
}

}  // namespace smallscat
