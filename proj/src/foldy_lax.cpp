#include "smallscat/foldy_lax.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "smallscat/errors.hpp"
#include "smallscat/kernels.hpp"

namespace smallscat {

namespace {
constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);
}  // namespace

IncidentWave make_incident_wave(Complex alpha, Complex beta, const Vec3& theta) {
  if (!theta.allFinite() || theta.norm() == 0.0)
    throw std::invalid_argument("incident wave: theta must be a nonzero vector");
  IncidentWave wave;
  wave.alpha = alpha;
  wave.beta = beta;
  wave.theta = theta.normalized();
  if (std::abs(wave.theta.dot(Vec3::UnitZ())) > 1.0 - 1e-9)
    wave.theta_perp = Vec3::UnitX();
  else
    wave.theta_perp = Vec3::UnitZ().cross(wave.theta).normalized();
  return wave;
}

CVec3 incident_field(const IncidentWave& wave, const Vec3& x, const WaveNumbers& wn) {
  const Complex phase_p = std::exp(kI * (wn.kappa_p * wave.theta.dot(x)));
  const Complex phase_s = std::exp(kI * (wn.kappa_s * wave.theta.dot(x)));
  CVec3 out;
  for (int i = 0; i < 3; ++i)
    out[i] = wave.alpha * phase_p * wave.theta[i] + wave.beta * phase_s * wave.theta_perp[i];
  return out;
}

FoldyLaxSystem assemble(const std::vector<Obstacle>& obstacles,
                        const std::vector<CapacitanceMatrix>& caps, const IncidentWave& wave,
                        const WaveNumbers& wn, const LameParameters& lame) {
  const int m_count = static_cast<int>(obstacles.size());
  if (m_count == 0) throw ConfigError("foldy-lax: no obstacles");
  if (m_count > detail::kMaxObstacles)
    throw ConfigError("foldy-lax: obstacle count exceeds cap of 2000");
  if (caps.size() != obstacles.size())
    throw std::invalid_argument("foldy-lax: capacitance list size mismatch");

  FoldyLaxSystem sys;
  sys.centers.reserve(m_count);
  for (const auto& ob : obstacles) sys.centers.push_back(ob.center);
  for (int m = 0; m < m_count; ++m)
    for (int j = m + 1; j < m_count; ++j)
      if (sys.centers[m] == sys.centers[j])
        throw ConfigError("foldy-lax: coincident obstacle centers");

  sys.matrix.resize(3 * m_count, 3 * m_count);
  sys.rhs.resize(3 * m_count);
  for (int m = 0; m < m_count; ++m) {
    const Mat3 world_cap = obstacles[m].scale * caps[m].matrix;
    const Eigen::FullPivLU<Mat3> lu(world_cap);
    if (!lu.isInvertible())
      throw NumericalError("foldy-lax: singular capacitance for obstacle " + std::to_string(m));
    sys.matrix.block<3, 3>(3 * m, 3 * m) = (-lu.inverse()).cast<Complex>();
    for (int j = 0; j < m_count; ++j) {
      if (j == m) continue;
      sys.matrix.block<3, 3>(3 * m, 3 * j) =
          -kupradze_tensor(sys.centers[m], sys.centers[j], wn, lame);
    }
    sys.rhs.segment<3>(3 * m) = incident_field(wave, sys.centers[m], wn);
  }
  return sys;
}

double ChargeSet::norm_sum() const {
  double s = 0.0;
  for (const auto& v : q) s += v.norm();
  return s;
}

ChargeSet solve_charges(const FoldyLaxSystem& sys) {
  const Eigen::Index n = sys.matrix.rows();
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sys.matrix);

  std::mt19937 rng(0xC0FFEEu);
  std::uniform_int_distribution<int> coin(0, 1);
  double inv_norm = 0.0;
  for (int probe = 0; probe < 4; ++probe) {
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = coin(rng) ? 1.0 : -1.0;
    inv_norm = std::max(inv_norm, lu.solve(v).lpNorm<1>() / v.lpNorm<1>());
  }
  const double cond = sys.matrix.cwiseAbs().colwise().sum().maxCoeff() * inv_norm;
  if (!(cond < 1e12)) {
    std::ostringstream msg;
    msg << "foldy-lax system not reliably invertible: condition estimate " << cond
        << "; consult the validity report";
    throw InvertibilityError(msg.str());
  }

  const Eigen::VectorXcd solution = lu.solve(sys.rhs);
  ChargeSet out;
  const double rhs_norm = sys.rhs.norm();
  out.residual =
      rhs_norm > 0.0 ? (sys.matrix * solution - sys.rhs).norm() / rhs_norm : 0.0;
  if (!(out.residual <= 1e-10))
    throw InvertibilityError("foldy-lax solve residual above contract (1e-10)");
  out.q.resize(n / 3);
  for (Eigen::Index m = 0; m < n / 3; ++m) out.q[m] = solution.segment<3>(3 * m);
  return out;
}

FarFieldPattern farfield(const ChargeSet& charges, const std::vector<Vec3>& centers,
                         const std::vector<Vec3>& directions, const WaveNumbers& wn,
                         const LameParameters& lame) {
  if (charges.q.size() != centers.size())
    throw std::invalid_argument("farfield: charge/center count mismatch");
  FarFieldPattern out;
  out.reserve(directions.size());
  for (const auto& x_hat : directions) {
    if (!x_hat.allFinite() || std::abs(x_hat.norm() - 1.0) > 1e-10)
      throw std::invalid_argument("farfield: direction must be a unit vector");
    CVec3 sum_p = CVec3::Zero();
    CVec3 sum_s = CVec3::Zero();
    for (std::size_t m = 0; m < centers.size(); ++m) {
      sum_p += std::exp(-kI * (wn.kappa_p * x_hat.dot(centers[m]))) * charges.q[m];
      sum_s += std::exp(-kI * (wn.kappa_s * x_hat.dot(centers[m]))) * charges.q[m];
    }
    FarFieldSample sample;
    sample.x_hat = x_hat;
    const Complex radial = x_hat.cast<Complex>().dot(sum_p);
    sample.u_p = (radial / (4.0 * kPi * lame.cp2())) * x_hat.cast<Complex>();
    const Complex radial_s = x_hat.cast<Complex>().dot(sum_s);
    sample.u_s = (sum_s - radial_s * x_hat.cast<Complex>()) / (4.0 * kPi * lame.cs2());
    out.push_back(sample);
  }
  return out;
}

namespace {

// (1 - q^N) / (1 - q), continued as N at q = 1.
double truncated_geometric(double q, int n_terms) {
  if (q == 1.0) return static_cast<double>(n_terms);
  return (1.0 - std::pow(q, n_terms)) / (1.0 - q);
}

}  // namespace

ValidityReport validity_report(const GeometryStats& stats, const WaveNumbers& wn,
                               const LameParameters& lame) {
  ValidityReport report;
  const double diam = stats.diam_omega;
  const double e2 = std::exp(2.0);
  const double cp = lame.cp();
  const double cs = lame.cs();

  if (wn.omega == 0.0) {
    report.n_omega = 1;
    report.t = 1.0 / lame.cp2();
    report.footnote_small_domain = true;
  } else {
    report.n_omega =
        std::max(1, static_cast<int>(std::floor(2.0 * diam * wn.kappa_max() * e2)));
    if (report.n_omega == 1) {
      // Single-term case collapses both bracketed sums to 2.
      report.t = 1.0 / lame.cp2() -
                 4.0 * diam * (wn.omega / (cs * cs * cs) + wn.omega / (2.0 * cp * cp * cp));
    } else {
      const double geo_s = truncated_geometric(0.5 * wn.kappa_s * diam, report.n_omega);
      const double geo_p = truncated_geometric(0.5 * wn.kappa_p * diam, report.n_omega);
      const double tail = std::pow(2.0, 1.0 - report.n_omega);
      report.t = 1.0 / lame.cp2() -
                 2.0 * diam * (wn.omega / (cs * cs * cs)) * (geo_s + tail) -
                 diam * (wn.omega / (cp * cp * cp)) * (geo_p + tail);
    }
    report.footnote_small_domain =
        diam < (cs / wn.omega) * std::min(1.0 / e2, lame.cs2() / (6.0 * lame.cp2()));
  }
  report.t_positive = report.t > 0.0;
  report.sqrt_m1_a_over_d =
      stats.count > 1 ? std::sqrt(stats.count - 1.0) * stats.a / stats.d : 0.0;
  return report;
}

SolvabilityResult solvability_check(const std::vector<double>& world_acoustic_caps, double d,
                                    const ValidityReport& report, const LameParameters& lame,
                                    double max_incident_norm) {
  if (world_acoustic_caps.empty())
    throw std::invalid_argument("solvability: no capacitances");
  if (!(report.t > 0.0))
    throw std::domain_error("solvability: condition inapplicable, t <= 0");

  double ca_min = world_acoustic_caps.front(), ca_max = world_acoustic_caps.front();
  for (double c : world_acoustic_caps) {
    ca_min = std::min(ca_min, c);
    ca_max = std::max(ca_max, c);
  }
  if (!(ca_min > 0.0)) throw std::invalid_argument("solvability: nonpositive capacitance");

  const double lp2m = lame.lambda + 2.0 * lame.mu;
  const double m_count = static_cast<double>(world_acoustic_caps.size());

  SolvabilityResult result;
  result.certified =
      lp2m * lp2m * ca_max * ca_max < (1.0 / report.t) * (5.0 * kPi / 3.0) * lame.mu * d * ca_min;
  if (result.certified) {
    const double contraction =
        1.0 - (3.0 * report.t / (5.0 * kPi)) * (lp2m * lp2m / lame.mu) * ca_max * ca_max /
                  (d * ca_min);
    result.charge_sum_bound =
        2.0 / contraction * (ca_max / ca_min) * m_count * ca_max * max_incident_norm;
  }
  return result;
}

ErrorBudget error_budget(const GeometryStats& stats, const ErrorRegime& regime) {
  if (!(regime.alpha > 0.0) || regime.alpha > 1.0)
    throw std::invalid_argument("error budget: alpha must be in (0, 1]");

  const double a = stats.a;
  const double m_count = static_cast<double>(stats.count);
  const double m1 = m_count - 1.0;
  const double d = stats.d;  // +inf sentinel for M = 1 zeroes the interaction terms
  const double alpha = regime.alpha;

  ErrorBudget budget;
  auto push = [](std::vector<ErrorBudgetTerm>& terms, const std::string& name, double value) {
    terms.push_back({name, value});
  };
  auto interaction = [&](double numer, double d_power) {
    return m1 > 0.0 ? numer / std::pow(d, d_power) : 0.0;
  };

  push(budget.general_terms, "M a^2", m_count * a * a);
  push(budget.general_terms, "M(M-1) a^3/d^2", m_count * m1 * interaction(a * a * a, 2.0));
  push(budget.general_terms, "M(M-1)^2 a^4/d^3",
       m_count * m1 * m1 * interaction(a * a * a * a, 3.0));
  for (const auto& t : budget.general_terms) budget.general_total += t.value;

  const double a3 = a * a * a, a4 = a3 * a;
  push(budget.ball_terms, "M a^2", m_count * a * a);
  push(budget.ball_terms, "M a^3/d^(5-3a)", m_count * interaction(a3, 5.0 - 3.0 * alpha));
  push(budget.ball_terms, "M a^4/d^(9-6a)", m_count * interaction(a4, 9.0 - 6.0 * alpha));
  push(budget.ball_terms, "M(M-1) a^3/d^(2a)", m_count * m1 * interaction(a3, 2.0 * alpha));
  push(budget.ball_terms, "M(M-1) a^4/d^(4-a)", m_count * m1 * interaction(a4, 4.0 - alpha));
  push(budget.ball_terms, "M(M-1) a^4/d^(5-2a)",
       m_count * m1 * interaction(a4, 5.0 - 2.0 * alpha));
  push(budget.ball_terms, "M(M-1)^2 a^4/d^(3a)",
       m_count * m1 * m1 * interaction(a4, 3.0 * alpha));
  for (const auto& t : budget.ball_terms) budget.ball_total += t.value;

  const double te = regime.t_exp, se = regime.s_exp;
  budget.regime_exponents = {2.0 - se,
                             3.0 - se - 5.0 * te + 3.0 * te * alpha,
                             4.0 - se - 9.0 * te + 6.0 * te * alpha,
                             3.0 - 2.0 * se - 2.0 * te * alpha,
                             4.0 - 3.0 * se - 3.0 * te * alpha,
                             4.0 - 2.0 * se - 5.0 * te + 2.0 * te * alpha};
  budget.dominant_exponent = budget.regime_exponents.front();
  for (double e : budget.regime_exponents)
    budget.dominant_exponent = std::min(budget.dominant_exponent, e);
  return budget;
}

}  // namespace smallscat
