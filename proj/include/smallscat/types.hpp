#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>

namespace smallscat {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Complex = std::complex<double>;
using CVec3 = Eigen::Vector3cd;
using CMat3 = Eigen::Matrix3cd;

/// Third-order tensor T(i,j,k) = d Gamma_ij / d y_k, stored as one 3x3 slab per k.
using CTensor3 = std::array<CMat3, 3>;

/// Isotropic material constants (unit density). Pressure and shear speeds
/// are c_p = sqrt(lambda + 2 mu) and c_s = sqrt(mu).
struct LameParameters {
  double lambda = 0.0;
  double mu = 0.0;

  LameParameters(double lambda_, double mu_);

  double cp() const { return std::sqrt(lambda + 2.0 * mu); }
  double cs() const { return std::sqrt(mu); }
  double cp2() const { return lambda + 2.0 * mu; }
  double cs2() const { return mu; }
};

/// Angular frequency with the derived longitudinal/transversal wavenumbers.
struct WaveNumbers {
  double omega = 0.0;
  double kappa_p = 0.0;
  double kappa_s = 0.0;

  WaveNumbers(double omega_, const LameParameters& lame);

  double kappa_max() const { return std::max(kappa_p, kappa_s); }
};

}  // namespace smallscat
