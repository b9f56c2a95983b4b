#pragma once

#include "smallscat/types.hpp"

namespace smallscat {

/// Elastostatic (zero-frequency) fundamental tensor
///   G0(x,y) = 1/(8 pi) [ (1/cs^2 + 1/cp^2) I / |r| + (1/cs^2 - 1/cp^2) r r^T / |r|^3 ],
/// r = x - y. Real, symmetric, positive definite, homogeneous of degree -1.
Mat3 kelvin_tensor(const Vec3& x, const Vec3& y, const LameParameters& lame);

/// Fundamental tensor of the time-harmonic Navier operator.
/// Closed form (Helmholtz-kernel derivatives) for kappa_max*|x-y| >= 0.1,
/// truncated power series below; omega == 0 routes to kelvin_tensor.
CMat3 kupradze_tensor(const Vec3& x, const Vec3& y, const WaveNumbers& wn,
                      const LameParameters& lame);

/// Gradient with respect to y, component k in slab k.
CTensor3 kupradze_gradient(const Vec3& x, const Vec3& y, const WaveNumbers& wn,
                           const LameParameters& lame);

/// Coincident limit of kupradze_tensor(x,y) - kelvin_tensor(x,y) as y -> x:
/// i omega (2/cs^3 + 1/cp^3) / (12 pi) * I.
CMat3 kupradze_minus_kelvin_limit(const WaveNumbers& wn, const LameParameters& lame);

/// Longitudinal far-field factorization kernel
///   1/(4 pi cp^2) (xhat xhat^T) exp(-i kappa_p xhat.y).
CMat3 farfield_kernel_p(const Vec3& x_hat, const Vec3& y, const WaveNumbers& wn,
                        const LameParameters& lame);

/// Transversal far-field factorization kernel
///   1/(4 pi cs^2) (I - xhat xhat^T) exp(-i kappa_s xhat.y).
CMat3 farfield_kernel_s(const Vec3& x_hat, const Vec3& y, const WaveNumbers& wn,
                        const LameParameters& lame);

namespace detail {
/// Branch switch point: series below, closed form at or above.
inline constexpr double kSeriesSwitch = 0.1;
inline constexpr int kSeriesMaxTerms = 60;
}  // namespace detail

}  // namespace smallscat
