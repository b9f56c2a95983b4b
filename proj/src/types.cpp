#include "smallscat/types.hpp"

#include <stdexcept>

namespace smallscat {

LameParameters::LameParameters(double lambda_, double mu_) : lambda(lambda_), mu(mu_) {
  if (!std::isfinite(lambda) || !std::isfinite(mu))
    throw std::invalid_argument("LameParameters: non-finite constants");
  if (!(mu > 0.0) || !(3.0 * lambda + 2.0 * mu > 0.0))
    throw std::invalid_argument("LameParameters: require mu > 0 and 3*lambda + 2*mu > 0");
}

WaveNumbers::WaveNumbers(double omega_, const LameParameters& lame) : omega(omega_) {
  if (!std::isfinite(omega) || omega < 0.0)
    throw std::invalid_argument("WaveNumbers: omega must be finite and >= 0");
  kappa_p = omega / lame.cp();
  kappa_s = omega / lame.cs();
}

}  // namespace smallscat
