#include "smallscat/kernels.hpp"

#include <stdexcept>

namespace smallscat {

namespace {

constexpr double kPi = 3.14159265358979323846;
const Complex kI(0.0, 1.0);

void check_pair(const Vec3& x, const Vec3& y) {
  if (!x.allFinite() || !y.allFinite())
    throw std::invalid_argument("kernel: non-finite evaluation points");
  if (x == y) throw std::invalid_argument("kernel: coincident evaluation points");
}

// Radial derivatives of the Helmholtz kernel Phi(r) = exp(i k r)/(4 pi r),
// written through u = i k r:
//   Phi   = E / r                 with E = exp(u)/(4 pi)
//   Phi'  = E (u - 1) / r^2
//   Phi'' = E (u^2 - 2u + 2) / r^3
//   Phi'''= E (u^3 - 3u^2 + 6u - 6) / r^4
struct HelmholtzDerivs {
  Complex phi, d1, d2, d3;
};

HelmholtzDerivs helmholtz_derivs(double kappa, double r) {
  const Complex u = kI * (kappa * r);
  const Complex e = std::exp(u) / (4.0 * kPi);
  HelmholtzDerivs h;
  h.phi = e / r;
  h.d1 = e * (u - 1.0) / (r * r);
  h.d2 = e * (u * u - 2.0 * u + 2.0) / (r * r * r);
  h.d3 = e * (u * u * u - 3.0 * u * u + 6.0 * u - 6.0) / (r * r * r * r);
  return h;
}

// Per-term coefficients of the power-series representation
//   Gamma = sum_l  a_l |r|^(l-1) I  +  b_l |r|^(l-3) (r x r),
// with the 1/omega^2 factor absorbed as kappa^(l+2)/omega^2 = kappa^l/c^2,
// so every term is finite at omega = 0 (only l = 0 survives there).
struct SeriesCoeffs {
  Complex a, b;
};

class SeriesGen {
public:
  SeriesGen(const WaveNumbers& wn, const LameParameters& lame)
      : inv_cs2_(1.0 / lame.cs2()), inv_cp2_(1.0 / lame.cp2()),
        ks_(wn.kappa_s), kp_(wn.kappa_p) {}

  SeriesCoeffs next() {
    const double common = 1.0 / (factorial_ * (l_ + 2.0));
    SeriesCoeffs c;
    c.a = il_ * common * ((l_ + 1.0) * pow_ks_ * inv_cs2_ + pow_kp_ * inv_cp2_) / (4.0 * kPi);
    c.b = -il_ * common * (l_ - 1.0) * (pow_ks_ * inv_cs2_ - pow_kp_ * inv_cp2_) / (4.0 * kPi);
    ++l_;
    factorial_ *= l_;
    il_ *= kI;
    pow_ks_ *= ks_;
    pow_kp_ *= kp_;
    return c;
  }

private:
  double inv_cs2_, inv_cp2_, ks_, kp_;
  int l_ = 0;
  double factorial_ = 1.0;
  Complex il_ = 1.0;
  double pow_ks_ = 1.0, pow_kp_ = 1.0;
};

CMat3 iso_plus_outer(const Complex& c_iso, const Complex& c_outer, const Vec3& v) {
  CMat3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out(i, j) = c_outer * (v[i] * v[j]) + (i == j ? c_iso : Complex(0.0));
  return out;
}

CMat3 kupradze_series(const Vec3& rvec, const WaveNumbers& wn, const LameParameters& lame) {
  const double r = rvec.norm();
  SeriesGen gen(wn, lame);
  Complex sum_iso = 0.0, sum_rr = 0.0;
  double pow_r1 = 1.0 / r;            // |r|^(l-1)
  double pow_r3 = 1.0 / (r * r * r);  // |r|^(l-3)
  double peak = 0.0;
  for (int l = 0; l < detail::kSeriesMaxTerms; ++l) {
    const SeriesCoeffs c = gen.next();
    const Complex ta = c.a * pow_r1;
    const Complex tb = c.b * pow_r3;
    sum_iso += ta;
    sum_rr += tb;
    const double mag = std::abs(ta) + std::abs(tb) * r * r;
    peak = std::max(peak, mag);
    if (l >= 2 && mag < 1e-16 * peak) break;
    pow_r1 *= r;
    pow_r3 *= r;
  }
  return iso_plus_outer(sum_iso, sum_rr, rvec);
}

CMat3 kupradze_closed(const Vec3& rvec, const WaveNumbers& wn, const LameParameters& lame) {
  const double r = rvec.norm();
  const Vec3 rh = rvec / r;
  const HelmholtzDerivs hs = helmholtz_derivs(wn.kappa_s, r);
  const HelmholtzDerivs hp = helmholtz_derivs(wn.kappa_p, r);
  const double w2 = wn.omega * wn.omega;
  const Complex g1 = hs.d1 - hp.d1;
  const Complex g2 = hs.d2 - hp.d2;
  const Complex coef_iso = hs.phi / lame.mu + g1 / (w2 * r);
  const Complex coef_rr = (g2 - g1 / r) / w2;
  return iso_plus_outer(coef_iso, coef_rr, rh);
}

// grad[k](i,j) = s_iso R_k d_ij + s_rrr R_i R_j R_k + s_mix (d_ik R_j + d_jk R_i)
CTensor3 compose_gradient(const Complex& s_iso, const Complex& s_rrr, const Complex& s_mix,
                          const Vec3& rvec) {
  CTensor3 grad;
  for (int k = 0; k < 3; ++k) {
    CMat3& slab = grad[k];
    slab = iso_plus_outer(s_iso * rvec[k], s_rrr * rvec[k], rvec);
    for (int j = 0; j < 3; ++j) {
      slab(k, j) += s_mix * rvec[j];
      slab(j, k) += s_mix * rvec[j];
    }
  }
  return grad;
}

CTensor3 gradient_series(const Vec3& rvec, const WaveNumbers& wn, const LameParameters& lame) {
  const double r = rvec.norm();
  SeriesGen gen(wn, lame);
  Complex s_iso = 0.0, s_rrr = 0.0, s_mix = 0.0;
  double pow_r3 = 1.0 / (r * r * r);      // |r|^(l-3)
  double pow_r5 = pow_r3 / (r * r);       // |r|^(l-5)
  double peak = 0.0;
  for (int l = 0; l < detail::kSeriesMaxTerms; ++l) {
    const SeriesCoeffs c = gen.next();
    const Complex ta = -c.a * (l - 1.0) * pow_r3;
    const Complex tb3 = -c.b * (l - 3.0) * pow_r5;
    const Complex tb1 = -c.b * pow_r3;
    s_iso += ta;
    s_rrr += tb3;
    s_mix += tb1;
    const double mag = (std::abs(ta) + std::abs(tb3) * r * r + 2.0 * std::abs(tb1)) * r;
    peak = std::max(peak, mag);
    if (l >= 2 && mag < 1e-16 * peak) break;
    pow_r3 *= r;
    pow_r5 *= r;
  }
  return compose_gradient(s_iso, s_rrr, s_mix, rvec);
}

CTensor3 gradient_closed(const Vec3& rvec, const WaveNumbers& wn, const LameParameters& lame) {
  const double r = rvec.norm();
  const HelmholtzDerivs hs = helmholtz_derivs(wn.kappa_s, r);
  const HelmholtzDerivs hp = helmholtz_derivs(wn.kappa_p, r);
  const double w2 = wn.omega * wn.omega;
  const Complex g1 = hs.d1 - hp.d1;
  const Complex g2 = hs.d2 - hp.d2;
  const Complex g3 = hs.d3 - hp.d3;
  // Gamma = A(r) I + B(r) rh rh^T; differentiate in y (dr/dy_k = -R_k/r).
  const Complex b_coef = (g2 - g1 / r) / w2;
  const Complex da = hs.d1 / lame.mu + g2 / (w2 * r) - g1 / (w2 * r * r);
  const Complex db = (g3 - g2 / r + g1 / (r * r)) / w2;
  const Complex s_iso = -da / r;
  const Complex s_rrr = (-db + 2.0 * b_coef / r) / (r * r * r);
  const Complex s_mix = -b_coef / (r * r);
  return compose_gradient(s_iso, s_rrr, s_mix, rvec);
}

}  // namespace

Mat3 kelvin_tensor(const Vec3& x, const Vec3& y, const LameParameters& lame) {
  check_pair(x, y);
  const Vec3 rvec = x - y;
  const double r = rvec.norm();
  const double sum_c = 1.0 / lame.cs2() + 1.0 / lame.cp2();
  const double dif_c = 1.0 / lame.cs2() - 1.0 / lame.cp2();
  Mat3 out = (sum_c / r) * Mat3::Identity();
  out += (dif_c / (r * r * r)) * (rvec * rvec.transpose());
  return out / (8.0 * kPi);
}

CMat3 kupradze_tensor(const Vec3& x, const Vec3& y, const WaveNumbers& wn,
                      const LameParameters& lame) {
  check_pair(x, y);
  if (wn.omega == 0.0) return kelvin_tensor(x, y, lame).cast<Complex>();
  const Vec3 rvec = x - y;
  const double scaled = wn.kappa_max() * rvec.norm();
  if (scaled < detail::kSeriesSwitch) return kupradze_series(rvec, wn, lame);
  return kupradze_closed(rvec, wn, lame);
}

CTensor3 kupradze_gradient(const Vec3& x, const Vec3& y, const WaveNumbers& wn,
                           const LameParameters& lame) {
  check_pair(x, y);
  const Vec3 rvec = x - y;
  const double scaled = wn.kappa_max() * rvec.norm();
  if (wn.omega == 0.0 || scaled < detail::kSeriesSwitch)
    return gradient_series(rvec, wn, lame);
  return gradient_closed(rvec, wn, lame);
}

CMat3 kupradze_minus_kelvin_limit(const WaveNumbers& wn, const LameParameters& lame) {
  const double cs = lame.cs();
  const double cp = lame.cp();
  const Complex coef =
      kI * wn.omega * (2.0 / (cs * cs * cs) + 1.0 / (cp * cp * cp)) / (12.0 * kPi);
  CMat3 out = CMat3::Zero();
  out(0, 0) = out(1, 1) = out(2, 2) = coef;
  return out;
}

namespace {
void check_direction(const Vec3& x_hat) {
  if (!x_hat.allFinite() || std::abs(x_hat.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("farfield kernel: direction must be a unit vector");
}
}  // namespace

CMat3 farfield_kernel_p(const Vec3& x_hat, const Vec3& y, const WaveNumbers& wn,
                        const LameParameters& lame) {
  check_direction(x_hat);
  const Complex phase = std::exp(-kI * (wn.kappa_p * x_hat.dot(y)));
  return iso_plus_outer(Complex(0.0), phase / (4.0 * kPi * lame.cp2()), x_hat);
}

CMat3 farfield_kernel_s(const Vec3& x_hat, const Vec3& y, const WaveNumbers& wn,
                        const LameParameters& lame) {
  check_direction(x_hat);
  const Complex scale = std::exp(-kI * (wn.kappa_s * x_hat.dot(y))) / (4.0 * kPi * lame.cs2());
  return iso_plus_outer(scale, -scale, x_hat);
}

}  // namespace smallscat
