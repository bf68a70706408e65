#pragma once

// Receiver IQ imbalance, z = mu y + nu y*.

#include "iqofdm/spectral.hpp"

namespace iqofdm {

// Phase/amplitude imbalance with the derived distortion coefficients.
//
// The amplitude imbalance is carried as the ratio g of the I and Q branch
// gains. The coefficient entering mu and nu is eps = (g - 1) / (g + 1), so
// that g = 1 (0 dB) with theta = 0 is the distortion-free receiver:
//   mu = cos(theta/2) + j eps sin(theta/2)
//   nu = eps cos(theta/2) - j sin(theta/2)
//   kappa = nu / conj(mu)
class IqParams {
 public:
  // theta in radians, amplitude_ratio linear (> 0).
  static IqParams from_ratio(double theta_rad, double amplitude_ratio);
  static IqParams from_degrees_db(double theta_deg, double alpha_db);
  static IqParams ideal() { return from_ratio(0.0, 1.0); }

  [[nodiscard]] double theta() const noexcept { return theta_; }
  [[nodiscard]] double amplitude_ratio() const noexcept { return ratio_; }
  [[nodiscard]] double epsilon() const noexcept { return eps_; }
  [[nodiscard]] cplx mu() const noexcept { return mu_; }
  [[nodiscard]] cplx nu() const noexcept { return nu_; }
  [[nodiscard]] cplx kappa() const noexcept { return kappa_; }

 private:
  IqParams(double theta, double ratio);

  double theta_;
  double ratio_;
  double eps_;
  cplx mu_;
  cplx nu_;
  cplx kappa_;
};

[[nodiscard]] TimeVector distort_time(const TimeVector& y, const IqParams& p);
[[nodiscard]] SpectrumVector distort_freq(const SpectrumVector& Y, const IqParams& p);

}  // namespace iqofdm
