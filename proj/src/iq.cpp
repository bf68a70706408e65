#include "iqofdm/iq.hpp"

#include <cmath>
#include <numbers>

#include "iqofdm/error.hpp"

namespace iqofdm {

IqParams::IqParams(double theta, double ratio) : theta_(theta), ratio_(ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw DomainError("IQ amplitude ratio must be positive and finite");
  }
  eps_ = (ratio - 1.0) / (ratio + 1.0);
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  mu_ = {c, eps_ * s};
  nu_ = {eps_ * c, -s};
  kappa_ = nu_ / std::conj(mu_);
}

IqParams IqParams::from_ratio(double theta_rad, double amplitude_ratio) {
  return IqParams(theta_rad, amplitude_ratio);
}

IqParams IqParams::from_degrees_db(double theta_deg, double alpha_db) {
  return IqParams(theta_deg * std::numbers::pi / 180.0, std::pow(10.0, alpha_db / 20.0));
}

TimeVector distort_time(const TimeVector& y, const IqParams& p) {
  TimeVector z(y.size());
  const cplx mu = p.mu();
  const cplx nu = p.nu();
  for (std::size_t i = 0; i < y.size(); ++i) z[i] = mu * y[i] + nu * std::conj(y[i]);
  return z;
}

SpectrumVector distort_freq(const SpectrumVector& Y, const IqParams& p) {
  const SpectrumVector image = mirror(Y);
  SpectrumVector z(Y.size());
  for (std::size_t k = 0; k < Y.size(); ++k) z[k] = p.mu() * Y[k] + p.nu() * image[k];
  return z;
}

}  // namespace iqofdm
