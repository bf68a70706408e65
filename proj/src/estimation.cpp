#include "iqofdm/estimation.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "iqofdm/error.hpp"

namespace iqofdm {
namespace {

constexpr double kTiny = 1e-12;

void check_pair(const SpectrumVector& z1, const SpectrumVector& z2) {
  if (z1.size() != z2.size() || !is_power_of_two(z1.size()) || z1.size() < 8) {
    throw InvalidSize("received pilot spectra must share a power-of-two length >= 8");
  }
}

// First cir_length taps of F^H (z / template), rescaled out of the per-bin gain scale.
Cir ls_taps(const SpectrumVector& stacked, const SpectrumVector& tmpl, std::size_t cir_length) {
  const std::size_t n = stacked.size();
  SpectrumVector ratio(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(tmpl[k]) < kTiny) {
      throw DomainError("pilot template entry " + std::to_string(k) + " is zero");
    }
    ratio[k] = stacked[k] * (1.0 / tmpl[k]);
  }
  const TimeVector t = inverse_dft(ratio);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Cir h{std::vector<cplx>(cir_length)};
  for (std::size_t l = 0; l < cir_length; ++l) h.taps[l] = t[l] * scale;
  return h;
}

}  // namespace

SpectrumVector assemble_za(const SpectrumVector& z1, const SpectrumVector& z2) {
  check_pair(z1, z2);
  const std::size_t n = z1.size();
  const std::size_t half = n / 2;
  const cplx j{0.0, 1.0};
  SpectrumVector za(n);
  za[0] = 0.5 * z1[0] - 0.5 * j * z2[0];
  za[half] = 0.5 * z1[half] - 0.5 * j * z2[half];
  for (std::size_t k = 1; k < half; ++k) za[k] = z1[k];
  for (std::size_t k = half + 1; k < n; ++k) za[k] = z2[k];
  return za;
}

SpectrumVector assemble_zb(const SpectrumVector& z1, const SpectrumVector& z2) {
  check_pair(z1, z2);
  const std::size_t n = z1.size();
  const std::size_t half = n / 2;
  const cplx j{0.0, 1.0};
  SpectrumVector zb_mirrored(n);
  zb_mirrored[0] = 0.5 * z1[0] + 0.5 * j * z2[0];
  zb_mirrored[half] = 0.5 * z1[half] + 0.5 * j * z2[half];
  for (std::size_t k = 1; k < half; ++k) zb_mirrored[k] = z2[k];
  for (std::size_t k = half + 1; k < n; ++k) zb_mirrored[k] = z1[k];
  return mirror(zb_mirrored);
}

cplx kappa_from_taps(const Cir& mu_h, const Cir& nu_star_h) {
  cplx num{};
  cplx den{};
  for (const auto& v : nu_star_h.taps) num += v;
  for (const auto& v : mu_h.taps) den += v;
  if (std::abs(den) < kTiny) throw DomainError("degenerate kappa: sum of mu h taps vanishes");
  return std::conj(num / den);
}

cplx kappa_from_spectra(const SpectrumVector& mu_H, const SpectrumVector& nu_star_H) {
  cplx num{};
  cplx den{};
  for (const auto& v : nu_star_H) num += v;
  for (const auto& v : mu_H) den += v;
  if (std::abs(den) < kTiny) throw DomainError("degenerate kappa: sum of mu H vanishes");
  return std::conj(num / den);
}

ChannelEstimate td_ls_estimate(const SpectrumVector& z1, const SpectrumVector& z2,
                               const PilotPair& pair, std::size_t cir_length) {
  check_pair(z1, z2);
  const std::size_t n = z1.size();
  if (pair.n() != n) throw InvalidSize("pilot pair length does not match received spectra");
  if (cir_length == 0 || cir_length > n) throw InvalidSize("CIR length must lie in [1, N]");

  ChannelEstimate est;
  est.mu_h = ls_taps(assemble_za(z1, z2), direct_template(pair), cir_length);
  est.nu_star_h = ls_taps(assemble_zb(z1, z2), image_template(pair), cir_length);
  est.mu_H = frequency_response(est.mu_h, n);
  est.nu_star_H = frequency_response(est.nu_star_h, n);
  est.kappa_hat = kappa_from_taps(est.mu_h, est.nu_star_h);
  return est;
}

double pilot_beta(std::span<const cplx> symbols) {
  if (symbols.empty()) throw InvalidSize("beta needs at least one symbol");
  double p = 0.0;
  double inv = 0.0;
  for (const auto& s : symbols) {
    if (std::abs(s) < kTiny) throw DomainError("beta undefined for a zero symbol");
    p += std::norm(s);
    inv += 1.0 / std::norm(s);
  }
  const auto m = static_cast<double>(symbols.size());
  return (p / m) * (inv / m);
}

double predict_mse(std::size_t n, std::size_t cir_length, double gamma,
                   std::span<const cplx> symbols) {
  if (!(gamma > 0.0)) throw DomainError("SNR must be positive");
  return static_cast<double>(cir_length) * pilot_beta(symbols) / (static_cast<double>(n) * gamma);
}

std::vector<SpectrumVector> fd_ls_training(std::size_t n, std::size_t count, double amplitude,
                                           Rng& rng) {
  const double a = amplitude / std::numbers::sqrt2;
  auto random_qpsk = [&] {
    SpectrumVector s(n);
    for (auto& v : s) {
      const double re = rng.bit() ? -a : a;
      const double im = rng.bit() ? -a : a;
      v = {re, im};
    }
    return s;
  };
  std::vector<SpectrumVector> out;
  out.reserve(count);
  const cplx j{0.0, 1.0};
  while (out.size() + 2 <= count) {
    SpectrumVector s = random_qpsk();
    SpectrumVector rotated(n);
    for (std::size_t k = 0; k < n; ++k) rotated[k] = j * s[k];
    out.push_back(std::move(s));
    out.push_back(std::move(rotated));
  }
  if (out.size() < count) out.push_back(random_qpsk());
  return out;
}

FdEstimate fd_ls_estimate(std::span<const TrainingObservation> training) {
  if (training.size() < 2) {
    throw SingularFit("FD-LS needs at least two training symbols per bin, got " +
                      std::to_string(training.size()));
  }
  const std::size_t n = training.front().known.size();
  std::vector<SpectrumVector> images;
  images.reserve(training.size());
  for (const auto& obs : training) {
    if (obs.known.size() != n || obs.received.size() != n) {
      throw InvalidSize("training observations must share one length");
    }
    images.push_back(mirror(obs.known));
  }

  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  FdEstimate fd{SpectrumVector(n), SpectrumVector(n)};
  for (std::size_t k = 0; k < n; ++k) {
    // Normal equations for rows [s_t(k), s_t#(k)].
    double g11 = 0.0;
    double g22 = 0.0;
    cplx g12{};
    cplx c1{};
    cplx c2{};
    for (std::size_t t = 0; t < training.size(); ++t) {
      const cplx s = training[t].known[k];
      const cplx si = images[t][k];
      const cplx z = training[t].received[k];
      g11 += std::norm(s);
      g22 += std::norm(si);
      g12 += std::conj(s) * si;
      c1 += std::conj(s) * z;
      c2 += std::conj(si) * z;
    }
    const double det = g11 * g22 - std::norm(g12);
    if (!(det > 1e-12 * g11 * g22)) {
      throw SingularFit("FD-LS design is rank deficient at bin " + std::to_string(k));
    }
    const cplx a = (g22 * c1 - g12 * c2) / det;
    const cplx b = (g11 * c2 - std::conj(g12) * c1) / det;
    fd.a[k] = a * scale;
    fd.b[k] = b * scale;
  }
  return fd;
}

}  // namespace iqofdm
