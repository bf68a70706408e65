#include "iqofdm/equalization.hpp"

#include <algorithm>
#include <cmath>

#include "iqofdm/error.hpp"

namespace iqofdm {
namespace {

double root_n(std::size_t n) { return std::sqrt(static_cast<double>(n)); }

void check_same(std::size_t a, std::size_t b) {
  if (a != b) throw InvalidSize("equalizer input and coefficient lengths differ");
}

template <bool Count>
Equalized ge_apply(const SpectrumVector& z, const GeCoefficients& c, MultiplyCounter* counter) {
  const std::size_t n = z.size();
  Equalized out{SpectrumVector(n), c.erased};
  std::uint64_t multiplies = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (c.erased[k]) continue;
    const cplx image = std::conj(z[mirror_index(k, n)]);
    const cplx cleaned = z[k] - c.kappa * image;
    out.symbols[k] = cleaned * c.reciprocal[k];
    if constexpr (Count) multiplies += 2;
  }
  if constexpr (Count) counter->complex_multiplies += multiplies;
  return out;
}

}  // namespace

std::size_t Equalized::erasures() const noexcept {
  return static_cast<std::size_t>(std::count(erased.begin(), erased.end(), true));
}

GeCoefficients make_ge_coefficients(cplx kappa, const SpectrumVector& mu_H,
                                    const SpectrumVector& nu_star_H) {
  check_same(mu_H.size(), nu_star_H.size());
  const std::size_t n = mu_H.size();
  const double g = root_n(n);
  GeCoefficients c{kappa, SpectrumVector(n), SpectrumVector(n), std::vector<bool>(n, false)};
  for (std::size_t k = 0; k < n; ++k) {
    const cplx d = g * (mu_H[k] - kappa * nu_star_H[k]);
    c.denominator[k] = d;
    if (std::abs(d) < kErasureThreshold) {
      c.erased[k] = true;
    } else {
      c.reciprocal[k] = 1.0 / d;
    }
  }
  return c;
}

GeCoefficients make_ge_coefficients(const ChannelEstimate& est) {
  return make_ge_coefficients(est.kappa_hat, est.mu_H, est.nu_star_H);
}

Equalized ge_equalize(const SpectrumVector& z, const GeCoefficients& coeffs,
                      MultiplyCounter* counter) {
  check_same(z.size(), coeffs.reciprocal.size());
  return counter ? ge_apply<true>(z, coeffs, counter) : ge_apply<false>(z, coeffs, nullptr);
}

Equalized ge_equalize(const SpectrumVector& z, const ChannelEstimate& est) {
  return ge_equalize(z, make_ge_coefficients(est));
}

PostFftCoefficients make_postfft_coefficients(const FdEstimate& fd) {
  check_same(fd.a.size(), fd.b.size());
  const std::size_t n = fd.a.size();
  const double g = root_n(n);
  PostFftCoefficients c{SpectrumVector(n), SpectrumVector(n), SpectrumVector(n),
                        std::vector<bool>(n, false)};
  for (std::size_t k = 0; k < n; ++k) {
    c.a[k] = g * fd.a[k];
    c.b[k] = g * fd.b[k];
  }
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t m = mirror_index(k, n);
    const cplx det = c.a[k] * std::conj(c.a[m]) - c.b[k] * std::conj(c.b[m]);
    if (std::abs(det) < kErasureThreshold) {
      c.erased[k] = true;
    } else {
      c.inv_det[k] = 1.0 / det;
    }
  }
  return c;
}

Equalized postfft_ls_equalize(const SpectrumVector& z, const PostFftCoefficients& c) {
  check_same(z.size(), c.a.size());
  const std::size_t n = z.size();
  Equalized out{SpectrumVector(n), c.erased};
  for (std::size_t k = 0; k < n; ++k) {
    if (c.erased[k]) continue;
    const std::size_t m = mirror_index(k, n);
    const cplx image = std::conj(z[m]);
    out.symbols[k] = (std::conj(c.a[m]) * z[k] - c.b[k] * image) * c.inv_det[k];
  }
  return out;
}

Equalized postfft_ls_equalize(const SpectrumVector& z, const FdEstimate& fd) {
  return postfft_ls_equalize(z, make_postfft_coefficients(fd));
}

Equalized ideal_zf_equalize(const SpectrumVector& z, const SpectrumVector& H) {
  check_same(z.size(), H.size());
  const std::size_t n = z.size();
  const double g = root_n(n);
  Equalized out{SpectrumVector(n), std::vector<bool>(n, false)};
  for (std::size_t k = 0; k < n; ++k) {
    const cplx gain = g * H[k];
    if (std::abs(gain) < kErasureThreshold) {
      out.erased[k] = true;
      continue;
    }
    out.symbols[k] = z[k] / gain;
  }
  return out;
}

double snr_loss_ge(const IqParams& p, cplx kappa) {
  const cplx mu = p.mu();
  const cplx nu = p.nu();
  const double k2 = std::norm(kappa);
  const double num = 1.0 + k2;
  const double den =
      std::norm(mu) - 2.0 * std::real(kappa * std::conj(nu) * mu) + k2 * std::norm(nu);
  if (!(den > 0.0)) throw DomainError("SNR-loss denominator is not positive");
  return 10.0 * std::log10(num / den);
}

}  // namespace iqofdm
