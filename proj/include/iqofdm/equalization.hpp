#pragma once

// Frequency-domain equalizers. All take receiver spectra produced by
// strip_cp_and_fft() and channel spectra in the unitary frequency_response()
// scale; the sqrt(N) gain factor is folded into the precomputed coefficients.

#include <cstdint>
#include <vector>

#include "iqofdm/estimation.hpp"
#include "iqofdm/iq.hpp"
#include "iqofdm/spectral.hpp"

namespace iqofdm {

inline constexpr double kErasureThreshold = 1e-12;

struct Equalized {
  SpectrumVector symbols;   // erased bins hold 0
  std::vector<bool> erased;

  [[nodiscard]] std::size_t erasures() const noexcept;
};

// Counts complex multiplications performed on the per-symbol path.
struct MultiplyCounter {
  std::uint64_t complex_multiplies = 0;
};

// Per-frame GE coefficients: d(k) = sqrt(N) (mu H(k) - kappa conj(nu) H(k)) and 1/d(k).
struct GeCoefficients {
  cplx kappa;
  SpectrumVector denominator;
  SpectrumVector reciprocal;
  std::vector<bool> erased;  // |d(k)| below kErasureThreshold
};

[[nodiscard]] GeCoefficients make_ge_coefficients(cplx kappa, const SpectrumVector& mu_H,
                                                  const SpectrumVector& nu_star_H);
[[nodiscard]] GeCoefficients make_ge_coefficients(const ChannelEstimate& est);

// s(k) = (z(k) - kappa z#(k)) / d(k): two complex multiplies per bin.
[[nodiscard]] Equalized ge_equalize(const SpectrumVector& z, const GeCoefficients& coeffs,
                                    MultiplyCounter* counter = nullptr);
[[nodiscard]] Equalized ge_equalize(const SpectrumVector& z, const ChannelEstimate& est);

// Per mirror pair (k, kbar) solve
//   [z(k); z#(k)] = [[A(k), B(k)]; [B#(k), A#(k)]] [s(k); s#(k)]
// with A = sqrt(N) a, B = sqrt(N) b. Self-mirror bins use kbar = k.
struct PostFftCoefficients {
  SpectrumVector a;      // sqrt(N) a(k)
  SpectrumVector b;      // sqrt(N) b(k)
  SpectrumVector inv_det;
  std::vector<bool> erased;
};

[[nodiscard]] PostFftCoefficients make_postfft_coefficients(const FdEstimate& fd);
[[nodiscard]] Equalized postfft_ls_equalize(const SpectrumVector& z,
                                            const PostFftCoefficients& coeffs);
[[nodiscard]] Equalized postfft_ls_equalize(const SpectrumVector& z, const FdEstimate& fd);

// One-tap zero forcing z(k) / (sqrt(N) H(k)).
[[nodiscard]] Equalized ideal_zf_equalize(const SpectrumVector& z, const SpectrumVector& H);

// SNR loss of the GE detector relative to an ideal receiver, in dB:
//   10 log10((1 + |kappa|^2) / (|mu|^2 - 2 Re(kappa conj(nu) mu) + |kappa|^2 |nu|^2)).
// Throws DomainError when the denominator is not positive.
[[nodiscard]] double snr_loss_ge(const IqParams& p, cplx kappa);

}  // namespace iqofdm
