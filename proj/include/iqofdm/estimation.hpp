#pragma once

// Channel and IQ-imbalance estimation.
//
// Spectra in ChannelEstimate and FdEstimate use the unitary scale of
// frequency_response(); the gain a data bin actually sees is sqrt(N) times that.

#include <cstddef>
#include <span>
#include <vector>

#include "iqofdm/channel.hpp"
#include "iqofdm/pilots.hpp"
#include "iqofdm/random.hpp"
#include "iqofdm/spectral.hpp"

namespace iqofdm {

struct ChannelEstimate {
  Cir mu_h;             // estimate of mu h
  Cir nu_star_h;        // estimate of conj(nu) h
  SpectrumVector mu_H;  // frequency_response(mu_h, N)
  SpectrumVector nu_star_H;
  cplx kappa_hat;       // estimate of nu / conj(mu)
};

// Direct-term stack: bins 1..N/2-1 from Z1, bins N/2+1..N-1 from Z2, and the
// two self-mirror bins combined as 0.5 Z1 - 0.5j Z2, which cancels their image.
[[nodiscard]] SpectrumVector assemble_za(const SpectrumVector& z1, const SpectrumVector& z2);

// Image-term stack, already mirrored back: mirror of (0.5 Z1 + 0.5j Z2 at the
// self-mirror bins; Z2 on 1..N/2-1; Z1 on N/2+1..N-1).
[[nodiscard]] SpectrumVector assemble_zb(const SpectrumVector& z1, const SpectrumVector& z2);

// Time-domain LS fit of mu h and conj(nu) h (cir_length = L + 1 taps) from the
// received spectra of the two pilot symbols.
// Throws DomainError on a zero template entry or a vanishing sum of mu h taps.
[[nodiscard]] ChannelEstimate td_ls_estimate(const SpectrumVector& z1, const SpectrumVector& z2,
                                             const PilotPair& pair, std::size_t cir_length);

// kappa from tap sums: conj(sum conj(nu) h / sum mu h).
[[nodiscard]] cplx kappa_from_taps(const Cir& mu_h, const Cir& nu_star_h);

// Same ratio formed from the frequency-domain sums of the two responses.
[[nodiscard]] cplx kappa_from_spectra(const SpectrumVector& mu_H, const SpectrumVector& nu_star_H);

// E|s|^2 * E|1/s|^2 over a symbol set; 1 for any constant-modulus set.
[[nodiscard]] double pilot_beta(std::span<const cplx> symbols);

// Per-bin MSE of the TD-LS gain estimates: (L + 1) beta / (N gamma).
[[nodiscard]] double predict_mse(std::size_t n, std::size_t cir_length, double gamma,
                                 std::span<const cplx> symbols);

// Per-bin model z(k) = a(k) s(k) + b(k) s#(k), with a ~ mu H and b ~ nu H#.
struct FdEstimate {
  SpectrumVector a;
  SpectrumVector b;
};

struct TrainingObservation {
  SpectrumVector received;
  SpectrumVector known;
};

// Full-band training for the FD-LS baseline. Symbols come in pairs (s, j s)
// with a fresh QPSK s per pair, so every per-bin normal matrix is diagonal;
// an odd count ends with one extra random symbol.
[[nodiscard]] std::vector<SpectrumVector> fd_ls_training(std::size_t n, std::size_t count,
                                                         double amplitude, Rng& rng);

// Per-bin least squares over the training observations. Throws SingularFit
// for fewer than two observations or a rank-deficient bin.
[[nodiscard]] FdEstimate fd_ls_estimate(std::span<const TrainingObservation> training);

}  // namespace iqofdm
