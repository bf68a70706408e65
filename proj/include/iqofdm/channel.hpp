#pragma once

// Block-fading multipath channel: tapped-delay-line draws from a power-delay
// profile, frequency response, CP-window convolution and AWGN.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "iqofdm/error.hpp"
#include "iqofdm/random.hpp"
#include "iqofdm/spectral.hpp"

namespace iqofdm {

// Sample-spaced channel impulse response h(0..L).
struct Cir {
  std::vector<cplx> taps;

  [[nodiscard]] std::size_t length() const noexcept { return taps.size(); }
};

class PowerDelayProfile {
 public:
  // delays in seconds, powers linear; powers are renormalized to unit sum.
  PowerDelayProfile(std::vector<double> delays_s, std::vector<double> powers_linear);

  static PowerDelayProfile from_us_db(const std::vector<double>& delays_us,
                                      const std::vector<double>& powers_db);

  // 6-path typical urban approximation (3GPP TR 25.943 lineage).
  static PowerDelayProfile typical_urban();

  [[nodiscard]] const std::vector<double>& delays() const noexcept { return delays_; }
  [[nodiscard]] const std::vector<double>& powers() const noexcept { return powers_; }

  // Tap index each path lands on at the given sample period.
  [[nodiscard]] std::vector<std::size_t> tap_indices(double sample_period_s) const;

 private:
  std::vector<double> delays_;
  std::vector<double> powers_;
};

struct NoiseSpec {
  double variance = 0.0;  // per complex sample
};

// Checks that every path of the profile falls inside a CIR of cir_length taps.
void check_profile_fits(const PowerDelayProfile& profile, double sample_period_s,
                        std::size_t cir_length);

// One independent Rayleigh gain per path, E|g|^2 = path power, summed onto
// tap round(delay / Ts). Taps without a path are zero.
template <NormalSource R>
Cir draw_cir(const PowerDelayProfile& profile, double sample_period_s, std::size_t cir_length,
             R& rng) {
  check_profile_fits(profile, sample_period_s, cir_length);
  Cir h{std::vector<cplx>(cir_length)};
  const auto idx = profile.tap_indices(sample_period_s);
  for (std::size_t p = 0; p < idx.size(); ++p) {
    const double s = std::sqrt(profile.powers()[p] / 2.0);
    const double re = rng.normal();
    const double im = rng.normal();
    h.taps[idx[p]] += cplx{s * re, s * im};
  }
  return h;
}

// H = F [h; 0], unitary N-point DFT of the zero-padded CIR.
[[nodiscard]] SpectrumVector frequency_response(const Cir& h, std::size_t n);

// Linear convolution of a CP-extended block with h, truncated to the block
// window (the channel starts from rest). Throws ConfigError when cp_len < L.
[[nodiscard]] TimeVector apply_channel(const TimeVector& x_with_cp, const Cir& h,
                                       std::size_t cp_len);

TimeVector add_awgn(const TimeVector& x, NoiseSpec spec, Rng& rng);

}  // namespace iqofdm
