#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "iqofdm/spectral.hpp"

namespace iqofdm {

enum class Modulation { qpsk };

struct OfdmConfig {
  std::size_t n = 128;           // subcarriers
  std::size_t cp_len = 16;       // cyclic prefix samples (= L + 1)
  double bandwidth_hz = 2e6;     // sample rate; Ts = 1 / bandwidth
  Modulation modulation = Modulation::qpsk;

  [[nodiscard]] double sample_period() const noexcept { return 1.0 / bandwidth_hz; }

  // Throws ConfigError on a non power-of-two N, N < 8, or cp_len outside (0, N].
  void validate() const;
};

// Gray QPSK at unit average power: (b1 b0) -> ((1 - 2 b1) + j (1 - 2 b0)) / sqrt(2).
// bits holds one bit per element (0/1), two bits per symbol, b1 first.
[[nodiscard]] SpectrumVector qpsk_map(std::span<const std::uint8_t> bits);

// Hard decisions: b1 = [Re < 0], b0 = [Im < 0].
[[nodiscard]] std::vector<std::uint8_t> qpsk_demap(const SpectrumVector& symbols);

[[nodiscard]] TimeVector to_time_with_cp(const SpectrumVector& S, const OfdmConfig& cfg);
[[nodiscard]] SpectrumVector strip_cp_and_fft(const TimeVector& x, const OfdmConfig& cfg);

}  // namespace iqofdm
