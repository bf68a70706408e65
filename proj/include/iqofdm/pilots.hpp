#pragma once

// Two-symbol pilot pattern for joint channel / IQ estimation.
//
//   s1 = ( eta;   s_p;  eta;   0  )      bins 0 | 1..N/2-1 | N/2 | N/2+1..N-1
//   s2 = ( j eta; 0;    j eta; s_p )
//
// Symbol 1 leaves the upper half empty so that its image lands there without
// overlapping the direct pilots; symbol 2 does the converse. DC and Nyquist are
// self-mirror bins and are separated by the 90 degree rotation between the two
// symbols instead.

#include <cstddef>
#include <vector>

#include "iqofdm/random.hpp"
#include "iqofdm/spectral.hpp"

namespace iqofdm {

enum class EtaConvention {
  unit_power_tone,  // eta = sqrt(2 Ps): tone power 2 Ps, same as a boosted s_p entry
  literal,          // eta = 2 Ps
};

enum class PilotPowerConvention {
  n_minus_1,  // sum |s_p|^2 = (N - 1) Ps  (~3 dB boost per pilot)
  half,       // sum |s_p|^2 = (N/2 - 1) Ps
};

struct PilotOptions {
  double symbol_power = 1.0;  // Ps
  EtaConvention eta = EtaConvention::unit_power_tone;
  PilotPowerConvention power = PilotPowerConvention::n_minus_1;
};

struct PilotPair {
  SpectrumVector s1;
  SpectrumVector s2;
  std::vector<cplx> sp;  // N/2 - 1 inner pilots
  double eta = 0.0;

  [[nodiscard]] std::size_t n() const noexcept { return s1.size(); }
};

PilotPair build_pilot_pair(std::size_t n, Rng& rng, const PilotOptions& options = {});

// mirror(s1) over bins N/2+1..N-1: the conjugate-reversed copy of s_p that
// multiplies the image terms.
[[nodiscard]] std::vector<cplx> mirrored_pilots(const PilotPair& pair);

// Divisor for the direct-term stack: (eta; s_p; eta; s_p).
[[nodiscard]] SpectrumVector direct_template(const PilotPair& pair);

// Divisor for the image-term stack after mirroring: mirror((eta; sp~; eta; sp~)).
[[nodiscard]] SpectrumVector image_template(const PilotPair& pair);

}  // namespace iqofdm
