#include "iqofdm/pilots.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "iqofdm/error.hpp"

namespace iqofdm {

PilotPair build_pilot_pair(std::size_t n, Rng& rng, const PilotOptions& options) {
  if (!is_power_of_two(n) || n < 8) {
    throw InvalidSize("pilot pair needs a power-of-two N >= 8, got " + std::to_string(n));
  }
  if (!(options.symbol_power > 0.0)) throw DomainError("pilot symbol power must be positive");

  const std::size_t half = n / 2;
  const std::size_t inner = half - 1;
  const double ps = options.symbol_power;
  const double total = options.power == PilotPowerConvention::n_minus_1
                           ? static_cast<double>(n - 1) * ps
                           : static_cast<double>(inner) * ps;
  // QPSK points have |x| = 1 before scaling.
  const double amp = std::sqrt(total / static_cast<double>(inner)) / std::numbers::sqrt2;

  PilotPair pair;
  pair.eta = options.eta == EtaConvention::unit_power_tone ? std::sqrt(2.0 * ps) : 2.0 * ps;
  pair.sp.resize(inner);
  for (auto& p : pair.sp) {
    const double re = rng.bit() ? -amp : amp;
    const double im = rng.bit() ? -amp : amp;
    p = {re, im};
  }

  const cplx j{0.0, 1.0};
  pair.s1 = SpectrumVector(n);
  pair.s2 = SpectrumVector(n);
  pair.s1[0] = pair.eta;
  pair.s1[half] = pair.eta;
  pair.s2[0] = j * pair.eta;
  pair.s2[half] = j * pair.eta;
  for (std::size_t i = 0; i < inner; ++i) {
    pair.s1[1 + i] = pair.sp[i];
    pair.s2[half + 1 + i] = pair.sp[i];
  }
  return pair;
}

std::vector<cplx> mirrored_pilots(const PilotPair& pair) {
  const std::size_t n = pair.n();
  const SpectrumVector m = mirror(pair.s1);
  return {m.begin() + static_cast<std::ptrdiff_t>(n / 2 + 1), m.end()};
}

namespace {

SpectrumVector stack(double eta, const std::vector<cplx>& body, std::size_t n) {
  const std::size_t half = n / 2;
  SpectrumVector t(n);
  t[0] = eta;
  t[half] = eta;
  for (std::size_t i = 0; i < body.size(); ++i) {
    t[1 + i] = body[i];
    t[half + 1 + i] = body[i];
  }
  return t;
}

}  // namespace

SpectrumVector direct_template(const PilotPair& pair) {
  return stack(pair.eta, pair.sp, pair.n());
}

SpectrumVector image_template(const PilotPair& pair) {
  return mirror(stack(pair.eta, mirrored_pilots(pair), pair.n()));
}

}  // namespace iqofdm
