#include "iqofdm/ofdm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "iqofdm/error.hpp"

namespace iqofdm {

void OfdmConfig::validate() const {
  if (!is_power_of_two(n) || n < 8) {
    throw ConfigError("subcarrier count " + std::to_string(n) + " must be a power of two >= 8");
  }
  if (cp_len == 0 || cp_len > n) {
    throw ConfigError("cyclic prefix length " + std::to_string(cp_len) + " must lie in (0, N]");
  }
  if (!(bandwidth_hz > 0.0)) throw ConfigError("bandwidth must be positive");
}

SpectrumVector qpsk_map(std::span<const std::uint8_t> bits) {
  if (bits.size() % 2 != 0) throw InvalidSize("QPSK mapping needs an even number of bits");
  constexpr double a = std::numbers::sqrt2 / 2.0;
  SpectrumVector s(bits.size() / 2);
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double re = bits[2 * k] ? -a : a;
    const double im = bits[2 * k + 1] ? -a : a;
    s[k] = {re, im};
  }
  return s;
}

std::vector<std::uint8_t> qpsk_demap(const SpectrumVector& symbols) {
  std::vector<std::uint8_t> bits(2 * symbols.size());
  for (std::size_t k = 0; k < symbols.size(); ++k) {
    bits[2 * k] = symbols[k].real() < 0.0 ? 1 : 0;
    bits[2 * k + 1] = symbols[k].imag() < 0.0 ? 1 : 0;
  }
  return bits;
}

TimeVector to_time_with_cp(const SpectrumVector& S, const OfdmConfig& cfg) {
  if (S.size() != cfg.n) throw InvalidSize("symbol length does not match N");
  const TimeVector core = inverse_dft(S);
  TimeVector out(cfg.n + cfg.cp_len);
  std::copy(core.end() - static_cast<std::ptrdiff_t>(cfg.cp_len), core.end(), out.begin());
  std::copy(core.begin(), core.end(), out.begin() + static_cast<std::ptrdiff_t>(cfg.cp_len));
  return out;
}

SpectrumVector strip_cp_and_fft(const TimeVector& x, const OfdmConfig& cfg) {
  if (x.size() != cfg.n + cfg.cp_len) {
    throw InvalidSize("received block has " + std::to_string(x.size()) + " samples, expected " +
                      std::to_string(cfg.n + cfg.cp_len));
  }
  return dft(TimeVector(std::span<const cplx>(x.data() + cfg.cp_len, cfg.n)));
}

}  // namespace iqofdm
