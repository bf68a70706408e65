#include "iqofdm/channel.hpp"

#include <numeric>

namespace iqofdm {

PowerDelayProfile::PowerDelayProfile(std::vector<double> delays_s, std::vector<double> powers_linear)
    : delays_(std::move(delays_s)), powers_(std::move(powers_linear)) {
  if (delays_.empty() || delays_.size() != powers_.size()) {
    throw ConfigError("power-delay profile needs matching, nonempty delay and power lists");
  }
  for (std::size_t i = 0; i < delays_.size(); ++i) {
    if (delays_[i] < 0.0) throw ConfigError("power-delay profile delays must be nonnegative");
    if (i > 0 && delays_[i] <= delays_[i - 1]) {
      throw ConfigError("power-delay profile delays must be strictly increasing");
    }
    if (!(powers_[i] > 0.0)) throw ConfigError("power-delay profile powers must be positive");
  }
  const double total = std::accumulate(powers_.begin(), powers_.end(), 0.0);
  for (auto& p : powers_) p /= total;
}

PowerDelayProfile PowerDelayProfile::from_us_db(const std::vector<double>& delays_us,
                                                const std::vector<double>& powers_db) {
  std::vector<double> d(delays_us.size());
  std::vector<double> p(powers_db.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = delays_us[i] * 1e-6;
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::pow(10.0, powers_db[i] / 10.0);
  return {std::move(d), std::move(p)};
}

PowerDelayProfile PowerDelayProfile::typical_urban() {
  return from_us_db({0.0, 0.2, 0.5, 1.6, 2.3, 5.0}, {-3.0, 0.0, -2.0, -6.0, -8.0, -10.0});
}

std::vector<std::size_t> PowerDelayProfile::tap_indices(double sample_period_s) const {
  if (!(sample_period_s > 0.0)) throw ConfigError("sample period must be positive");
  std::vector<std::size_t> idx(delays_.size());
  for (std::size_t i = 0; i < delays_.size(); ++i) {
    idx[i] = static_cast<std::size_t>(std::llround(delays_[i] / sample_period_s));
  }
  return idx;
}

void check_profile_fits(const PowerDelayProfile& profile, double sample_period_s,
                        std::size_t cir_length) {
  const auto idx = profile.tap_indices(sample_period_s);
  if (idx.back() >= cir_length) {
    throw ProfileTooLong("profile delay " + std::to_string(profile.delays().back() * 1e6) +
                         " us maps to tap " + std::to_string(idx.back()) +
                         ", outside a CIR of " + std::to_string(cir_length) + " taps");
  }
}

SpectrumVector frequency_response(const Cir& h, std::size_t n) {
  if (h.length() > n) throw InvalidSize("CIR longer than the transform length");
  TimeVector padded(n);
  std::copy(h.taps.begin(), h.taps.end(), padded.begin());
  return dft(padded);
}

TimeVector apply_channel(const TimeVector& x_with_cp, const Cir& h, std::size_t cp_len) {
  if (h.length() == 0) throw InvalidSize("empty CIR");
  if (cp_len + 1 < h.length()) {
    throw ConfigError("cyclic prefix of " + std::to_string(cp_len) +
                      " samples is shorter than the channel memory of " +
                      std::to_string(h.length() - 1));
  }
  const std::size_t len = x_with_cp.size();
  TimeVector y(len);
  for (std::size_t n = 0; n < len; ++n) {
    cplx acc{};
    const std::size_t taps = std::min(h.length(), n + 1);
    for (std::size_t l = 0; l < taps; ++l) acc += h.taps[l] * x_with_cp[n - l];
    y[n] = acc;
  }
  return y;
}

TimeVector add_awgn(const TimeVector& x, NoiseSpec spec, Rng& rng) {
  if (spec.variance < 0.0) throw DomainError("noise variance must be nonnegative");
  TimeVector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + rng.complex_gaussian(spec.variance);
  return y;
}

}  // namespace iqofdm
