#include "iqofdm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "iqofdm/equalization.hpp"
#include "iqofdm/estimation.hpp"
#include "iqofdm/random.hpp"

namespace iqofdm {
namespace {

// Substream purposes; a frame's streams depend only on (seed, frame, purpose).
enum Stream : std::uint64_t {
  kChannel = 0,
  kData = 1,
  kDataNoise = 2,
  kPilotNoise = 3,
  kTraining = 4,
  kTrainingNoise = 5,
};

unsigned resolve_jobs(unsigned jobs) {
  if (jobs != 0) return jobs;
  return std::max(1U, std::thread::hardware_concurrency());
}

// Runs fn(i) for i in [0, count). Results must be written to per-index slots;
// the first exception thrown by any worker is rethrown on the caller.
template <class F>
void parallel_for(std::size_t count, unsigned jobs, F&& fn) {
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::string fmt(double v, const char* spec = "%.10g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string join(const std::vector<double>& v, const char* spec = "%.10g") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt(v[i], spec);
  }
  return out;
}

double noise_variance_for(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

class Link {
 public:
  explicit Link(const OfdmConfig& ofdm) : ofdm_(ofdm) {}

  // Frequency-domain symbol -> CP -> channel -> AWGN -> (IQ) -> CP removal -> FFT.
  // With noise_after_iq the AWGN is added to the distorted samples instead.
  SpectrumVector transmit(const SpectrumVector& s, const Cir& h, double noise_var,
                          const IqParams* iq, Rng& noise, bool noise_after_iq = false) const {
    TimeVector y = apply_channel(to_time_with_cp(s, ofdm_), h, ofdm_.cp_len);
    if (!noise_after_iq) y = add_awgn(y, NoiseSpec{noise_var}, noise);
    if (iq) y = distort_time(y, *iq);
    if (noise_after_iq) y = add_awgn(y, NoiseSpec{noise_var}, noise);
    return strip_cp_and_fft(y, ofdm_);
  }

 private:
  const OfdmConfig& ofdm_;
};

struct Tally {
  std::uint64_t bits = 0;
  std::uint64_t errors = 0;
  std::uint64_t erasures = 0;

  Tally& operator+=(const Tally& o) {
    bits += o.bits;
    errors += o.errors;
    erasures += o.erasures;
    return *this;
  }
};

bool is_data_bin(std::size_t k, std::size_t n, bool null_dc) {
  return !null_dc || (k != 0 && k != n / 2);
}

std::size_t data_bins(std::size_t n, bool null_dc) { return null_dc ? n - 2 : n; }

// Erased bins count as one error in two bits.
Tally score(const Equalized& eq, const std::vector<std::uint8_t>& bits, bool null_dc) {
  Tally t;
  const std::size_t n = eq.symbols.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (!is_data_bin(k, n, null_dc)) continue;
    t.bits += 2;
    if (eq.erased[k]) {
      ++t.errors;
      ++t.erasures;
      continue;
    }
    const std::uint8_t b1 = eq.symbols[k].real() < 0.0 ? 1 : 0;
    const std::uint8_t b0 = eq.symbols[k].imag() < 0.0 ? 1 : 0;
    t.errors += (b1 != bits[2 * k]) + (b0 != bits[2 * k + 1]);
  }
  return t;
}

ChannelEstimate exact_estimate(const Cir& h, const IqParams& iq, std::size_t n) {
  ChannelEstimate est;
  est.mu_h = h;
  est.nu_star_h = h;
  for (auto& v : est.mu_h.taps) v *= iq.mu();
  for (auto& v : est.nu_star_h.taps) v *= std::conj(iq.nu());
  est.mu_H = frequency_response(est.mu_h, n);
  est.nu_star_H = frequency_response(est.nu_star_h, n);
  est.kappa_hat = iq.kappa();
  return est;
}

struct SweepContext {
  const SimConfig& cfg;
  const PilotPair& pilots;
  IqParams iq;
  Link link;
};

Tally simulate_frame(const SweepContext& ctx, Scheme scheme, double noise_var, std::size_t frame) {
  const SimConfig& cfg = ctx.cfg;
  const std::size_t n = cfg.ofdm.n;
  const std::uint64_t f = frame;

  Rng channel_rng = Rng::substream(cfg.seed, {f, kChannel});
  const Cir h = draw_cir(cfg.profile, cfg.ofdm.sample_period(), cfg.taps(), channel_rng);
  const SpectrumVector H = frequency_response(h, n);

  auto all_erased = [&] {
    const std::uint64_t bins = data_bins(n, cfg.null_dc) * cfg.data_symbols;
    return Tally{2 * bins, bins, bins};
  };

  auto run_data = [&](const IqParams* iq, auto&& equalize) {
    Rng data_rng = Rng::substream(cfg.seed, {f, kData});
    Rng noise_rng = Rng::substream(cfg.seed, {f, kDataNoise});
    std::vector<std::uint8_t> bits(2 * n);
    Tally t;
    for (std::size_t sym = 0; sym < cfg.data_symbols; ++sym) {
      for (auto& b : bits) b = static_cast<std::uint8_t>(data_rng.bit());
      SpectrumVector s = qpsk_map(bits);
      if (cfg.null_dc) {
        s[0] = 0.0;
        s[n / 2] = 0.0;
      }
      const SpectrumVector z = ctx.link.transmit(s, h, noise_var, iq, noise_rng);
      t += score(equalize(z), bits, cfg.null_dc);
    }
    return t;
  };

  switch (scheme) {
    case Scheme::ideal:
      return run_data(nullptr, [&](const SpectrumVector& z) { return ideal_zf_equalize(z, H); });

    case Scheme::none: {
      SpectrumVector direct = H;
      for (auto& v : direct) v *= ctx.iq.mu();
      return run_data(&ctx.iq,
                      [&](const SpectrumVector& z) { return ideal_zf_equalize(z, direct); });
    }

    case Scheme::td_ls_fd_ge: {
      ChannelEstimate est;
      if (cfg.genie) {
        est = exact_estimate(h, ctx.iq, n);
      } else {
        Rng pilot_noise = Rng::substream(cfg.seed, {f, kPilotNoise});
        const SpectrumVector z1 = ctx.link.transmit(ctx.pilots.s1, h, noise_var, &ctx.iq, pilot_noise);
        const SpectrumVector z2 = ctx.link.transmit(ctx.pilots.s2, h, noise_var, &ctx.iq, pilot_noise);
        try {
          est = td_ls_estimate(z1, z2, ctx.pilots, cfg.taps());
        } catch (const DomainError&) {
          return all_erased();
        }
      }
      const GeCoefficients coeffs = make_ge_coefficients(est);
      return run_data(&ctx.iq, [&](const SpectrumVector& z) { return ge_equalize(z, coeffs); });
    }

    case Scheme::fd_ls_postfft: {
      Rng training_rng = Rng::substream(cfg.seed, {f, kTraining});
      Rng training_noise = Rng::substream(cfg.seed, {f, kTrainingNoise});
      std::vector<TrainingObservation> obs;
      for (auto& s : fd_ls_training(n, cfg.nt(), 1.0, training_rng)) {
        SpectrumVector z = ctx.link.transmit(s, h, noise_var, &ctx.iq, training_noise);
        obs.push_back({std::move(z), std::move(s)});
      }
      PostFftCoefficients coeffs;
      try {
        coeffs = make_postfft_coefficients(fd_ls_estimate(obs));
      } catch (const DomainError&) {
        return all_erased();
      }
      return run_data(&ctx.iq,
                      [&](const SpectrumVector& z) { return postfft_ls_equalize(z, coeffs); });
    }
  }
  throw ConfigError("unknown scheme");
}

PilotPair make_pilots(const SimConfig& cfg) {
  Rng rng(cfg.pilot_seed);
  return build_pilot_pair(cfg.ofdm.n, rng, cfg.pilots);
}

constexpr std::size_t kEarlyStopBatch = 64;

}  // namespace

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::ideal: return "ideal";
    case Scheme::none: return "none";
    case Scheme::td_ls_fd_ge: return "td_ls_fd_ge";
    case Scheme::fd_ls_postfft: return "fd_ls_postfft";
  }
  return "?";
}

Scheme parse_scheme(const std::string& name) {
  for (Scheme s : {Scheme::ideal, Scheme::none, Scheme::td_ls_fd_ge, Scheme::fd_ls_postfft}) {
    if (to_string(s) == name) return s;
  }
  throw ConfigError("unknown scheme '" + name +
                    "' (expected ideal, none, td_ls_fd_ge or fd_ls_postfft)");
}

void SimConfig::validate() const {
  ofdm.validate();
  if (ofdm.modulation != Modulation::qpsk) throw ConfigError("only QPSK is supported");
  const std::size_t l1 = taps();
  if (l1 > ofdm.n) throw ConfigError("CIR length exceeds N");
  if (l1 > ofdm.cp_len + 1) {
    throw ConfigError("cyclic prefix of " + std::to_string(ofdm.cp_len) +
                      " samples is shorter than the channel memory of " + std::to_string(l1 - 1));
  }
  check_profile_fits(profile, ofdm.sample_period(), l1);
  if (snr_db.empty()) throw ConfigError("SNR grid is empty");
  if (frames == 0) throw ConfigError("frames must be at least 1");
  if (data_symbols == 0) throw ConfigError("data_symbols must be at least 1");
  if (schemes.empty()) throw ConfigError("no scheme selected");
  if (nt() < 2) throw ConfigError("training_symbols must be at least 2 for FD-LS");
  if (!(pilots.symbol_power > 0.0)) throw ConfigError("pilot symbol power must be positive");
  if (!std::isfinite(theta_deg) || !std::isfinite(alpha_db)) {
    throw ConfigError("IQ parameters must be finite");
  }
  if (std::abs(theta_deg) >= 180.0) throw ConfigError("theta_deg must lie in (-180, 180)");
}

std::vector<std::string> SimConfig::warnings() const {
  std::vector<std::string> w;
  auto has = [&](Scheme s) { return std::find(schemes.begin(), schemes.end(), s) != schemes.end(); };
  if (training_symbols && !has(Scheme::fd_ls_postfft)) {
    w.emplace_back("training_symbols only affects the fd_ls_postfft scheme; ignored");
  }
  if (genie && !has(Scheme::td_ls_fd_ge)) {
    w.emplace_back("genie only affects the td_ls_fd_ge scheme; ignored");
  }
  return w;
}

std::vector<std::pair<std::string, std::string>> SimConfig::describe() const {
  std::vector<std::string> names;
  for (Scheme s : schemes) names.push_back(to_string(s));
  std::string scheme_list;
  for (std::size_t i = 0; i < names.size(); ++i) scheme_list += (i ? "," : "") + names[i];
  std::vector<double> delays_us;
  std::vector<double> powers_db;
  for (double d : profile.delays()) delays_us.push_back(d * 1e6);
  for (double p : profile.powers()) powers_db.push_back(10.0 * std::log10(p));
  auto b = [](bool v) { return std::string(v ? "true" : "false"); };
  return {
      {"n", std::to_string(ofdm.n)},
      {"cp", std::to_string(ofdm.cp_len)},
      {"cir_length", std::to_string(taps())},
      {"bandwidth_hz", fmt(ofdm.bandwidth_hz)},
      {"modulation", "qpsk"},
      {"theta_deg", fmt(theta_deg)},
      {"alpha_db", fmt(alpha_db)},
      {"snr_db", join(snr_db)},
      {"frames", std::to_string(frames)},
      {"data_symbols", std::to_string(data_symbols)},
      {"scheme", scheme_list},
      {"training_symbols", std::to_string(nt())},
      {"seed", std::to_string(seed)},
      {"pilot_seed", std::to_string(pilot_seed)},
      {"eta", pilots.eta == EtaConvention::unit_power_tone ? "sqrt" : "literal"},
      {"pilot_power", pilots.power == PilotPowerConvention::n_minus_1 ? "n_minus_1" : "half"},
      {"genie", b(genie)},
      {"null_dc", b(null_dc)},
      {"early_stop", b(early_stop)},
      {"min_errors", std::to_string(min_errors)},
      {"min_bits", std::to_string(min_bits)},
      {"profile_delays_us", join(delays_us, "%.12g")},
      {"profile_powers_db", join(powers_db, "%.12g")},
      {"trials", std::to_string(trials)},
  };
}

SimConfig apply_key_values(const KeyValues& kv, SimConfig cfg) {
  auto count = [](const std::string& key, const std::string& v) {
    const long long x = parse_integer(key, v);
    if (x < 0) throw ConfigError("'" + key + "' must be nonnegative");
    return static_cast<std::size_t>(x);
  };
  std::optional<std::vector<double>> delays;
  std::optional<std::vector<double>> powers;
  for (const auto& [key, value] : kv) {
    if (key == "n") cfg.ofdm.n = count(key, value);
    else if (key == "cp") cfg.ofdm.cp_len = count(key, value);
    else if (key == "cir_length") cfg.cir_length = count(key, value);
    else if (key == "bandwidth_hz") cfg.ofdm.bandwidth_hz = parse_double(key, value);
    else if (key == "modulation") {
      if (value != "qpsk") throw ConfigError("modulation '" + value + "' is not supported");
    } else if (key == "theta_deg") cfg.theta_deg = parse_double(key, value);
    else if (key == "alpha_db") cfg.alpha_db = parse_double(key, value);
    else if (key == "snr_db") cfg.snr_db = parse_grid(value);
    else if (key == "frames") cfg.frames = count(key, value);
    else if (key == "data_symbols") cfg.data_symbols = count(key, value);
    else if (key == "scheme") {
      cfg.schemes.clear();
      for (const auto& s : split_list(value)) cfg.schemes.push_back(parse_scheme(s));
    } else if (key == "training_symbols") cfg.training_symbols = count(key, value);
    else if (key == "seed") cfg.seed = count(key, value);
    else if (key == "pilot_seed") cfg.pilot_seed = count(key, value);
    else if (key == "eta") {
      if (value == "sqrt") cfg.pilots.eta = EtaConvention::unit_power_tone;
      else if (value == "literal") cfg.pilots.eta = EtaConvention::literal;
      else throw ConfigError("eta must be 'sqrt' or 'literal'");
    } else if (key == "pilot_power") {
      if (value == "n_minus_1") cfg.pilots.power = PilotPowerConvention::n_minus_1;
      else if (value == "half") cfg.pilots.power = PilotPowerConvention::half;
      else throw ConfigError("pilot_power must be 'n_minus_1' or 'half'");
    } else if (key == "genie") cfg.genie = parse_bool(key, value);
    else if (key == "null_dc") cfg.null_dc = parse_bool(key, value);
    else if (key == "early_stop") cfg.early_stop = parse_bool(key, value);
    else if (key == "min_errors") cfg.min_errors = count(key, value);
    else if (key == "min_bits") cfg.min_bits = count(key, value);
    else if (key == "profile_delays_us") delays = parse_grid(value);
    else if (key == "profile_powers_db") powers = parse_grid(value);
    else if (key == "trials") cfg.trials = count(key, value);
    else if (key == "jobs") cfg.jobs = static_cast<unsigned>(count(key, value));
    else throw ConfigError("unknown configuration key '" + key + "'");
  }
  if (delays || powers) {
    if (!delays || !powers) {
      throw ConfigError("profile_delays_us and profile_powers_db must be given together");
    }
    cfg.profile = PowerDelayProfile::from_us_db(*delays, *powers);
  }
  return cfg;
}

std::vector<BerRecord> run_ber_sweep(const SimConfig& cfg, const ProgressFn& progress) {
  cfg.validate();
  const PilotPair pilots = make_pilots(cfg);
  const SweepContext ctx{cfg, pilots, cfg.iq(), Link(cfg.ofdm)};
  const unsigned jobs = resolve_jobs(cfg.jobs);

  std::vector<BerRecord> records;
  for (Scheme scheme : cfg.schemes) {
    for (double snr : cfg.snr_db) {
      const auto start = std::chrono::steady_clock::now();
      const double nv = noise_variance_for(snr);
      const std::size_t batch = cfg.early_stop ? kEarlyStopBatch : cfg.frames;
      Tally total;
      std::size_t done = 0;
      bool stopped = false;
      while (done < cfg.frames) {
        const std::size_t count = std::min(batch, cfg.frames - done);
        std::vector<Tally> tallies(count);
        parallel_for(count, jobs, [&](std::size_t i) {
          tallies[i] = simulate_frame(ctx, scheme, nv, done + i);
        });
        for (const auto& t : tallies) total += t;
        done += count;
        if (cfg.early_stop && done < cfg.frames && total.errors >= cfg.min_errors &&
            total.bits >= cfg.min_bits) {
          stopped = true;
          break;
        }
      }
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      BerRecord r{scheme,
                  snr,
                  cfg.theta_deg,
                  cfg.alpha_db,
                  cfg.ofdm.n,
                  cfg.ofdm.cp_len,
                  done,
                  total.bits,
                  total.errors,
                  static_cast<double>(total.errors) / static_cast<double>(total.bits),
                  total.erasures,
                  cfg.seed,
                  stopped,
                  secs};
      if (progress) progress(r);
      records.push_back(r);
    }
  }
  return records;
}

std::vector<MseRecord> run_mse_check(const SimConfig& cfg, std::size_t trials) {
  cfg.validate();
  if (trials == 0) throw ConfigError("trials must be at least 1");
  const std::size_t n = cfg.ofdm.n;
  const PilotPair pilots = make_pilots(cfg);
  const IqParams iq = cfg.iq();
  const Link link(cfg.ofdm);
  const unsigned jobs = resolve_jobs(cfg.jobs);

  const SpectrumVector tmpl = direct_template(pilots);
  double template_power = 0.0;
  for (const auto& v : tmpl) template_power += std::norm(v);
  template_power /= static_cast<double>(n);

  // FD-LS training carries the same total energy as the pilot pair.
  const double pair_energy = std::pow(norm2(pilots.s1), 2) + std::pow(norm2(pilots.s2), 2);
  const std::size_t nt = cfg.nt();
  const double training_amp =
      std::sqrt(pair_energy / (static_cast<double>(n) * static_cast<double>(nt)));
  const double gain_scale = static_cast<double>(n);  // |sqrt(N) x|^2

  std::vector<MseRecord> out;
  for (double snr : cfg.snr_db) {
    const double gamma = std::pow(10.0, snr / 10.0);
    const double nv = template_power / gamma;
    struct Sums {
      double mu = 0.0;
      double nu = 0.0;
      double fd = 0.0;
    };
    std::vector<Sums> sums(trials);
    parallel_for(trials, jobs, [&](std::size_t t) {
      const std::uint64_t key = t;
      Rng channel_rng = Rng::substream(cfg.seed, {key, kChannel});
      const Cir h = draw_cir(cfg.profile, cfg.ofdm.sample_period(), cfg.taps(), channel_rng);
      const SpectrumVector H = frequency_response(h, n);

      Rng pilot_noise = Rng::substream(cfg.seed, {key, kPilotNoise});
      const SpectrumVector z1 = link.transmit(pilots.s1, h, nv, &iq, pilot_noise, true);
      const SpectrumVector z2 = link.transmit(pilots.s2, h, nv, &iq, pilot_noise, true);
      const ChannelEstimate est = td_ls_estimate(z1, z2, pilots, cfg.taps());

      Rng training_rng = Rng::substream(cfg.seed, {key, kTraining});
      Rng training_noise = Rng::substream(cfg.seed, {key, kTrainingNoise});
      std::vector<TrainingObservation> obs;
      for (auto& s : fd_ls_training(n, nt, training_amp, training_rng)) {
        SpectrumVector z = link.transmit(s, h, nv, &iq, training_noise, true);
        obs.push_back({std::move(z), std::move(s)});
      }
      const FdEstimate fd = fd_ls_estimate(obs);

      Sums s;
      for (std::size_t k = 0; k < n; ++k) {
        const cplx mu_true = iq.mu() * H[k];
        const cplx nu_true = std::conj(iq.nu()) * H[k];
        s.mu += gain_scale * std::norm(est.mu_H[k] - mu_true);
        s.nu += gain_scale * std::norm(est.nu_star_H[k] - nu_true);
        s.fd += gain_scale * std::norm(fd.a[k] - mu_true);
      }
      sums[t] = s;
    });
    Sums total;
    for (const auto& s : sums) {
      total.mu += s.mu;
      total.nu += s.nu;
      total.fd += s.fd;
    }
    const double denom = static_cast<double>(trials) * static_cast<double>(n);
    MseRecord r;
    r.snr_db = snr;
    r.trials = trials;
    r.noise_variance = nv;
    r.mse_mu = total.mu / denom;
    r.mse_nu = total.nu / denom;
    r.predicted = predict_mse(n, cfg.taps(), gamma, tmpl.span());
    r.fd_ls_mse = total.fd / denom;
    r.fd_ratio = r.fd_ls_mse / r.mse_mu;
    r.training_symbols = nt;
    out.push_back(r);
  }
  return out;
}

SnrLossMeasurement measure_snr_loss(const SimConfig& cfg, double snr_db,
                                    std::size_t ofdm_symbols) {
  cfg.validate();
  if (ofdm_symbols == 0) throw ConfigError("need at least one symbol");
  const std::size_t n = cfg.ofdm.n;
  const IqParams iq = cfg.iq();
  const Link link(cfg.ofdm);
  const double nv = noise_variance_for(snr_db);
  const unsigned jobs = resolve_jobs(cfg.jobs);

  std::vector<std::pair<double, double>> partial(ofdm_symbols);
  parallel_for(ofdm_symbols, jobs, [&](std::size_t i) {
    const std::uint64_t key = i;
    Rng channel_rng = Rng::substream(cfg.seed, {key, kChannel});
    const Cir h = draw_cir(cfg.profile, cfg.ofdm.sample_period(), cfg.taps(), channel_rng);
    const SpectrumVector H = frequency_response(h, n);
    Rng data_rng = Rng::substream(cfg.seed, {key, kData});
    std::vector<std::uint8_t> bits(2 * n);
    for (auto& b : bits) b = static_cast<std::uint8_t>(data_rng.bit());
    const SpectrumVector s = qpsk_map(bits);

    // Same noise realization through both receivers, added at the IQ mixer output.
    Rng noise_a = Rng::substream(cfg.seed, {key, kDataNoise});
    Rng noise_b = Rng::substream(cfg.seed, {key, kDataNoise});
    const SpectrumVector z_iq = link.transmit(s, h, nv, &iq, noise_a, true);
    const SpectrumVector z_clean = link.transmit(s, h, nv, nullptr, noise_b, true);

    const ChannelEstimate est = exact_estimate(h, iq, n);
    const Equalized ge = ge_equalize(z_iq, est);
    const Equalized zf = ideal_zf_equalize(z_clean, H);
    double e_ge = 0.0;
    double e_zf = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (ge.erased[k] || zf.erased[k]) continue;
      const double g2 = static_cast<double>(n) * std::norm(H[k]);
      e_ge += g2 * std::norm(ge.symbols[k] - s[k]);
      e_zf += g2 * std::norm(zf.symbols[k] - s[k]);
    }
    partial[i] = {e_ge, e_zf};
  });
  double ge = 0.0;
  double zf = 0.0;
  for (const auto& [a, b] : partial) {
    ge += a;
    zf += b;
  }
  return {snr_loss_ge(iq, iq.kappa()), 10.0 * std::log10(ge / zf),
          static_cast<std::uint64_t>(ofdm_symbols) * n};
}

std::vector<LossCell> run_snr_loss_surface(const std::vector<double>& theta_deg,
                                           const std::vector<double>& alpha_db) {
  std::vector<LossCell> cells;
  cells.reserve(theta_deg.size() * alpha_db.size());
  for (double t : theta_deg) {
    for (double a : alpha_db) {
      LossCell c{t, a, std::nullopt};
      try {
        const IqParams p = IqParams::from_degrees_db(t, a);
        c.loss_db = snr_loss_ge(p, p.kappa());
      } catch (const DomainError&) {
      }
      cells.push_back(c);
    }
  }
  return cells;
}

namespace {

void write_provenance(std::ostream& out, const Provenance& provenance) {
  for (const auto& [k, v] : provenance) out << "# " << k << " = " << v << '\n';
}

}  // namespace

void write_ber_csv(std::ostream& out, const std::vector<BerRecord>& records,
                   const Provenance& provenance) {
  write_provenance(out, provenance);
  out << "scheme,snr_db,theta_deg,alpha_db,n,cp,frames,bits,errors,ber,erasures,seed\n";
  for (const auto& r : records) {
    out << to_string(r.scheme) << ',' << fmt(r.snr_db) << ',' << fmt(r.theta_deg) << ','
        << fmt(r.alpha_db) << ',' << r.n << ',' << r.cp << ',' << r.frames << ',' << r.bits << ','
        << r.errors << ',' << fmt(r.ber, "%.12g") << ',' << r.erasures << ',' << r.seed << '\n';
  }
}

void write_mse_csv(std::ostream& out, const std::vector<MseRecord>& records,
                   const Provenance& provenance) {
  write_provenance(out, provenance);
  out << "snr_db,trials,noise_variance,mse_mu,mse_nu,predicted,fd_ls_mse,fd_ratio,"
         "training_symbols\n";
  for (const auto& r : records) {
    out << fmt(r.snr_db) << ',' << r.trials << ',' << fmt(r.noise_variance, "%.12g") << ','
        << fmt(r.mse_mu, "%.12g") << ',' << fmt(r.mse_nu, "%.12g") << ','
        << fmt(r.predicted, "%.12g") << ',' << fmt(r.fd_ls_mse, "%.12g") << ','
        << fmt(r.fd_ratio, "%.12g") << ',' << r.training_symbols << '\n';
  }
}

void write_loss_csv(std::ostream& out, const std::vector<LossCell>& cells,
                    const Provenance& provenance) {
  write_provenance(out, provenance);
  out << "theta_deg,alpha_db,loss_db\n";
  for (const auto& c : cells) {
    out << fmt(c.theta_deg) << ',' << fmt(c.alpha_db) << ',';
    if (c.loss_db) out << fmt(*c.loss_db, "%.12g");
    out << '\n';
  }
}

}  // namespace iqofdm
