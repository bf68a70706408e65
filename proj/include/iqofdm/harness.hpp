#pragma once

// Monte-Carlo link simulation: BER sweeps, estimator MSE checks and SNR-loss
// evaluation, with deterministic per-frame random streams.

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "iqofdm/channel.hpp"
#include "iqofdm/config.hpp"
#include "iqofdm/iq.hpp"
#include "iqofdm/ofdm.hpp"
#include "iqofdm/pilots.hpp"

namespace iqofdm {

enum class Scheme {
  ideal,          // no IQ imbalance, exact channel, zero forcing
  none,           // IQ imbalance, exact direct gain mu H, no image cancellation
  td_ls_fd_ge,    // two pilot symbols, TD-LS estimate, GE equalizer
  fd_ls_postfft,  // N_T full-band training symbols, FD-LS estimate, Post-FFT LS equalizer
};

[[nodiscard]] std::string to_string(Scheme s);
[[nodiscard]] Scheme parse_scheme(const std::string& name);

struct SimConfig {
  OfdmConfig ofdm;
  std::size_t cir_length = 0;  // L + 1; 0 means cp_len
  double theta_deg = 20.0;
  double alpha_db = 4.0;
  std::vector<double> snr_db{0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0};
  std::size_t frames = 200;        // per SNR point (upper bound with early stop)
  std::size_t data_symbols = 18;   // N_F
  std::vector<Scheme> schemes{Scheme::td_ls_fd_ge};
  std::optional<std::size_t> training_symbols;  // N_T for fd_ls_postfft, default 2
  std::uint64_t seed = 1;
  std::uint64_t pilot_seed = 2011;
  PilotOptions pilots;
  bool genie = false;    // td_ls_fd_ge uses exact mu H, conj(nu) H, kappa
  bool null_dc = false;  // leave DC and Nyquist empty in data symbols
  bool early_stop = false;
  std::uint64_t min_errors = 200;
  std::uint64_t min_bits = 100000;
  PowerDelayProfile profile = PowerDelayProfile::typical_urban();
  std::size_t trials = 10000;  // mse-check
  unsigned jobs = 0;           // 0: hardware concurrency

  [[nodiscard]] std::size_t taps() const noexcept { return cir_length ? cir_length : ofdm.cp_len; }
  [[nodiscard]] std::size_t nt() const noexcept { return training_symbols.value_or(2); }
  [[nodiscard]] IqParams iq() const { return IqParams::from_degrees_db(theta_deg, alpha_db); }

  // Throws ConfigError (ProfileTooLong for a profile outside the CIR window).
  void validate() const;
  // Non-fatal inconsistencies, e.g. N_T given without the FD-LS scheme.
  [[nodiscard]] std::vector<std::string> warnings() const;
  // Effective configuration as ordered key/value pairs (excludes jobs).
  [[nodiscard]] std::vector<std::pair<std::string, std::string>> describe() const;
};

// Applies recognized keys on top of base; unknown keys raise ConfigError.
SimConfig apply_key_values(const KeyValues& kv, SimConfig base = {});

struct BerRecord {
  Scheme scheme;
  double snr_db;
  double theta_deg;
  double alpha_db;
  std::size_t n;
  std::size_t cp;
  std::size_t frames;
  std::uint64_t bits;
  std::uint64_t errors;
  double ber;
  std::uint64_t erasures;
  std::uint64_t seed;
  bool early_stopped;
  double wall_seconds;
};

using ProgressFn = std::function<void(const BerRecord&)>;

// One record per (scheme, SNR) in scheme-major order.
std::vector<BerRecord> run_ber_sweep(const SimConfig& cfg, const ProgressFn& progress = {});

struct MseRecord {
  double snr_db;
  std::size_t trials;
  double noise_variance;
  double mse_mu;      // per-bin MSE of the mu H gain estimate
  double mse_nu;      // per-bin MSE of the conj(nu) H gain estimate
  double predicted;   // (L + 1) beta / (N gamma)
  double fd_ls_mse;   // FD-LS a(k) per-bin MSE, energy-matched training
  double fd_ratio;    // fd_ls_mse / mse_mu
  std::size_t training_symbols;
};

// MSE of the TD-LS gain estimates against ground truth, one record per SNR.
// Noise enters after the IQ mixer.
// gamma is the SNR of the stacked pilot template: sigma^2 = mean|template|^2 / gamma.
std::vector<MseRecord> run_mse_check(const SimConfig& cfg, std::size_t trials);

struct SnrLossMeasurement {
  double predicted_db;  // snr_loss_ge with the true kappa
  double measured_db;   // ratio of gain-normalized error variances, GE vs ideal ZF
  std::uint64_t symbols;
};

// Genie GE against ideal zero forcing over the same channels and noise. Noise is
// added after the IQ mixer here, so GE cannot remove it with the image.
SnrLossMeasurement measure_snr_loss(const SimConfig& cfg, double snr_db,
                                    std::size_t ofdm_symbols);

struct LossCell {
  double theta_deg;
  double alpha_db;
  std::optional<double> loss_db;
};

std::vector<LossCell> run_snr_loss_surface(const std::vector<double>& theta_deg,
                                           const std::vector<double>& alpha_db);

using Provenance = std::vector<std::pair<std::string, std::string>>;

// Column order: scheme,snr_db,theta_deg,alpha_db,n,cp,frames,bits,errors,ber,erasures,seed
void write_ber_csv(std::ostream& out, const std::vector<BerRecord>& records,
                   const Provenance& provenance = {});
void write_mse_csv(std::ostream& out, const std::vector<MseRecord>& records,
                   const Provenance& provenance = {});
void write_loss_csv(std::ostream& out, const std::vector<LossCell>& cells,
                    const Provenance& provenance = {});

}  // namespace iqofdm
