// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "iqofdm/channel.hpp"
#include "iqofdm/equalization.hpp"
#include "iqofdm/estimation.hpp"
#include "iqofdm/harness.hpp"
#include "iqofdm/iq.hpp"
#include "iqofdm/ofdm.hpp"
#include "iqofdm/pilots.hpp"

using namespace iqofdm;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(const char* id, const char* title, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("%s %s %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(),
              secs);
  std::fflush(stdout);
}

std::string printf_str(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SpectrumVector random_spectrum(std::size_t n, std::mt19937_64& gen) {
  std::normal_distribution<double> nd;
  SpectrumVector x(n);
  for (auto& v : x) v = {nd(gen), nd(gen)};
  return x;
}

Outcome mirror_algebra() {
  std::mt19937_64 gen(1);
  double worst = 0.0;
  bool involution = true;
  int count = 0;
  for (std::size_t n : {8U, 64U, 128U}) {
    for (int i = 0; i < 1000; ++i, ++count) {
      const SpectrumVector X = random_spectrum(n, gen);
      involution = involution && mirror(mirror(X)) == X;
      const TimeVector x(random_spectrum(n, gen).values());
      worst = std::max(worst, max_abs_diff(mirror(dft(x)), dft(conjugate(x))));
    }
  }
  return {involution && worst < 1e-12,
          printf_str("%d vectors, involution %s, max |mirror(Fx) - F conj(x)| = %.2e", count,
                     involution ? "exact" : "broken", worst)};
}

// Full time-domain link: CP, multipath, IQ mixer, CP removal, FFT.
SpectrumVector receive(const SpectrumVector& s, const Cir& h, const IqParams& p,
                       const OfdmConfig& cfg) {
  return strip_cp_and_fft(distort_time(apply_channel(to_time_with_cp(s, cfg), h, cfg.cp_len), p),
                          cfg);
}

Outcome noiseless_compensation() {
  const OfdmConfig cfg{};
  double worst_s = 0.0;
  double worst_k = 0.0;
  Rng pilot_rng(2011);
  const PilotPair pp = build_pilot_pair(cfg.n, pilot_rng);
  Rng rng(7);
  for (auto [t, a] : {std::pair{2.0, 1.0}, {20.0, 4.0}, {30.0, 6.0}}) {
    const IqParams p = IqParams::from_degrees_db(t, a);
    for (int i = 0; i < 100; ++i) {
      const Cir h = draw_cir(PowerDelayProfile::typical_urban(), cfg.sample_period(), 16, rng);
      std::vector<std::uint8_t> bits(2 * cfg.n);
      for (auto& b : bits) b = static_cast<std::uint8_t>(rng.bit());
      const SpectrumVector s = qpsk_map(bits);
      const ChannelEstimate est = td_ls_estimate(receive(pp.s1, h, p, cfg),
                                                 receive(pp.s2, h, p, cfg), pp, 16);
      const Equalized eq = ge_equalize(receive(s, h, p, cfg), est);
      worst_s = std::max(worst_s, max_abs_diff(eq.symbols, s));
      worst_k = std::max(worst_k, std::abs(est.kappa_hat - p.kappa()));
    }
  }
  return {worst_s < 1e-8 && worst_k < 1e-9,
          printf_str("300 draws, max |s_hat - s| = %.2e, max |kappa_hat - kappa| = %.2e", worst_s,
                     worst_k)};
}

std::vector<MseRecord> mse_records;

Outcome mse_law() {
  SimConfig cfg;
  cfg.snr_db = {5.0, 10.0, 15.0};
  cfg.seed = 3;
  mse_records = run_mse_check(cfg, 10000);
  bool ok = true;
  std::string detail;
  for (const auto& r : mse_records) {
    const double em = r.mse_mu / r.predicted - 1.0;
    const double en = r.mse_nu / r.predicted - 1.0;
    ok = ok && std::abs(em) < 0.05 && std::abs(en) < 0.05;
    detail += printf_str("%sgamma %g dB: predicted %.5f, muH %+.1f%%, nu*H %+.1f%%",
                         detail.empty() ? "" : "; ", r.snr_db, r.predicted, 100 * em, 100 * en);
  }
  return {ok && mse_records.size() == 3, detail};
}

Outcome suppression_ratio() {
  for (const auto& r : mse_records) {
    if (r.snr_db == 10.0) {
      return {r.fd_ratio >= 6.4 && r.fd_ratio <= 9.6,
              printf_str("MSE(FD-LS, N_T=%zu) / MSE(TD-LS) = %.3f at 10 dB, target [6.4, 9.6]",
                         r.training_symbols, r.fd_ratio)};
    }
  }
  return {false, "no 10 dB record"};
}

Outcome snr_loss() {
  const double zero = snr_loss_ge(IqParams::from_degrees_db(0.0, 0.0), 0.0);
  SimConfig cfg;
  cfg.seed = 5;
  const auto m = measure_snr_loss(cfg, 20.0, 800);
  const double gap = std::abs(m.measured_db - m.predicted_db);
  return {zero == 0.0 && m.symbols >= 100000 && gap < 0.2,
          printf_str("loss(0, 0 dB) = %g dB; 20 deg / 4 dB: closed form %.4f dB, measured %.4f dB "
                     "over %llu symbols, gap %.4f dB",
                     zero, m.predicted_db, m.measured_db,
                     static_cast<unsigned long long>(m.symbols), gap)};
}

Outcome ber_behaviour() {
  SimConfig floor_cfg;
  floor_cfg.snr_db = {30.0};
  floor_cfg.frames = 600;
  floor_cfg.schemes = {Scheme::none};
  const auto none = run_ber_sweep(floor_cfg);

  SimConfig cfg;
  cfg.snr_db = {0.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0};
  cfg.frames = 600;
  cfg.schemes = {Scheme::ideal, Scheme::td_ls_fd_ge};
  const auto rec = run_ber_sweep(cfg);
  const std::size_t k = cfg.snr_db.size();

  bool ok = none[0].ber > 1e-2;
  double worst = 0.0;
  std::uint64_t min_bits = none[0].bits;
  for (std::size_t i = 0; i < k; ++i) {
    const double ratio = rec[k + i].ber / rec[i].ber;
    worst = std::max(worst, ratio);
    min_bits = std::min({min_bits, rec[i].bits, rec[k + i].bits});
  }
  ok = ok && worst <= 1.3 && min_bits >= 200000;
  return {ok, printf_str("none at 30 dB: BER %.3e; worst TD-LS/GE to ideal BER ratio over 0..12 dB "
                         "= %.3f; min bits per point %llu",
                         none[0].ber, worst, static_cast<unsigned long long>(min_bits))};
}

Outcome determinism() {
  SimConfig cfg;
  cfg.snr_db = {0.0, 10.0, 20.0};
  cfg.frames = 40;
  cfg.schemes = {Scheme::ideal, Scheme::none, Scheme::td_ls_fd_ge, Scheme::fd_ls_postfft};
  auto csv = [&](unsigned jobs) {
    SimConfig c = cfg;
    c.jobs = jobs;
    std::ostringstream out;
    write_ber_csv(out, run_ber_sweep(c), c.describe());
    return out.str();
  };
  const std::string one = csv(1);
  const std::string eight = csv(8);
  return {one == eight, printf_str("%zu-byte CSV with 1 and 8 workers %s", one.size(),
                                   one == eight ? "identical" : "differs")};
}

Outcome complexity() {
  const OfdmConfig cfg{};
  const IqParams p = IqParams::from_degrees_db(20.0, 4.0);
  Rng rng(11);
  Rng pilot_rng(2011);
  const PilotPair pp = build_pilot_pair(cfg.n, pilot_rng);
  const Cir h = draw_cir(PowerDelayProfile::typical_urban(), cfg.sample_period(), 16, rng);
  const GeCoefficients coeffs = make_ge_coefficients(
      td_ls_estimate(receive(pp.s1, h, p, cfg), receive(pp.s2, h, p, cfg), pp, 16));
  const int symbols = 18;
  MultiplyCounter counter;
  for (int i = 0; i < symbols; ++i) {
    std::vector<std::uint8_t> bits(2 * cfg.n);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.bit());
    (void)ge_equalize(receive(qpsk_map(bits), h, p, cfg), coeffs, &counter);
  }
  const double per_symbol = static_cast<double>(counter.complex_multiplies) / symbols;
  return {per_symbol == 2.0 * static_cast<double>(cfg.n),
          printf_str("%.0f complex multiplies per symbol at N = %zu", per_symbol, cfg.n)};
}

}  // namespace

int main() {
  criterion("AC1", "mirror algebra", mirror_algebra);
  criterion("AC2", "noiseless exact compensation", noiseless_compensation);
  criterion("AC3", "estimator MSE law", mse_law);
  criterion("AC4", "noise suppression ratio", suppression_ratio);
  criterion("AC5", "SNR loss bound", snr_loss);
  criterion("AC6", "BER behaviour", ber_behaviour);
  criterion("AC7", "determinism across workers", determinism);
  criterion("AC8", "GE complexity", complexity);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
