#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "iqofdm/config.hpp"
#include "iqofdm/error.hpp"
#include "iqofdm/harness.hpp"

using namespace iqofdm;

namespace {

constexpr int kExitConfigMissing = 2;
constexpr int kExitInvalid = 3;

struct Overrides {
  std::string config;
  std::string output;
  std::map<std::string, std::string> values;  // config key -> flag text
};

// Registers a flag whose value is passed through under a config key.
void pass_through(CLI::App* app, Overrides& ov, const std::string& flag, const std::string& key,
                  const std::string& help) {
  app->add_option_function<std::string>(
      flag, [&ov, key](const std::string& v) { ov.values[key] = v; }, help);
}

void add_common(CLI::App* app, Overrides& ov) {
  app->add_option("--config", ov.config, "key = value configuration file");
  app->add_option("--output,-o", ov.output,
                  "CSV output path ('-' for stdout; default $IQOFDM_OUTPUT_DIR/<subcommand>.csv)");
  pass_through(app, ov, "--seed", "seed", "master seed");
  pass_through(app, ov, "--jobs", "jobs", "worker threads (default: hardware concurrency)");
  pass_through(app, ov, "--theta-deg", "theta_deg", "IQ phase mismatch in degrees");
  pass_through(app, ov, "--alpha-db", "alpha_db", "IQ amplitude mismatch in dB");
}

std::string default_output(const std::string& name) {
  const char* dir = std::getenv("IQOFDM_OUTPUT_DIR");
  const std::filesystem::path base = dir && *dir ? dir : ".";
  return (base / (name + ".csv")).string();
}

SimConfig effective_config(const Overrides& ov, SimConfig base = {}) {
  KeyValues kv;
  if (!ov.config.empty()) kv = load_key_values(ov.config);
  for (const auto& [k, v] : ov.values) kv[k] = v;
  SimConfig cfg = apply_key_values(kv, std::move(base));
  cfg.validate();
  for (const auto& w : cfg.warnings()) std::cerr << "warning: " << w << '\n';
  return cfg;
}

Provenance provenance(const std::string& command, const SimConfig& cfg, const Overrides& ov) {
  Provenance p{{"command", command}};
  if (!ov.config.empty()) p.emplace_back("config", ov.config);
  for (auto& kv : cfg.describe()) p.push_back(std::move(kv));
  const IqParams iq = cfg.iq();
  char buf[160];
  std::snprintf(buf, sizeof buf, "mu=%.12g%+.12gj nu=%.12g%+.12gj epsilon=%.12g", iq.mu().real(),
                iq.mu().imag(), iq.nu().real(), iq.nu().imag(), iq.epsilon());
  p.emplace_back("iq", buf);
  return p;
}

template <class Writer>
void emit(const std::string& path, Writer&& write) {
  if (path == "-") {
    write(std::cout);
    return;
  }
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  std::ofstream out(target);
  if (!out) throw FileError("cannot write " + path);
  write(out);
  std::cerr << "wrote " << path << '\n';
}

void print_ber(const BerRecord& r) {
  std::fprintf(stderr, "%-14s snr=%6.2f dB  bits=%-10llu errors=%-8llu ber=%.4e%s  (%.1f s)\n",
               to_string(r.scheme).c_str(), r.snr_db, static_cast<unsigned long long>(r.bits),
               static_cast<unsigned long long>(r.errors), r.ber,
               r.early_stopped ? " early" : "", r.wall_seconds);
}

int run_ber(const std::string& name, const SimConfig& cfg, const Overrides& ov) {
  const auto records = run_ber_sweep(cfg, print_ber);
  emit(ov.output.empty() ? default_output(name) : ov.output,
       [&](std::ostream& out) { write_ber_csv(out, records, provenance(name, cfg, ov)); });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OFDM link simulator with receiver IQ imbalance"};
  app.require_subcommand(1);
  app.footer(
      "Grids accept start:step:stop (stop included when it lies on the grid), a comma list or a "
      "single value.\nFlags override values from --config.");

  Overrides ov;

  auto* ber = app.add_subcommand("ber-sweep", "BER versus SNR for one or more schemes");
  add_common(ber, ov);
  pass_through(ber, ov, "--snr", "snr_db", "SNR grid in dB");
  pass_through(ber, ov, "--scheme", "scheme", "ideal, none, td_ls_fd_ge, fd_ls_postfft (comma list)");
  pass_through(ber, ov, "--frames", "frames", "frames per SNR point");
  pass_through(ber, ov, "--data-symbols", "data_symbols", "data symbols per frame");
  pass_through(ber, ov, "--training-symbols", "training_symbols", "FD-LS training symbols");
  pass_through(ber, ov, "--genie", "genie", "exact channel and IQ parameters for td_ls_fd_ge");
  pass_through(ber, ov, "--early-stop", "early_stop", "stop a point after min_errors and min_bits");

  auto* mse = app.add_subcommand("mse-check", "TD-LS and FD-LS estimator MSE against the prediction");
  add_common(mse, ov);
  pass_through(mse, ov, "--snr", "snr_db", "pilot SNR grid in dB");
  pass_through(mse, ov, "--trials", "trials", "channel draws per SNR");
  pass_through(mse, ov, "--training-symbols", "training_symbols", "FD-LS training symbols");

  auto* surface = app.add_subcommand("snr-loss-surface", "GE SNR loss over a (theta, alpha) grid");
  std::string theta_grid = "0:1:30";
  std::string alpha_grid = "-6:0.5:6";
  surface->add_option("--theta", theta_grid, "phase mismatch grid in degrees")
      ->capture_default_str();
  surface->add_option("--alpha", alpha_grid, "amplitude mismatch grid in dB")
      ->capture_default_str();
  surface->add_option("--output,-o", ov.output, "CSV output path");

  auto* demo = app.add_subcommand("demo", "N=128, CP=16, QPSK, 20 deg / 4 dB at three SNRs");
  add_common(demo, ov);
  pass_through(demo, ov, "--frames", "frames", "frames per SNR point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code != 0 && !app.got_subcommand(ber) && !app.got_subcommand(mse) &&
        !app.got_subcommand(surface) && !app.got_subcommand(demo)) {
      std::cerr << app.help();
    }
    return code;
  }

  try {
    if (app.got_subcommand(ber)) return run_ber("ber-sweep", effective_config(ov), ov);

    if (app.got_subcommand(demo)) {
      SimConfig base;
      base.snr_db = {0.0, 10.0, 20.0};
      base.frames = 100;
      base.schemes = {Scheme::ideal, Scheme::none, Scheme::td_ls_fd_ge};
      return run_ber("demo", effective_config(ov, base), ov);
    }

    if (app.got_subcommand(mse)) {
      SimConfig base;
      base.snr_db = {5.0, 10.0, 15.0};
      const SimConfig cfg = effective_config(ov, base);
      const auto records = run_mse_check(cfg, cfg.trials);
      for (const auto& r : records) {
        std::fprintf(stderr,
                     "gamma=%5.1f dB  mse(muH)=%.5g mse(nu*H)=%.5g predicted=%.5g  fd-ls=%.5g "
                     "ratio=%.3f\n",
                     r.snr_db, r.mse_mu, r.mse_nu, r.predicted, r.fd_ls_mse, r.fd_ratio);
      }
      emit(ov.output.empty() ? default_output("mse-check") : ov.output, [&](std::ostream& out) {
        write_mse_csv(out, records, provenance("mse-check", cfg, ov));
      });
      return 0;
    }

    const auto theta = parse_grid(theta_grid);
    const auto alpha = parse_grid(alpha_grid);
    const auto cells = run_snr_loss_surface(theta, alpha);
    std::size_t undefined = 0;
    for (const auto& c : cells) undefined += c.loss_db ? 0 : 1;
    std::fprintf(stderr, "%zu cells (%zu theta x %zu alpha), %zu undefined\n", cells.size(),
                 theta.size(), alpha.size(), undefined);
    emit(ov.output.empty() ? default_output("snr-loss-surface") : ov.output,
         [&](std::ostream& out) {
           write_loss_csv(out, cells,
                          {{"command", "snr-loss-surface"}, {"theta", theta_grid}, {"alpha", alpha_grid}});
         });
    return 0;
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfigMissing;
  } catch (const ConfigError& e) {
    std::cerr << "error: invalid configuration: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const DomainError& e) {
    std::cerr << "error: invalid parameter: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const InvalidSize& e) {
    std::cerr << "error: invalid size: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
