#include <random>

#include "doctest.h"
#include "iqofdm/error.hpp"
#include "iqofdm/estimation.hpp"
#include "iqofdm/iq.hpp"
#include "oracles.hpp"

using namespace iqofdm;

namespace {

// Received spectrum: distort(sqrt(N) H s) + noise.
SpectrumVector receive(const SpectrumVector& s, const SpectrumVector& H, const IqParams& p,
                       double sigma2 = 0.0, Rng* rng = nullptr) {
  const double g = std::sqrt(static_cast<double>(s.size()));
  SpectrumVector y(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) y[k] = g * H[k] * s[k];
  SpectrumVector z = distort_freq(y, p);
  if (rng) {
    for (auto& v : z) v += rng->complex_gaussian(sigma2);
  }
  return z;
}

Cir scaled(const Cir& h, cplx c) {
  Cir out = h;
  for (auto& t : out.taps) t *= c;
  return out;
}

}  // namespace

TEST_CASE("za and zb separate direct and image terms") {
  const std::size_t n = 32;
  Rng rng(1);
  const PilotPair pp = build_pilot_pair(n, rng);
  std::mt19937_64 gen(2);
  const Cir h{oracle::random_vector(8, gen, 0.4)};
  const SpectrumVector H = frequency_response(h, n);
  const auto p = IqParams::from_degrees_db(20.0, 4.0);
  const SpectrumVector za = assemble_za(receive(pp.s1, H, p), receive(pp.s2, H, p));
  const SpectrumVector zb = assemble_zb(receive(pp.s1, H, p), receive(pp.s2, H, p));
  const SpectrumVector dt = direct_template(pp);
  const SpectrumVector it = image_template(pp);
  const SpectrumVector nuH = frequency_response(scaled(h, std::conj(p.nu())), n);
  const double g = std::sqrt(static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    CHECK(std::abs(za[k] - g * p.mu() * H[k] * dt[k]) < 1e-12);
    CHECK(std::abs(zb[k] - g * nuH[k] * it[k]) < 1e-12);
  }
}

TEST_CASE("noiseless TD-LS recovers mu h, conj(nu) h and kappa") {
  std::mt19937_64 gen(77);
  for (std::size_t n : {64U, 128U}) {
    for (auto [t, a] : {std::pair{2.0, 1.0}, {20.0, 4.0}, {30.0, 6.0}}) {
      Rng rng(n);
      const PilotPair pp = build_pilot_pair(n, rng);
      const Cir h{oracle::random_vector(16, gen, 0.3)};
      const SpectrumVector H = frequency_response(h, n);
      const auto p = IqParams::from_degrees_db(t, a);
      const ChannelEstimate est =
          td_ls_estimate(receive(pp.s1, H, p), receive(pp.s2, H, p), pp, 16);
      for (std::size_t l = 0; l < 16; ++l) {
        CHECK(std::abs(est.mu_h.taps[l] - p.mu() * h.taps[l]) < 1e-9);
        CHECK(std::abs(est.nu_star_h.taps[l] - std::conj(p.nu()) * h.taps[l]) < 1e-9);
      }
      CHECK(std::abs(est.kappa_hat - p.kappa()) < 1e-9);
      CHECK(std::abs(kappa_from_spectra(est.mu_H, est.nu_star_H) - p.kappa()) < 1e-9);
    }
  }
}

TEST_CASE("kappa is zero without imbalance and singular sums are rejected") {
  Rng rng(3);
  const PilotPair pp = build_pilot_pair(64, rng);
  const SpectrumVector H = frequency_response(Cir{{0.8, cplx{0.1, 0.3}}}, 64);
  const ChannelEstimate est =
      td_ls_estimate(receive(pp.s1, H, IqParams::ideal()), receive(pp.s2, H, IqParams::ideal()), pp, 16);
  CHECK(std::abs(est.kappa_hat) < 1e-12);
  CHECK_THROWS_AS((void)kappa_from_taps(Cir{std::vector<cplx>(4)}, Cir{{1.0}}), DomainError);
}

TEST_CASE("noisy TD-LS is unbiased and matches the predicted MSE") {
  const std::size_t n = 64;
  Rng prng(5);
  const PilotPair pp = build_pilot_pair(n, prng);
  const Cir h{{0.7, cplx{0.2, -0.4}, 0.0, cplx{-0.3, 0.1}}};
  const SpectrumVector H = frequency_response(h, n);
  const auto p = IqParams::from_degrees_db(20.0, 4.0);
  const double gamma = 10.0;
  double tp = 0.0;
  for (const auto& v : direct_template(pp)) tp += std::norm(v);
  const double sigma2 = tp / static_cast<double>(n) / gamma;

  Rng rng(6);
  const int trials = 4000;
  std::vector<cplx> mean(n);
  double err = 0.0;
  for (int i = 0; i < trials; ++i) {
    const auto est = td_ls_estimate(receive(pp.s1, H, p, sigma2, &rng),
                                    receive(pp.s2, H, p, sigma2, &rng), pp, 16);
    for (std::size_t k = 0; k < n; ++k) {
      const cplx e = est.mu_H[k] - p.mu() * H[k];
      mean[k] += e;
      err += std::norm(e) * static_cast<double>(n);
    }
  }
  for (auto& m : mean) CHECK(std::abs(m / double(trials)) * std::sqrt(double(n)) < 0.02);
  const double measured = err / trials / static_cast<double>(n);
  CHECK(measured == doctest::Approx(predict_mse(n, 16, gamma, pp.sp)).epsilon(0.05));
}

TEST_CASE("predict_mse and pilot_beta") {
  const std::vector<cplx> qpsk{{1, 1}, {1, -1}, {-1, 1}};
  CHECK(pilot_beta(qpsk) == doctest::Approx(1.0));
  const std::vector<cplx> uneven{{1, 0}, {2, 0}};
  CHECK(pilot_beta(uneven) == doctest::Approx(2.5 * 0.625));
  CHECK(predict_mse(128, 16, 10.0, qpsk) == doctest::Approx(0.0125));
  CHECK(predict_mse(256, 16, 10.0, qpsk) == doctest::Approx(0.0125 / 2));
}

TEST_CASE("FD-LS fit") {
  const std::size_t n = 32;
  std::mt19937_64 gen(8);
  const SpectrumVector H = frequency_response(Cir{oracle::random_vector(6, gen, 0.4)}, n);
  const auto p = IqParams::from_degrees_db(20.0, 4.0);
  const double g = std::sqrt(static_cast<double>(n));
  const SpectrumVector mH = mirror(H);

  SUBCASE("noiseless training recovers a and b exactly") {
    Rng rng(1);
    std::vector<TrainingObservation> obs;
    for (const auto& s : fd_ls_training(n, 4, 1.0, rng)) obs.push_back({receive(s, H, p), s});
    const FdEstimate fd = fd_ls_estimate(obs);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(std::abs(g * fd.a[k] - g * p.mu() * H[k]) < 1e-10);
      CHECK(std::abs(g * fd.b[k] - g * p.nu() * mH[k]) < 1e-10);
    }
  }

  SUBCASE("a single observation is singular") {
    Rng rng(1);
    const auto s = fd_ls_training(n, 1, 1.0, rng);
    std::vector<TrainingObservation> obs{{receive(s[0], H, p), s[0]}};
    CHECK_THROWS_AS((void)fd_ls_estimate(obs), SingularFit);
  }

  SUBCASE("MSE falls as 1 / N_T") {
    auto mse = [&](std::size_t nt) {
      Rng rng(nt * 31);
      double acc = 0.0;
      const int trials = 1500;
      for (int t = 0; t < trials; ++t) {
        std::vector<TrainingObservation> obs;
        for (const auto& s : fd_ls_training(n, nt, 1.0, rng))
          obs.push_back({receive(s, H, p, 0.1, &rng), s});
        const FdEstimate fd = fd_ls_estimate(obs);
        for (std::size_t k = 0; k < n; ++k) acc += std::norm(g * (fd.a[k] - p.mu() * H[k]));
      }
      return acc / trials / static_cast<double>(n);
    };
    const double m2 = mse(2);
    const double m8 = mse(8);
    CHECK(m2 == doctest::Approx(0.1 / 2).epsilon(0.06));
    CHECK(m2 / m8 == doctest::Approx(4.0).epsilon(0.08));
  }
}
