#include "doctest.h"
#include "iqofdm/error.hpp"
#include "iqofdm/iq.hpp"
#include "iqofdm/pilots.hpp"

using namespace iqofdm;

TEST_CASE("pilot layout at N = 8") {
  Rng rng(2011);
  const PilotPair pp = build_pilot_pair(8, rng);
  const cplx j{0.0, 1.0};
  REQUIRE(pp.sp.size() == 3);
  CHECK(pp.eta == doctest::Approx(std::sqrt(2.0)));
  for (std::size_t k : {5U, 6U, 7U}) CHECK(pp.s1[k] == cplx{});
  for (std::size_t k : {1U, 2U, 3U}) CHECK(pp.s2[k] == cplx{});
  CHECK(pp.s1[0] == pp.s1[4]);
  CHECK(pp.s2[0] == j * pp.s1[0]);
  CHECK(pp.s2[4] == j * pp.s1[4]);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(pp.s1[1 + i] == pp.sp[i]);
    CHECK(pp.s2[5 + i] == pp.sp[i]);
  }
}

TEST_CASE("pilot power conventions") {
  for (std::size_t n : {8U, 64U, 128U}) {
    Rng rng(3);
    const PilotPair a = build_pilot_pair(n, rng);
    double total = 0.0;
    for (const auto& p : a.sp) total += std::norm(p);
    CHECK(total == doctest::Approx(static_cast<double>(n - 1)).epsilon(1e-12));

    Rng rng2(3);
    const PilotPair b = build_pilot_pair(n, rng2, {1.0, EtaConvention::literal, PilotPowerConvention::half});
    total = 0.0;
    for (const auto& p : b.sp) total += std::norm(p);
    CHECK(total == doctest::Approx(static_cast<double>(n / 2 - 1)).epsilon(1e-12));
    CHECK(b.eta == 2.0);
  }
  Rng rng(1);
  CHECK_THROWS_AS((void)build_pilot_pair(4, rng), InvalidSize);
  CHECK_THROWS_AS((void)build_pilot_pair(96, rng), InvalidSize);
}

TEST_CASE("mirrored pilots are the conjugate-reversed inner pilots") {
  Rng rng(9);
  const PilotPair pp = build_pilot_pair(16, rng);
  const auto m = mirrored_pilots(pp);
  REQUIRE(m.size() == 7);
  for (std::size_t i = 0; i < 7; ++i) CHECK(m[i] == std::conj(pp.sp[6 - i]));
}

TEST_CASE("image template equals direct template for a real eta") {
  Rng rng(12);
  const PilotPair pp = build_pilot_pair(32, rng);
  CHECK(max_abs_diff(image_template(pp), direct_template(pp)) < 1e-15);
}

TEST_CASE("images never land on direct pilot bins outside DC and Nyquist") {
  Rng rng(4);
  const std::size_t n = 16;
  const PilotPair pp = build_pilot_pair(n, rng);
  const auto p = IqParams::from_degrees_db(20.0, 4.0);
  const SpectrumVector z1 = distort_freq(pp.s1, p);
  const SpectrumVector z2 = distort_freq(pp.s2, p);
  for (std::size_t k = 1; k < n / 2; ++k) {
    CHECK(std::abs(z1[k] - p.mu() * pp.s1[k]) < 1e-15);
    CHECK(std::abs(z2[n / 2 + k] - p.mu() * pp.s2[n / 2 + k]) < 1e-15);
  }
}
