#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/channel.hpp"
#include "core/rng.hpp"
#include "core/sequences.hpp"
#include "core/waveform.hpp"
#include "test_util.hpp"

using namespace ccdt;
using test::max_abs_diff;

TEST_CASE("vehicular_a profile at the default sample rate") {
  const TapProfile profile = vehicular_a(127.0 * 15e3);
  REQUIRE(profile.delays.size() == 5);
  const int want_delays[5] = {0, 1, 2, 3, 5};
  const double want_powers[5] = {0.4850, 0.4463, 0.0485, 0.0153, 0.0049};
  double sum = 0.0;
  for (int l = 0; l < 5; ++l) {
    CHECK(profile.delays[static_cast<size_t>(l)] == want_delays[l]);
    CHECK(profile.powers[static_cast<size_t>(l)] ==
          doctest::Approx(want_powers[l]).epsilon(1e-12));
    sum += profile.powers[static_cast<size_t>(l)];
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(vehicular_a(0.0), std::invalid_argument);
}

TEST_CASE("doppler conversion hits the 500 km/h reference point") {
  const double per_sample = doppler_cycles_per_sample(500.0, 6e9, 127.0 * 15e3);
  // In subcarrier spacings: multiply by the symbol length.
  CHECK(per_sample * 127.0 == doctest::Approx(0.1853).epsilon(1e-3));
  CHECK(doppler_cycles_per_sample(0.0, 6e9, 1.905e6) == 0.0);
}

TEST_CASE("clarke_fading is unit power on average and time-constant at f_D=0") {
  std::mt19937_64 gen = rng::make(77);
  double acc = 0.0;
  const int realizations = 3000;
  for (int i = 0; i < realizations; ++i) {
    const cvec h = clarke_fading(0.01, 5, 8, gen);
    for (const cplx& v : h) acc += std::norm(v);
  }
  acc /= realizations * 8.0;
  CHECK(std::abs(acc - 1.0) < 0.03);

  std::mt19937_64 gen2 = rng::make(5);
  const cvec still = clarke_fading(0.0, 5, 64, gen2);
  for (const cplx& v : still) CHECK(std::abs(v - still[0]) < 1e-12);
}

TEST_CASE("clarke_fading autocorrelation tracks the isotropic model") {
  // E[h(t) h*(t+k)] = J0(2*pi*fD*k); spot-check a few lags with a fixed
  // seed and a wide Monte-Carlo tolerance.
  const double fd = 0.02;
  const int lags[3] = {5, 13, 29};
  cplx acc[3] = {};
  std::mt19937_64 gen = rng::make(123);
  const int realizations = 6000;
  for (int i = 0; i < realizations; ++i) {
    const cvec h = clarke_fading(fd, 5, 30, gen);
    for (int j = 0; j < 3; ++j)
      acc[j] += h[0] * std::conj(h[static_cast<size_t>(lags[j] % 30)]);
  }
  for (int j = 0; j < 3; ++j) {
    const double want = std::cyl_bessel_j(0, kTwoPi * fd * lags[j]);
    CHECK(std::abs(acc[j] / static_cast<double>(realizations) - cplx(want, 0.0)) < 0.05);
  }
}

TEST_CASE("apply_multipath reduces to a delay-weighted cyclic sum") {
  const int n = 31, n_cp = 6;
  const cvec s = random_mpsk(n, 4, 9);
  const cvec s_cp = add_cp(s, n_cp);

  TapProfile one_tap;
  one_tap.delays = {0};
  one_tap.powers = {1.0};
  const std::vector<cvec> flat(1, cvec(static_cast<size_t>(n + n_cp), cplx(1.0, 0.0)));
  CHECK(max_abs_diff(apply_multipath(s_cp, n_cp, one_tap, flat), s) < 1e-15);

  TapProfile taps;
  taps.delays = {0, 2, 5};
  taps.powers = {0.5, 0.3, 0.2};
  std::vector<cvec> gains;
  const cplx h[3] = {{0.4, -0.9}, {1.1, 0.2}, {-0.3, 0.6}};
  for (int l = 0; l < 3; ++l) gains.emplace_back(static_cast<size_t>(n + n_cp), h[l]);

  const cvec r = apply_multipath(s_cp, n_cp, taps, gains);
  for (int t = 0; t < n; ++t) {
    cplx want = 0.0;
    for (int l = 0; l < 3; ++l)
      want += std::sqrt(taps.powers[static_cast<size_t>(l)]) * h[l] *
              s[static_cast<size_t>(imod(t - taps.delays[static_cast<size_t>(l)], n))];
    CHECK(std::abs(r[static_cast<size_t>(t)] - want) < 1e-12);
  }

  TapProfile too_long;
  too_long.delays = {n_cp + 1};
  too_long.powers = {1.0};
  const std::vector<cvec> g1(1, cvec(static_cast<size_t>(n + n_cp), cplx(1.0, 0.0)));
  CHECK_THROWS_AS(apply_multipath(s_cp, n_cp, too_long, g1), std::invalid_argument);
  CHECK_THROWS_AS(apply_multipath(s_cp, n_cp, taps, g1), std::invalid_argument);
}

TEST_CASE("apply_freq_offset is a multiplicative ramp") {
  const cvec r = random_mpsk(31, 4, 4);
  CHECK(max_abs_diff(apply_freq_offset(r, 0.0), r) == 0.0);

  const cvec once = apply_freq_offset(r, 0.3);
  const cvec twice = apply_freq_offset(apply_freq_offset(r, 0.2), 0.1);
  CHECK(max_abs_diff(once, twice) < 1e-12);

  for (int t = 0; t < 31; ++t)
    CHECK(std::abs(once[static_cast<size_t>(t)] -
                   r[static_cast<size_t>(t)] * std::polar(1.0, kTwoPi * 0.3 * t / 31.0)) <
          1e-13);
}

TEST_CASE("add_awgn calibrates to the requested variance") {
  cvec r(100000, cplx(0.0, 0.0));
  std::mt19937_64 gen = rng::make(11);
  add_awgn(r, 0.5, gen);
  CHECK(std::abs(mean_power(r) - 0.5) < 0.01);

  cvec clean = random_mpsk(16, 4, 1);
  const cvec before = clean;
  add_awgn(clean, 0.0, gen);
  CHECK(max_abs_diff(clean, before) == 0.0);
  CHECK_THROWS_AS(add_awgn(clean, -1.0, gen), std::invalid_argument);
}

TEST_CASE("noise_variance converts SNR in dB") {
  CHECK(noise_variance(0.0) == doctest::Approx(1.0));
  CHECK(noise_variance(10.0) == doctest::Approx(0.1));
  CHECK(noise_variance(-10.0) == doctest::Approx(10.0));
}

TEST_CASE("radar_channel superimposes delayed Doppler-shifted echoes") {
  const int n = 31;
  const cvec s = random_mpsk(n, 4, 8);

  RadarTarget tgt;
  tgt.delay = 3;
  tgt.doppler = 0.5;
  tgt.phase = 0.7;
  tgt.power = 2.0;
  const cvec r = radar_channel(s, {tgt});
  for (int t = 0; t < n; ++t) {
    const cplx want = std::sqrt(2.0) * std::polar(1.0, 0.7 + kTwoPi * 0.5 * t / n) *
                      s[static_cast<size_t>(imod(t - 3, n))];
    CHECK(std::abs(r[static_cast<size_t>(t)] - want) < 1e-13);
  }

  RadarTarget other;
  other.delay = 9;
  other.doppler = -0.25;
  other.phase = -1.2;
  other.power = 0.5;
  const cvec both = radar_channel(s, {tgt, other});
  const cvec sum_parts = radar_channel(s, {other});
  for (int t = 0; t < n; ++t)
    CHECK(std::abs(both[static_cast<size_t>(t)] - r[static_cast<size_t>(t)] -
                   sum_parts[static_cast<size_t>(t)]) < 1e-13);
}

TEST_CASE("radar unit conversions match the link geometry") {
  CHECK(velocity_from_doppler(1.0, 15e3, 6e9) == doctest::Approx(374.74).epsilon(1e-3));
  CHECK(distance_from_delay(1.0, 127, 15e3) == doctest::Approx(78.68).epsilon(1e-3));
  LinkParams link;
  CHECK(link.sample_rate_hz() == doctest::Approx(1.905e6));
}
