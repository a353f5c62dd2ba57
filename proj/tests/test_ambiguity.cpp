#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "core/ambiguity.hpp"
#include "core/rng.hpp"
#include "core/sequences.hpp"
#include "core/waveform.hpp"
#include "test_util.hpp"

using namespace ccdt;

namespace {

ChirpParams params(int n, int two_alpha, int two_beta) {
  ChirpParams p;
  p.n = n;
  p.two_alpha = two_alpha;
  p.two_beta = two_beta;
  return p;
}

// Max |closed(delta, tau) - af_definition(s, delta, tau)| over the full grid.
template <typename F>
double grid_deviation(const cvec& s, F&& closed) {
  const int n = static_cast<int>(s.size());
  double worst = 0.0;
  for (int delta = 0; delta < n; ++delta)
    for (int tau = 0; tau < n; ++tau)
      worst = std::max(worst, std::abs(closed(delta, tau) - af_definition(s, delta, tau)));
  return worst;
}

}  // namespace

TEST_CASE("modular_inverse agrees with the defining congruence") {
  CHECK(modular_inverse(3, 127) == 85);
  CHECK(modular_inverse(1, 7) == 1);
  CHECK(modular_inverse(-4, 127) == imod(-modular_inverse(4, 127), 127));
  for (int64_t a : {2, 5, 9, 100})
    CHECK(imod(a * modular_inverse(a, 127), 127) == 1);
  CHECK_THROWS_AS(modular_inverse(0, 8), std::invalid_argument);
  CHECK_THROWS_AS(modular_inverse(6, 9), std::invalid_argument);
}

TEST_CASE("af_definition is normalized and periodic") {
  const ChirpParams p = params(31, 3, 1);
  const cvec s = ccdt_modulate(p, zadoff_chu(31, 2));
  CHECK(std::abs(af_definition(s, 0, 0) - cplx(1.0, 0.0)) < 1e-12);
  for (const auto& [d, t] : {std::pair{4, 7}, {-3, 12}, {30, -1}}) {
    const cplx base = af_definition(s, d, t);
    CHECK(std::abs(af_definition(s, d + 31, t) - base) < 1e-12);
    CHECK(std::abs(af_definition(s, d, t - 31) - base) < 1e-12);
    CHECK(std::abs(af_definition(s, d - 62, t + 62) - base) < 1e-12);
  }
}

TEST_CASE("af_surface matches pointwise evaluation") {
  const cvec s = ccdt_modulate(params(31, 3, 1), random_mpsk(31, 4, 2));
  const cvec surface = af_surface(s);
  double worst = 0.0;
  for (int d = 0; d < 31; ++d)
    for (int t = 0; t < 31; ++t)
      worst = std::max(worst, std::abs(surface[static_cast<size_t>(d) * 31 + t] -
                                       af_definition(s, d, t)));
  CHECK(worst < 1e-12);
}

TEST_CASE("chirp closed form equals the definition on the full grid") {
  for (const ChirpParams& p : {params(31, 3, 1), params(31, -4, -4), params(31, 4, 2)}) {
    for (const cvec& x : {m_sequence(default_lfsr(5)), zadoff_chu(31, 3),
                          dft_sequence(31, 5), random_mpsk(31, 4, 9)}) {
      const cvec s = ccdt_modulate(p, x);
      CHECK(grid_deviation(s, [&](int64_t d, int64_t t) {
              return af_ccdt_closed_form(p, x, d, t);
            }) < 1e-12);
    }
  }
}

TEST_CASE("chirp closed form spot checks at length 127") {
  const ChirpParams p = params(127, 4, 2);
  const cvec x = random_mpsk(127, 4, 31);
  const cvec s = ccdt_modulate(p, x);
  std::mt19937_64 gen = rng::make(1);
  std::uniform_int_distribution<int64_t> pick(-300, 300);
  for (int i = 0; i < 200; ++i) {
    const int64_t d = pick(gen), t = pick(gen);
    CHECK(std::abs(af_ccdt_closed_form(p, x, d, t) - af_definition(s, d, t)) < 1e-11);
  }
}

TEST_CASE("af_chirp_basis is the single-line closed form") {
  const ChirpParams p = params(31, 3, 1);
  const cvec g = chirp_basis(p);
  int support = 0;
  for (int d = 0; d < 31; ++d) {
    for (int t = 0; t < 31; ++t) {
      const cplx want = af_definition(g, d, t);
      const cplx got = af_chirp_basis(p, d, t);
      CHECK(std::abs(got - want) < 1e-12);
      if (std::abs(got) > 0.0) {
        ++support;
        CHECK(imod(3 * t + d, 31) == 0);           // residue line
        CHECK(std::abs(got) == doctest::Approx(1.0 / 31).epsilon(1e-12));
      }
    }
  }
  CHECK(support == 31);  // exactly one Doppler per delay
}

TEST_CASE("convolution route equals the direct closed form") {
  const ChirpParams p = params(31, -4, -4);
  const cvec x = random_mpsk(31, 8, 4);
  const cvec s = ccdt_modulate(p, x);
  CHECK(grid_deviation(s, [&](int64_t d, int64_t t) {
          return af_convolution(p, x, d, t);
        }) < 1e-12);
}

TEST_CASE("upsampled closed form equals the definition on the dense grid") {
  const ChirpParams p = params(31, 3, 1);
  const cvec x = random_mpsk(31, 4, 6);
  for (int q : {1, 2, 4}) {
    const cvec sq = upsample(Waveform::kCcdt, p, x, q);
    const int grid = 31 * q;
    double worst = 0.0;
    for (int d = 0; d < grid; ++d)
      for (int t = 0; t < grid; ++t)
        worst = std::max(worst,
                         std::abs(af_upsampled(p, x, q, d, t) - af_definition(sq, d, t)));
    CHECK(worst < 1e-11);
  }
}

TEST_CASE("upsampled closed form spot checks at length 127, q=10") {
  const ChirpParams p = params(127, 4, 2);
  const cvec x = zadoff_chu(127, 5);
  const cvec sq = upsample(Waveform::kCcdt, p, x, 10);
  std::mt19937_64 gen = rng::make(3);
  std::uniform_int_distribution<int64_t> pick(0, 1269);
  for (int i = 0; i < 60; ++i) {
    const int64_t d = pick(gen), t = pick(gen);
    CHECK(std::abs(af_upsampled(p, x, 10, d, t) - af_definition(sq, d, t)) < 1e-10);
  }
}

TEST_CASE("fractional-Doppler evaluator reduces to, then extends, the integer grid") {
  const ChirpParams p = params(127, 4, 2);
  const cvec x = random_mpsk(127, 4, 8);
  const cvec s = ccdt_modulate(p, x);

  for (int64_t d : {0, 1, 5, 126})
    for (int64_t t : {0, 7, 100})
      CHECK(std::abs(af_fractional(p, x, static_cast<double>(d), t) -
                     af_ccdt_closed_form(p, x, d, t)) < 1e-11);

  std::mt19937_64 gen = rng::make(4);
  std::uniform_real_distribution<double> doppler(-130.0, 130.0);
  std::uniform_int_distribution<int64_t> delay(-130, 130);
  for (int i = 0; i < 100; ++i) {
    const double d = doppler(gen);
    const int64_t t = delay(gen);
    CHECK(std::abs(af_fractional(p, x, d, t) - af_definition_real(s, d, t)) < 1e-10);
  }
}

TEST_CASE("real-Doppler brute force matches the integer one on integers") {
  const cvec s = ofdm_modulate(random_mpsk(31, 4, 5));
  for (int64_t d : {0, 3, 30})
    for (int64_t t : {0, 11, 30})
      CHECK(std::abs(af_definition_real(s, static_cast<double>(d), t) -
                     af_definition(s, d, t)) < 1e-12);
}

TEST_CASE("ofdm and dft-s-ofdm shortcuts equal the definition") {
  const cvec x = random_mpsk(31, 4, 7);
  const cvec so = ofdm_modulate(x);
  CHECK(grid_deviation(so, [&](int64_t d, int64_t t) { return af_ofdm(x, d, t); }) < 1e-12);
  const cvec sd = dfts_ofdm_modulate(x);
  CHECK(grid_deviation(sd, [&](int64_t d, int64_t t) { return af_dfts_ofdm(x, d, t); }) <
        1e-12);
}

TEST_CASE("chirp waveform with a tone collapses onto the zero-Doppler ridge") {
  const ChirpParams p = params(31, 3, 1);
  const cvec s = ccdt_modulate(p, dft_sequence(31, 4));
  for (int d = 0; d < 31; ++d)
    for (int t = 0; t < 31; ++t) {
      const double level = std::abs(af_definition(s, d, t));
      CHECK(std::abs(level - (d == 0 ? 1.0 : 0.0)) < 1e-10);
    }
}

TEST_CASE("m-sequence chirp surface takes the predicted four levels") {
  const ChirpParams p = params(31, 3, 1);
  const cvec s = ccdt_modulate(p, m_sequence(default_lfsr(5)));
  for (int d = 0; d < 31; ++d)
    for (int t = 0; t < 31; ++t)
      CHECK(std::abs(std::abs(af_definition(s, d, t)) - mseq_af_level(31, 3, d, t)) < 1e-10);
}

TEST_CASE("mseq_af_level classifies the four regions") {
  CHECK(mseq_af_level(127, 4, 0, 0) == 1.0);
  CHECK(mseq_af_level(127, 4, 0, 50) == 1.0 / 127);
  CHECK(mseq_af_level(127, 4, 127, 127) == 1.0);      // periodic wrap
  CHECK(mseq_af_level(127, 4, 123, 1) == 0.0);        // 4*1 + 123 == 127
  CHECK(mseq_af_level(127, 4, 3, 31) == 0.0);         // 4*31 + 3 == 127
  CHECK(mseq_af_level(127, 4, 5, 17) ==
        doctest::Approx(std::sqrt(128.0) / 127).epsilon(1e-12));
}

TEST_CASE("m-sequence chirp Doppler rows carry the predicted energy") {
  const int n = 31;
  const ChirpParams p = params(n, 3, 1);
  const cvec surface = af_surface(ccdt_modulate(p, m_sequence(default_lfsr(5))));
  for (int d = 0; d < n; ++d) {
    double energy = 0.0;
    for (int t = 0; t < n; ++t)
      energy += std::norm(surface[static_cast<size_t>(d) * n + t]);
    const double want = (d == 0) ? 1.0 + (n - 1.0) / (static_cast<double>(n) * n)
                                 : 1.0 - 1.0 / (static_cast<double>(n) * n);
    CHECK(energy == doctest::Approx(want).epsilon(1e-10));
  }
}

TEST_CASE("flat-spectrum waveforms spread unit energy across every Doppler row") {
  const int n = 31;
  const ChirpParams p = params(n, 3, 1);
  const cvec surface = af_surface(ccdt_modulate(p, zadoff_chu(n, 3)));
  for (int d = 0; d < n; ++d) {
    double energy = 0.0;
    for (int t = 0; t < n; ++t)
      energy += std::norm(surface[static_cast<size_t>(d) * n + t]);
    CHECK(energy == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("expected_af_random reports mean, spread, and is deterministic") {
  const ChirpParams p = params(127, 4, 2);

  const RandomAfEstimate origin = expected_af_random(p, 4, 50, 0, 0, 1);
  CHECK(std::abs(origin.mean - cplx(1.0, 0.0)) < 1e-12);
  CHECK(origin.std_error < 1e-12);

  const RandomAfEstimate a = expected_af_random(p, 4, 400, 5, 7, 2);
  const RandomAfEstimate b = expected_af_random(p, 4, 400, 5, 7, 2);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(a.trials == 400);
  // Zero-mean off the axes: a 4-sigma band around the MC estimate covers 0.
  CHECK(std::abs(a.mean) < 4.0 * a.std_error);
  CHECK(a.std_error > 0.0);

  const RandomAfEstimate u = expected_af_random(p, 0, 400, 5, 7, 2);
  CHECK(std::abs(u.mean) < 4.0 * u.std_error);

  const RandomAfEstimate single = expected_af_random(p, 4, 1, 3, 3, 5);
  const cvec x = random_mpsk(127, 4, rng::derive(5, rng::kRoleData, 0));
  CHECK(std::abs(single.mean - af_ccdt_closed_form(p, x, 3, 3)) < 1e-15);

  CHECK_THROWS_AS(expected_af_random(p, 4, 0, 0, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(expected_af_random(p, 1, 10, 0, 0, 1), std::invalid_argument);
}
