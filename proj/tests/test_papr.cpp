#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/papr.hpp"
#include "core/sequences.hpp"
#include "core/waveform.hpp"

using namespace ccdt;

namespace {

ChirpParams params(int n, int two_alpha, int two_beta) {
  ChirpParams p;
  p.n = n;
  p.two_alpha = two_alpha;
  p.two_beta = two_beta;
  return p;
}

}  // namespace

TEST_CASE("papr of basic envelopes") {
  CHECK(papr(zadoff_chu(127, 3)).papr_db == doctest::Approx(0.0).epsilon(1e-12));

  cvec impulse(16, cplx(0.0, 0.0));
  impulse[5] = 4.0;
  const PaprResult r = papr(impulse);
  CHECK(r.papr_db == doctest::Approx(10.0 * std::log10(16.0)).epsilon(1e-12));
  CHECK(r.peak_index == 5);
  CHECK(r.mean_power == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(papr(cvec(8, cplx(0.0, 0.0))), std::invalid_argument);
  CHECK_THROWS_AS(papr(cvec{}), std::invalid_argument);
}

TEST_CASE("papr is scale invariant") {
  cvec s = random_mpsk(64, 4, 3);
  s[10] *= 2.0;  // force a nontrivial peak
  const double base = papr(s).papr_db;
  for (cplx& v : s) v *= 7.5;
  CHECK(papr(s).papr_db == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("matched Zadoff-Chu root concentrates the chirp waveform") {
  // alpha = 2, beta = 1: root u = 4 collapses to a single sample, every
  // other coprime root keeps the envelope flat.
  const ChirpParams p = params(127, 4, 2);

  const PaprResult matched = papr(ccdt_modulate(p, zadoff_chu(127, 4)));
  CHECK(std::abs(matched.papr_db - 10.0 * std::log10(127.0)) < 1e-9);
  CHECK(matched.peak_index == 31);

  for (int u : {1, 3, 5, 100, 126})
    CHECK(std::abs(papr(ccdt_modulate(p, zadoff_chu(127, u))).papr_db) < 1e-9);
}

TEST_CASE("every tone keeps the chirp waveform flat") {
  const ChirpParams p = params(127, 4, 2);
  for (int k : {0, 1, 5, 77, 126})
    CHECK(std::abs(papr(ccdt_modulate(p, dft_sequence(127, k))).papr_db) < 1e-9);
}

TEST_CASE("ofdm maps tones to time impulses and Zadoff-Chu to flat envelopes") {
  const ChirpParams p = params(127, 4, 2);
  // A single occupied subcarrier is a Fourier basis vector: the transmit
  // signal is an impulse, the worst case 10*log10(n).
  const PaprResult tone = papr(modulate(Waveform::kOfdm, p, dft_sequence(127, 9)));
  CHECK(tone.papr_db == doctest::Approx(10.0 * std::log10(127.0)).epsilon(1e-9));
  CHECK(tone.peak_index == 118);  // idft lands the spike at n - k
  CHECK(papr(modulate(Waveform::kOfdm, p, cvec(127, cplx(1.0, 0.0)))).papr_db ==
        doctest::Approx(10.0 * std::log10(127.0)).epsilon(1e-9));
  // Zadoff-Chu keeps a flat envelope through the idft.
  CHECK(std::abs(papr(modulate(Waveform::kOfdm, p, zadoff_chu(127, 3))).papr_db) < 1e-9);
}

TEST_CASE("papr_upsampled reduces to papr at q=1 and never loses peak") {
  const ChirpParams p = params(127, 4, 2);
  const cvec x = random_mpsk(127, 4, 6);
  for (Waveform kind : {Waveform::kCcdt, Waveform::kOfdm, Waveform::kDftsOfdm}) {
    const double at_rate = papr(modulate(kind, p, x)).papr_db;
    CHECK(papr_upsampled(kind, p, x, 1).papr_db == doctest::Approx(at_rate).epsilon(1e-12));
    CHECK(papr_upsampled(kind, p, x, 4).papr_db >= at_rate - 1e-9);
  }
}

TEST_CASE("dft-s-ofdm and ofdm share the Zadoff-Chu PAPR distribution") {
  const ChirpParams p = params(31, 3, 1);
  const auto dfts = papr_sweep(Waveform::kDftsOfdm, p, SweepFamily::kZadoffChu, 4);
  const auto ofdm = papr_sweep(Waveform::kOfdm, p, SweepFamily::kZadoffChu, 4);
  REQUIRE(dfts.size() == ofdm.size());
  for (size_t i = 0; i < dfts.size(); ++i)
    CHECK(std::abs(dfts[i].papr_db - ofdm[i].papr_db) < 1e-9);
}

TEST_CASE("papr_sweep is sorted and covers the family") {
  const ChirpParams p = params(127, 4, 2);

  const auto zc = papr_sweep(Waveform::kCcdt, p, SweepFamily::kZadoffChu, 1);
  REQUIRE(zc.size() == 126);
  for (size_t i = 1; i < zc.size(); ++i) CHECK(zc[i].papr_db >= zc[i - 1].papr_db);
  // All flat except the matched root, which lands at the top of the sort.
  for (size_t i = 0; i + 1 < zc.size(); ++i) CHECK(std::abs(zc[i].papr_db) < 1e-9);
  CHECK(zc.back().root == 4);
  CHECK(std::abs(zc.back().papr_db - 10.0 * std::log10(127.0)) < 1e-9);

  const auto dft = papr_sweep(Waveform::kCcdt, p, SweepFamily::kDft, 1);
  REQUIRE(dft.size() == 127);
  for (const PaprSweepEntry& e : dft) CHECK(std::abs(e.papr_db) < 1e-9);

  bool seen[127] = {};
  for (const PaprSweepEntry& e : dft) {
    REQUIRE((e.root >= 0 && e.root < 127));
    seen[e.root] = true;
  }
  for (bool s : seen) CHECK(s);
}
