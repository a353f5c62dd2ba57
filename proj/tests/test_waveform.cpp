#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/sequences.hpp"
#include "core/transforms.hpp"
#include "core/waveform.hpp"
#include "test_util.hpp"

using namespace ccdt;
using test::max_abs_diff;

namespace {

ChirpParams params(int n, int two_alpha, int two_beta, double gamma = 0.0) {
  ChirpParams p;
  p.n = n;
  p.two_alpha = two_alpha;
  p.two_beta = two_beta;
  p.gamma = gamma;
  return p;
}

}  // namespace

TEST_CASE("chirp_basis matches its defining phase polynomial") {
  // n = 5, alpha = 2, beta = 2 (stored doubled).
  const ChirpParams p = params(5, 4, 4);
  const cvec g = chirp_basis(p);
  REQUIRE(g.size() == 5);
  for (int k = 0; k < 5; ++k) {
    const cplx want =
        std::polar(1.0 / std::sqrt(5.0), -kTwoPi / 5.0 * (2.0 * k * k + 2.0 * k));
    CHECK(std::abs(g[static_cast<size_t>(k)] - want) < 1e-14);
  }
}

TEST_CASE("chirp_basis gamma applies a pure global phase") {
  const cvec g0 = chirp_basis(params(7, 3, 1));
  cvec g1 = chirp_basis(params(7, 3, 1, 0.25));
  const cplx rot = std::polar(1.0, kTwoPi / 7.0 * 0.25);
  for (cplx& v : g1) v *= rot;
  CHECK(max_abs_diff(g0, g1) < 1e-14);
}

TEST_CASE("chirp_basis has unit norm and a CAZAC envelope") {
  const cvec g = chirp_basis(params(127, 4, 2));
  double energy = 0.0;
  for (const cplx& v : g) energy += std::norm(v);
  CHECK(energy == doctest::Approx(1.0).epsilon(1e-12));

  cvec scaled = g;
  for (cplx& v : scaled) v *= std::sqrt(127.0);
  CHECK(is_cazac(scaled, 1e-9));
}

TEST_CASE("ChirpParams validation enforces the integer predicates") {
  CHECK_NOTHROW(params(127, 4, 2).validate());
  CHECK_NOTHROW(params(127, 3, 1).validate());    // half-odd alpha, beta
  CHECK_NOTHROW(params(127, -4, -4).validate());
  CHECK_THROWS_AS(params(127, 254, 2).validate(), std::invalid_argument);  // gcd != 1
  CHECK_THROWS_AS(params(12, 4, 2).validate(), std::invalid_argument);     // gcd != 1
  CHECK_THROWS_AS(params(127, 3, 2).validate(), std::invalid_argument);    // alpha*n+beta not integer
  CHECK_THROWS_AS(params(127, 0, 2).validate(), std::invalid_argument);
  CHECK_THROWS_AS(params(1, 1, 1).validate(), std::invalid_argument);
}

TEST_CASE("cyclic shifts of the chirp basis are orthonormal") {
  const ChirpParams p = params(17, 3, 1);
  const cvec g = chirp_basis(p);
  const int n = p.n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k)
        acc += g[static_cast<size_t>(imod(k - i, n))] *
               std::conj(g[static_cast<size_t>(imod(k - j, n))]);
      CHECK(std::abs(acc - (i == j ? cplx(1.0, 0.0) : cplx(0.0, 0.0))) < 1e-10);
    }
  }
}

TEST_CASE("time-domain and frequency-domain chirp modulators agree") {
  const ChirpParams p = params(127, 4, 2);
  for (const cvec& x : {random_mpsk(127, 4, 3), zadoff_chu(127, 5), dft_sequence(127, 9)})
    CHECK(max_abs_diff(ccdt_modulate(p, x), ccdt_modulate_freq(p, x)) < 1e-10);
}

TEST_CASE("all modulators preserve unit mean power") {
  const ChirpParams p = params(127, 4, 2);
  const cvec x = random_mpsk(127, 4, 11);
  for (Waveform kind : {Waveform::kCcdt, Waveform::kOfdm, Waveform::kDftsOfdm})
    CHECK(mean_power(modulate(kind, p, x)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ofdm_modulate explicit value and dfts identity") {
  const cvec s = ofdm_modulate(cvec(4, cplx(1.0, 0.0)));
  CHECK(std::abs(s[0] - cplx(2.0, 0.0)) < 1e-14);
  for (size_t t = 1; t < 4; ++t) CHECK(std::abs(s[t]) < 1e-14);

  const cvec x = random_mpsk(31, 4, 2);
  CHECK(max_abs_diff(dfts_ofdm_modulate(x), x) == 0.0);
}

TEST_CASE("modulate dispatches to the per-waveform entry points") {
  const ChirpParams p = params(127, 4, 2);
  const cvec x = zadoff_chu(127, 3);
  CHECK(max_abs_diff(modulate(Waveform::kCcdt, p, x), ccdt_modulate(p, x)) == 0.0);
  CHECK(max_abs_diff(modulate(Waveform::kOfdm, p, x), ofdm_modulate(x)) == 0.0);
  CHECK(max_abs_diff(modulate(Waveform::kDftsOfdm, p, x), dfts_ofdm_modulate(x)) == 0.0);
  CHECK_THROWS_AS(modulate(Waveform::kCcdt, p, cvec(64, cplx(1.0, 0.0))),
                  std::invalid_argument);
}

TEST_CASE("spectrum inverts back to the time-domain symbol") {
  const ChirpParams p = params(127, 3, 1);
  const cvec x = random_mpsk(127, 4, 17);
  for (Waveform kind : {Waveform::kCcdt, Waveform::kOfdm, Waveform::kDftsOfdm})
    CHECK(max_abs_diff(unitary_idft(spectrum(kind, p, x)), modulate(kind, p, x)) < 1e-10);
}

TEST_CASE("upsample reduces to modulate at q=1 and decimates back") {
  const ChirpParams p = params(127, 4, 2);
  const cvec x = random_mpsk(127, 4, 5);
  for (Waveform kind : {Waveform::kCcdt, Waveform::kOfdm, Waveform::kDftsOfdm}) {
    const cvec s = modulate(kind, p, x);
    CHECK(max_abs_diff(upsample(kind, p, x, 1), s) < 1e-12);

    for (int q : {2, 4}) {
      const cvec sq = upsample(kind, p, x, q);
      REQUIRE(static_cast<int>(sq.size()) == q * 127);

      // On-grid samples shrink by 1/sqrt(q); total energy is unchanged.
      const double root_q = std::sqrt(static_cast<double>(q));
      for (int t = 0; t < 127; ++t)
        CHECK(std::abs(sq[static_cast<size_t>(q * t)] - s[static_cast<size_t>(t)] / root_q) <
              1e-10);
      double es = 0.0, eq = 0.0;
      for (const cplx& v : s) es += std::norm(v);
      for (const cplx& v : sq) eq += std::norm(v);
      CHECK(es == doctest::Approx(eq).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS(upsample(Waveform::kOfdm, p, x, 0), std::invalid_argument);
}

TEST_CASE("cyclic prefix is prepended, stripped, and bounds-checked") {
  const cvec s = {cplx(1.0, 0.0), cplx(2.0, 0.0), cplx(3.0, 0.0), cplx(4.0, 0.0)};
  const cvec with = add_cp(s, 2);
  REQUIRE(with.size() == 6);
  CHECK(std::abs(with[0] - cplx(3.0, 0.0)) == 0.0);
  CHECK(std::abs(with[1] - cplx(4.0, 0.0)) == 0.0);
  for (size_t t = 0; t < 4; ++t) CHECK(std::abs(with[t + 2] - s[t]) == 0.0);
  CHECK(max_abs_diff(remove_cp(with, 2), s) == 0.0);
  CHECK(max_abs_diff(add_cp(s, 0), s) == 0.0);
  CHECK_THROWS_AS(add_cp(s, 5), std::invalid_argument);
  CHECK_THROWS_AS(add_cp(s, -1), std::invalid_argument);
  CHECK_THROWS_AS(remove_cp(with, 7), std::invalid_argument);
}
