#include "verify.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "ambiguity.hpp"
#include "papr.hpp"
#include "rng.hpp"

namespace ccdt {

namespace {

int mersenne_degree(int n) {
  for (int p = 2; p <= 10; ++p)
    if ((1 << p) - 1 == n) return p;
  throw std::invalid_argument("run_property_suite: length must be 2^p - 1 with p in 2..10");
}

double level_deviation(const cvec& surface, int n,
                       const std::function<double(int64_t, int64_t)>& level) {
  double dev = 0.0;
  for (int64_t d = 0; d < n; ++d)
    for (int64_t t = 0; t < n; ++t)
      dev = std::max(dev, std::abs(std::abs(surface[static_cast<size_t>(d * n + t)]) - level(d, t)));
  return dev;
}

}  // namespace

std::vector<PropertyResult> run_property_suite(const VerifyOptions& options) {
  const int n = options.n;
  const int degree = mersenne_degree(n);
  ChirpParams chirp = options.chirp;
  chirp.n = n;
  chirp.validate();
  const int64_t a = chirp.two_alpha;
  if (options.zc_root < 1 || options.zc_root >= n ||
      std::gcd(static_cast<int64_t>(options.zc_root), static_cast<int64_t>(n)) != 1)
    throw std::invalid_argument("run_property_suite: zc_root must be in [1, n) and coprime to n");
  if (options.dft_tone < 1 || options.dft_tone >= n)
    throw std::invalid_argument("run_property_suite: dft_tone must be in [1, n)");
  LfsrSpec lfsr = options.lfsr;
  if (lfsr.degree != degree) lfsr = default_lfsr(degree);

  std::vector<PropertyResult> results;
  const auto record = [&](const char* name, double dev, double tol) {
    PropertyResult r;
    r.name = name;
    r.max_deviation = dev;
    r.tolerance = options.tolerance > 0.0 ? options.tolerance : tol;
    r.passed = dev <= r.tolerance;
    results.push_back(std::move(r));
  };

  const cvec qpsk = random_mpsk(n, 4, rng::derive(options.seed, rng::kRoleData, 0));
  const cvec zc = zadoff_chu(n, options.zc_root);
  const cvec tone = dft_sequence(n, options.dft_tone);
  const cvec mseq = m_sequence(lfsr);
  const int matched_root = static_cast<int>(imod(a, n));
  const cvec zc_matched = zadoff_chu(n, matched_root);

  {
    // 1: closed form equals the brute-force definition on the full grid.
    // 2: exact null on the residue line 2*alpha*tau + delta == 0 away from
    //    the origin, for any unimodular data.
    const cvec surface = af_surface(ccdt_modulate(chirp, qpsk));
    double dev = 0.0;
    for (int64_t d = 0; d < n; ++d)
      for (int64_t t = 0; t < n; ++t)
        dev = std::max(dev, std::abs(surface[static_cast<size_t>(d * n + t)] -
                                     af_ccdt_closed_form(chirp, qpsk, d, t)));
    record("chirp_closed_form_matches_definition", dev, 1e-10);

    double null_dev = 0.0;
    for (int64_t t = 1; t < n; ++t)
      null_dev = std::max(
          null_dev, std::abs(surface[static_cast<size_t>(imod(-a * t, n) * n + t)]));
    record("chirp_residue_line_null", null_dev, 1e-10);
  }

  {
    // 3: with zero-autocorrelation data every Doppler row carries unit energy.
    const cvec surface = af_surface(ccdt_modulate(chirp, zc));
    double dev = 0.0;
    for (int64_t d = 0; d < n; ++d) {
      double sum = 0.0;
      for (int64_t t = 0; t < n; ++t) sum += std::norm(surface[static_cast<size_t>(d * n + t)]);
      dev = std::max(dev, std::abs(sum - 1.0));
    }
    record("chirp_cazac_delay_energy", dev, 1e-10);
  }

  {
    // 4: tone data concentrates the chirp surface on the zero-Doppler row.
    const cvec surface = af_surface(ccdt_modulate(chirp, tone));
    record("chirp_tone_doppler_impulse",
           level_deviation(surface, n, [](int64_t d, int64_t) { return d == 0 ? 1.0 : 0.0; }),
           1e-10);
  }

  {
    // 5: ZC root congruent to 2*alpha collapses the waveform to a time
    //    impulse, so the surface is the zero-delay column.
    const cvec surface = af_surface(ccdt_modulate(chirp, zc_matched));
    record("chirp_matched_zc_delay_impulse",
           level_deviation(surface, n, [](int64_t, int64_t t) { return t == 0 ? 1.0 : 0.0; }),
           1e-10);
  }

  {
    // 6: maximum-length data gives the four-level magnitude profile.
    const cvec surface = af_surface(ccdt_modulate(chirp, mseq));
    record("chirp_mseq_four_level",
           level_deviation(surface, n,
                           [&](int64_t d, int64_t t) {
                             return mseq_af_level(n, chirp.two_alpha, d, t);
                           }),
           1e-10);
  }

  {
    // 7: the matched ZC root puts all energy in the single sample n0 solving
    //    2*alpha*(2*n0 + 1) + 2*beta == 0 (mod 2n); any other coprime root
    //    whose offset from 2*alpha is also coprime to n stays flat.
    const PaprResult matched = papr(ccdt_modulate(chirp, zc_matched));
    double dev = std::abs(matched.papr_db - 10.0 * std::log10(static_cast<double>(n)));
    int64_t n0 = -1;
    for (int64_t i = 0; i < n; ++i)
      if (imod(a + 2 * a * i + chirp.two_beta, 2 * n) == 0) {
        n0 = i;
        break;
      }
    if (matched.peak_index != n0) dev = std::max(dev, 1.0);
    const int64_t offset = imod(options.zc_root - a, n);
    if (offset != 0 && std::gcd(offset, static_cast<int64_t>(n)) == 1) {
      const PaprResult flat = papr(ccdt_modulate(chirp, zc));
      dev = std::max(dev, std::abs(flat.papr_db));
    }
    record("chirp_matched_zc_papr", dev, 1e-9);
  }

  {
    // 8: tone data keeps the chirp waveform at constant envelope.
    const PaprResult flat = papr(ccdt_modulate(chirp, tone));
    record("chirp_tone_flat_envelope", std::abs(flat.papr_db), 1e-9);
  }

  {
    // 9: OFDM of unimodular data: the zero-Doppler cut is a delay impulse.
    const cvec s = ofdm_modulate(qpsk);
    double dev = 0.0;
    for (int64_t t = 0; t < n; ++t)
      dev = std::max(dev,
                     std::abs(std::abs(af_definition(s, int64_t{0}, t)) - (t == 0 ? 1.0 : 0.0)));
    record("ofdm_zero_doppler_delay_impulse", dev, 1e-10);
  }

  {
    // 10: the spread waveform transmits x itself, so the zero-delay cut is a
    //     Doppler impulse for unimodular data.
    const cvec s = dfts_ofdm_modulate(qpsk);
    double dev = 0.0;
    for (int64_t d = 0; d < n; ++d)
      dev = std::max(dev, std::abs(std::abs(af_definition(s, d, 0)) - (d == 0 ? 1.0 : 0.0)));
    record("dfts_zero_delay_doppler_impulse", dev, 1e-10);
  }

  {
    // 11: OFDM of a tone is a time impulse: zero-delay column only.
    const cvec surface = af_surface(ofdm_modulate(tone));
    record("ofdm_tone_delay_impulse",
           level_deviation(surface, n, [](int64_t, int64_t t) { return t == 0 ? 1.0 : 0.0; }),
           1e-10);
  }

  {
    // 12: the spread tone stays a tone: zero-Doppler row only.
    const cvec surface = af_surface(dfts_ofdm_modulate(tone));
    record("dfts_tone_doppler_impulse",
           level_deviation(surface, n, [](int64_t d, int64_t) { return d == 0 ? 1.0 : 0.0; }),
           1e-10);
  }

  {
    // 13: OFDM of ZC root u is supported on the line tau == -u*delta (mod n).
    const cvec surface = af_surface(ofdm_modulate(zc));
    const int64_t u = options.zc_root;
    record("ofdm_zc_diagonal_support",
           level_deviation(surface, n,
                           [&](int64_t d, int64_t t) {
                             return t == imod(-u * d, n) ? 1.0 : 0.0;
                           }),
           1e-10);
  }

  {
    // 14: the spread ZC keeps its own line delta == u*tau (mod n).
    const cvec surface = af_surface(dfts_ofdm_modulate(zc));
    const int64_t u = options.zc_root;
    record("dfts_zc_diagonal_support",
           level_deviation(surface, n,
                           [&](int64_t d, int64_t t) {
                             return d == imod(u * t, n) ? 1.0 : 0.0;
                           }),
           1e-10);
  }

  return results;
}

bool all_passed(const std::vector<PropertyResult>& results) {
  for (const PropertyResult& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace ccdt
