// Waveform synthesis for the three candidate modulations:
//   - chirp-convolved (CCDT): cyclic convolution of data with a discrete
//     chirp basis pulse,
//   - OFDM: unitary inverse DFT of the data,
//   - DFT-spread OFDM: identity (single-carrier time-domain symbols).
// All modulators map a unit-power length-n sequence to a unit-mean-power
// length-n symbol; cyclic-prefix handling and band-limited upsampling are
// shared across waveforms.
#pragma once

#include <cstdint>

#include "types.hpp"

namespace ccdt {

enum class Waveform { kCcdt = 0, kOfdm = 1, kDftsOfdm = 2 };

// Chirp parameters are stored doubled (two_alpha = 2*alpha, two_beta =
// 2*beta) so that the validity conditions are exact integer predicates:
//   gcd(2*alpha, n) == 1   and   alpha*n + beta integer
// (the latter is equivalent to two_alpha*n + two_beta being even).
// Half-odd alpha therefore needs no floating-point representation at all.
struct ChirpParams {
  int n = 127;
  int two_alpha = 4;
  int two_beta = 2;
  double gamma = 0.0;

  void validate() const;  // throws std::invalid_argument on violation
};

// Chirp basis pulse g[k] = (1/sqrt(n)) * exp(-j*(2*pi/n)*(alpha*k^2 + beta*k
// + gamma)), k in [0, n).  Unit norm; its sqrt(n)-scaled version is CAZAC and
// its n cyclic shifts form an orthonormal basis.
cvec chirp_basis(const ChirpParams& p);

// s[n] = sum_m x[m] * g[n - m] (indices cyclic, period n).
cvec ccdt_modulate(const ChirpParams& p, const cvec& x);

// Same signal built in the frequency domain:
// s[n] = (1/sqrt(n)) * sum_m G[m] * X[m] * exp(j*2*pi*m*n/n) with
// G = dft(g) and X = unitary_dft(x).  Matches ccdt_modulate to rounding.
cvec ccdt_modulate_freq(const ChirpParams& p, const cvec& x);

// s = unitary inverse DFT of x.
cvec ofdm_modulate(const cvec& x);

// s = x.
cvec dfts_ofdm_modulate(const cvec& x);

// Length-n spectrum W such that the symbol equals the unitary inverse DFT of
// W.  CCDT: W = dft(g) .* unitary_dft(x); OFDM: W = x; DFT-s-OFDM:
// W = unitary_dft(x).
cvec spectrum(Waveform kind, const ChirpParams& p, const cvec& x);

// Band-limited interpolation to q*n samples by zero-padding the length-n
// spectrum: s_q[t] = (1/sqrt(q*n)) * sum_m W[m] * exp(j*2*pi*m*t/(q*n)).
// Every q-th sample equals (1/sqrt(q)) times the rate-n symbol, and total
// energy is preserved.
cvec upsample(Waveform kind, const ChirpParams& p, const cvec& x, int q);

// Cyclic prefix: prepend the last n_cp samples / drop the first n_cp samples.
cvec add_cp(const cvec& s, int n_cp);
cvec remove_cp(const cvec& s_cp, int n_cp);

// Dispatch helper over the three modulators.
cvec modulate(Waveform kind, const ChirpParams& p, const cvec& x);

}  // namespace ccdt
