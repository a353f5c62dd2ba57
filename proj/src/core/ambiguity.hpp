// Periodic ambiguity function evaluators.
//
// The reference definition for a length-n symbol s is
//   chi(delta, tau) = (1/n) * sum_n s[n] * conj(s[(n+tau) mod n]) *
//                     exp(j*2*pi*delta*n/n)
// (n-periodic in both arguments).  Alongside the brute-force form this file
// provides closed forms for the chirp-convolved waveform (integer grid,
// band-limited upsampled grid, and real-valued Doppler), the chirp basis
// pulse itself, and the OFDM / DFT-spread-OFDM single-carrier shortcuts.
// Every closed form is validated against the definition in the test suite.
#pragma once

#include <cstdint>

#include "types.hpp"
#include "waveform.hpp"

namespace ccdt {

// Modular inverse of a mod n (n >= 1, gcd(a, n) == 1), result in [0, n).
int64_t modular_inverse(int64_t a, int64_t n);

// Brute-force evaluation of the definition above.  delta and tau may be any
// integers; the value is periodic in both.
cplx af_definition(const cvec& s, int64_t delta, int64_t tau);

// Same definition at real-valued Doppler (cycles per symbol), any signal.
cplx af_definition_real(const cvec& s, double delta, int64_t tau);

// Full n-by-n surface of af_definition, row-major with delta as the slow
// axis: out[delta * n + tau].  Built per delay from the lag-product sequence
// and one direct transform over the Doppler axis.
cvec af_surface(const cvec& s);

// Data-independent bookkeeping behind the chirp closed form at a given
// (delta, tau): the lag-product collapses the double sum onto a single
// residue line, leaving
//   chi = scale * sum_m x[(m + k0) mod n] * conj(x[m]) * exp(j*2*pi*delta*m/n)
// where 2*alpha*k0 == -delta - 2*alpha*tau (mod n), r0 is the integer making
// that congruence exact, and |scale| = 1/n.
struct ClosedFormContext {
  int64_t k0 = 0;   // data shift applied inside the sum, in [0, n)
  int64_t r0 = 0;   // (2*alpha*k0 + delta + 2*alpha*tau) / n, exact
  cplx scale;       // complex prefactor, magnitude 1/n
};

ClosedFormContext closed_form_context(const ChirpParams& p, int64_t delta, int64_t tau);

// Closed form for the chirp-convolved waveform on the integer grid.  Equals
// af_definition(ccdt_modulate(p, x), delta, tau) to rounding error.
cplx af_ccdt_closed_form(const ChirpParams& p, const cvec& x, int64_t delta, int64_t tau);

// Ambiguity function of the chirp basis pulse itself:
//   chi_g(delta, tau) = (1/n) * exp(j*(2*pi/n)*(alpha*tau^2 + beta*tau))
// when 2*alpha*tau + delta == 0 (mod n), else exactly zero.
cplx af_chirp_basis(const ChirpParams& p, int64_t delta, int64_t tau);

// Convolution form: chi(delta, tau) = n * sum_v chi_g(delta, v) *
// chi_x(delta, tau - v), where chi_x is the data ambiguity function.  The
// basis line makes the sum a single product.
cplx af_convolution(const ChirpParams& p, const cvec& x, int64_t delta, int64_t tau);

// Ambiguity function of upsample(kCcdt, p, x, q) on the length q*n grid
// (delta, tau in upsampled bins).  Closed form: the chirp line restricts the
// spectral convolution to one term and the delay enters through a Dirichlet
// kernel over the occupied band; outside the band overlap the value is
// exactly zero.  Matches af_definition on the upsampled signal.
cplx af_upsampled(const ChirpParams& p, const cvec& x, int q, int64_t delta, int64_t tau);

// Real-valued Doppler evaluation of the chirp-convolved waveform at integer
// delay: the inner sum over time becomes a Dirichlet kernel. At integer
// delta this reduces to af_ccdt_closed_form.
cplx af_fractional(const ChirpParams& p, const cvec& x, double delta, int64_t tau);

// OFDM: chi(delta, tau) = (1/n) * sum_m x[(m - delta) mod n] * conj(x[m]) *
// exp(-j*2*pi*tau*m/n); delay and Doppler swap roles relative to the
// single-carrier case.
cplx af_ofdm(const cvec& x, int64_t delta, int64_t tau);

// DFT-spread OFDM transmits x itself, so this is af_definition on x.
cplx af_dfts_ofdm(const cvec& x, int64_t delta, int64_t tau);

// Expected |chi| for a chirp-convolved maximum-length sequence (length n =
// 2^p - 1): 1 at the origin, 1/n on the zero-Doppler line, 0 on the residue
// line 2*alpha*tau + delta == 0 (mod n) away from the origin, and
// sqrt(n+1)/n elsewhere.
double mseq_af_level(int n, int two_alpha, int64_t delta, int64_t tau);

// Monte-Carlo sample mean of the chirp-convolved waveform's ambiguity value
// at one grid point over independent random data draws.
struct RandomAfEstimate {
  cplx mean;               // sample mean of chi over the draws
  double std_error = 0.0;  // sqrt(sum |chi_i - mean|^2 / (trials*(trials-1)))
  int trials = 0;
};

// mpsk_order >= 2 draws data from that PSK constellation; mpsk_order == 0
// draws unit-modulus symbols with uniform phase.  Draw i uses the substream
// derive(seed, kRoleData, i), so estimates sharing a seed share data.
RandomAfEstimate expected_af_random(const ChirpParams& p, int mpsk_order, int trials,
                                    int64_t delta, int64_t tau, uint64_t seed);

}  // namespace ccdt
