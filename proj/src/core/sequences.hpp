// Transmit sequence families: Zadoff-Chu, maximum-length (LFSR), single-tone
// DFT sequences, and random M-PSK, plus the periodic-correlation predicates
// used to classify them.
#pragma once

#include <cstdint>
#include <vector>

#include "types.hpp"

namespace ccdt {

// Zadoff-Chu sequence of length n with root u, 1 <= u <= n-1.
// Odd n:  x[m] = exp(j*pi*u*m*(m+1)/n); even n: x[m] = exp(j*pi*u*m*m/n).
cvec zadoff_chu(int n, int u);

// Single-tone sequence x[m] = exp(j*2*pi*k*m/n), 0 <= k <= n-1.
cvec dft_sequence(int n, int k);

// Fibonacci LFSR description.  `taps` lists the nonzero exponents of the
// feedback polynomial excluding the constant term (the degree itself must be
// present), e.g. {7, 6} encodes x^7 + x^6 + 1, whose recurrence is
// y[t] = y[t-7] xor y[t-1].  `init` holds y[0..degree-1], LSB = y[0].
struct LfsrSpec {
  int degree = 7;
  std::vector<int> taps = {7, 6};
  uint32_t init = 0xffffffffu;  // masked to `degree` bits; must be nonzero
};

// Default primitive feedback polynomials for degrees 2..10.
LfsrSpec default_lfsr(int degree);

// Maximum-length +/-1 sequence of length 2^degree - 1.  Bits map 0 -> -1,
// 1 -> +1.  Throws if the measured state period is not 2^degree - 1 (i.e.
// the polynomial is not primitive or the seed is zero).
cvec m_sequence(const LfsrSpec& spec);

// n random symbols drawn uniformly from the order-m PSK constellation.
cvec random_mpsk(int n, int m, uint64_t seed);

// n random unit-modulus symbols with phase uniform on [0, 2*pi).
cvec random_uniform_phase(int n, uint64_t seed);

// Sequence family selector used by the experiment configs.
enum class SequenceFamily { kMSequence = 0, kZadoffChu = 1, kDft = 2, kMpsk = 3 };

struct SequenceSpec {
  SequenceFamily family = SequenceFamily::kMSequence;
  LfsrSpec lfsr = {};    // kMSequence
  int zc_root = 3;       // kZadoffChu
  int dft_tone = 5;      // kDft
  int mpsk_order = 4;    // kMpsk
};

// Materializes a length-n sequence.  `seed` matters only for kMpsk (random
// payload); the other families are deterministic.  Throws if the family
// cannot produce length n.
cvec make_sequence(const SequenceSpec& spec, int n, uint64_t seed);

// Periodic autocorrelation rho[tau] = (1/n) * sum_m x[m] * conj(x[m+tau mod n]).
cvec periodic_autocorrelation(const cvec& x);

// True iff every |x[m]| is within tol of 1 and every off-peak |rho[tau]| is
// below tol (constant amplitude, zero autocorrelation).
bool is_cazac(const cvec& x, double tol = 1e-9);

}  // namespace ccdt
