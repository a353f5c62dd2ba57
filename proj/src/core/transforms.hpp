// Direct O(n^2) discrete Fourier transforms.  Sequence lengths here are a few
// hundred at most, and the direct sums with integer-reduced twiddles keep
// rounding at the few-ulp level, which the equivalence tests rely on.
#pragma once

#include "types.hpp"

namespace ccdt {

// Twiddle table w[k] = exp(-j*2*pi*k/n), k in [0, n).
cvec twiddle_table(int n);

// Non-unitary forward transform: X[k] = sum_m x[m] * exp(-j*2*pi*k*m/n).
cvec dft(const cvec& x);

// Unitary pair: forward scales by 1/sqrt(n), inverse by 1/sqrt(n) with
// positive exponent.  unitary_idft(unitary_dft(x)) == x.
cvec unitary_dft(const cvec& x);
cvec unitary_idft(const cvec& x);

}  // namespace ccdt
