#include "transforms.hpp"

#include <cmath>
#include <stdexcept>

namespace ccdt {

cvec twiddle_table(int n) {
  if (n < 1) throw std::invalid_argument("twiddle_table: length must be positive");
  cvec w(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k)
    w[static_cast<size_t>(k)] = std::polar(1.0, -kTwoPi * static_cast<double>(k) / n);
  return w;
}

namespace {

cvec transform(const cvec& x, bool forward, double scale) {
  const int n = static_cast<int>(x.size());
  if (n == 0) throw std::invalid_argument("dft: empty sequence");
  const cvec w = twiddle_table(n);
  cvec out(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    cplx acc = 0.0;
    for (int m = 0; m < n; ++m) {
      const cplx t = w[static_cast<size_t>(imod(static_cast<int64_t>(k) * m, n))];
      acc += x[static_cast<size_t>(m)] * (forward ? t : std::conj(t));
    }
    out[static_cast<size_t>(k)] = acc * scale;
  }
  return out;
}

}  // namespace

cvec dft(const cvec& x) { return transform(x, true, 1.0); }

cvec unitary_dft(const cvec& x) {
  return transform(x, true, 1.0 / std::sqrt(static_cast<double>(x.size())));
}

cvec unitary_idft(const cvec& x) {
  return transform(x, false, 1.0 / std::sqrt(static_cast<double>(x.size())));
}

}  // namespace ccdt
