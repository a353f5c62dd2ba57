#include "waveform.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "transforms.hpp"

namespace ccdt {

void ChirpParams::validate() const {
  if (n < 2) throw std::invalid_argument("ChirpParams: n must be >= 2");
  if (two_alpha == 0) throw std::invalid_argument("ChirpParams: 2*alpha must be nonzero");
  const int64_t a = imod(two_alpha, n);
  if (std::gcd(a, static_cast<int64_t>(n)) != 1)
    throw std::invalid_argument("ChirpParams: gcd(2*alpha, n) must be 1");
  const int64_t int2 = static_cast<int64_t>(two_alpha) * n + two_beta;
  if (imod(int2, 2) != 0)
    throw std::invalid_argument("ChirpParams: alpha*n + beta must be an integer");
}

cvec chirp_basis(const ChirpParams& p) {
  p.validate();
  const double amp = 1.0 / std::sqrt(static_cast<double>(p.n));
  const cplx gamma_rot = std::polar(1.0, -kTwoPi * p.gamma / p.n);
  cvec g(static_cast<size_t>(p.n));
  for (int k = 0; k < p.n; ++k) {
    const int64_t t = static_cast<int64_t>(p.two_alpha) * k * k +
                      static_cast<int64_t>(p.two_beta) * k;
    g[static_cast<size_t>(k)] = amp * gamma_rot * unit_phase(-t, p.n);
  }
  return g;
}

namespace {

void require_length(const ChirpParams& p, const cvec& x) {
  if (static_cast<int>(x.size()) != p.n)
    throw std::invalid_argument("waveform: sequence length does not match n");
}

}  // namespace

cvec ccdt_modulate(const ChirpParams& p, const cvec& x) {
  require_length(p, x);
  const cvec g = chirp_basis(p);
  const int n = p.n;
  cvec s(static_cast<size_t>(n));
  for (int t = 0; t < n; ++t) {
    cplx acc = 0.0;
    for (int m = 0; m < n; ++m)
      acc += x[static_cast<size_t>(m)] * g[static_cast<size_t>(imod(t - m, n))];
    s[static_cast<size_t>(t)] = acc;
  }
  return s;
}

cvec ccdt_modulate_freq(const ChirpParams& p, const cvec& x) {
  require_length(p, x);
  const cvec big_g = dft(chirp_basis(p));
  const cvec big_x = unitary_dft(x);
  cvec w(static_cast<size_t>(p.n));
  for (size_t m = 0; m < w.size(); ++m) w[m] = big_g[m] * big_x[m];
  return unitary_idft(w);
}

cvec ofdm_modulate(const cvec& x) {
  if (x.empty()) throw std::invalid_argument("ofdm_modulate: empty sequence");
  return unitary_idft(x);
}

cvec dfts_ofdm_modulate(const cvec& x) {
  if (x.empty()) throw std::invalid_argument("dfts_ofdm_modulate: empty sequence");
  return x;
}

cvec spectrum(Waveform kind, const ChirpParams& p, const cvec& x) {
  switch (kind) {
    case Waveform::kCcdt: {
      require_length(p, x);
      const cvec big_g = dft(chirp_basis(p));
      const cvec big_x = unitary_dft(x);
      cvec w(static_cast<size_t>(p.n));
      for (size_t m = 0; m < w.size(); ++m) w[m] = big_g[m] * big_x[m];
      return w;
    }
    case Waveform::kOfdm:
      return x;
    case Waveform::kDftsOfdm:
      return unitary_dft(x);
  }
  throw std::invalid_argument("spectrum: unknown waveform");
}

cvec upsample(Waveform kind, const ChirpParams& p, const cvec& x, int q) {
  if (q < 1) throw std::invalid_argument("upsample: factor must be >= 1");
  const cvec w = spectrum(kind, p, x);
  const int n = static_cast<int>(w.size());
  const int nq = n * q;
  const cvec tw = twiddle_table(nq);
  const double amp = 1.0 / std::sqrt(static_cast<double>(nq));
  cvec s(static_cast<size_t>(nq));
  for (int t = 0; t < nq; ++t) {
    cplx acc = 0.0;
    for (int m = 0; m < n; ++m)
      acc += w[static_cast<size_t>(m)] *
             std::conj(tw[static_cast<size_t>(imod(static_cast<int64_t>(m) * t, nq))]);
    s[static_cast<size_t>(t)] = acc * amp;
  }
  return s;
}

cvec add_cp(const cvec& s, int n_cp) {
  const int n = static_cast<int>(s.size());
  if (n_cp < 0 || n_cp > n) throw std::invalid_argument("add_cp: prefix length out of range");
  cvec out;
  out.reserve(s.size() + static_cast<size_t>(n_cp));
  out.insert(out.end(), s.end() - n_cp, s.end());
  out.insert(out.end(), s.begin(), s.end());
  return out;
}

cvec remove_cp(const cvec& s_cp, int n_cp) {
  if (n_cp < 0 || n_cp >= static_cast<int>(s_cp.size()))
    throw std::invalid_argument("remove_cp: prefix length out of range");
  return cvec(s_cp.begin() + n_cp, s_cp.end());
}

cvec modulate(Waveform kind, const ChirpParams& p, const cvec& x) {
  switch (kind) {
    case Waveform::kCcdt: return ccdt_modulate(p, x);
    case Waveform::kOfdm: return ofdm_modulate(x);
    case Waveform::kDftsOfdm: return dfts_ofdm_modulate(x);
  }
  throw std::invalid_argument("modulate: unknown waveform");
}

}  // namespace ccdt
