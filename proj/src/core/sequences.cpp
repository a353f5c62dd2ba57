#include "sequences.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "rng.hpp"

namespace ccdt {

cvec zadoff_chu(int n, int u) {
  if (n < 1) throw std::invalid_argument("zadoff_chu: length must be positive");
  if (u < 1 || u > n - 1) throw std::invalid_argument("zadoff_chu: root must be in [1, n-1]");
  cvec x(static_cast<size_t>(n));
  for (int m = 0; m < n; ++m) {
    // Phase numerator is an integer multiple of pi/n in both parity cases.
    const int64_t t = (n % 2 != 0) ? static_cast<int64_t>(u) * m * (m + 1)
                                   : static_cast<int64_t>(u) * m * m;
    x[static_cast<size_t>(m)] = unit_phase(t, n);
  }
  return x;
}

cvec dft_sequence(int n, int k) {
  if (n < 1) throw std::invalid_argument("dft_sequence: length must be positive");
  if (k < 0 || k > n - 1) throw std::invalid_argument("dft_sequence: tone must be in [0, n-1]");
  cvec x(static_cast<size_t>(n));
  for (int m = 0; m < n; ++m)
    x[static_cast<size_t>(m)] = unit_phase(2ll * k * m, n);
  return x;
}

LfsrSpec default_lfsr(int degree) {
  switch (degree) {
    case 2: return {2, {2, 1}, 0xffffffffu};
    case 3: return {3, {3, 1}, 0xffffffffu};
    case 4: return {4, {4, 1}, 0xffffffffu};
    case 5: return {5, {5, 2}, 0xffffffffu};
    case 6: return {6, {6, 1}, 0xffffffffu};
    case 7: return {7, {7, 6}, 0xffffffffu};
    case 8: return {8, {8, 6, 5, 4}, 0xffffffffu};
    case 9: return {9, {9, 5}, 0xffffffffu};
    case 10: return {10, {10, 3}, 0xffffffffu};
    default:
      throw std::invalid_argument("default_lfsr: no built-in polynomial for this degree");
  }
}

namespace {

// Window bit i holds y[t+i].  For feedback polynomial x^p + sum_i x^{k_i} + 1
// the recurrence is y[t+p] = y[t] xor xor_i y[t+k_i].
uint32_t lfsr_step(uint32_t window, const LfsrSpec& spec) {
  uint32_t bit = window & 1u;
  for (int k : spec.taps)
    if (k != spec.degree) bit ^= (window >> k) & 1u;
  return bit;
}

}  // namespace

cvec m_sequence(const LfsrSpec& spec) {
  if (spec.degree < 2 || spec.degree > 20)
    throw std::invalid_argument("m_sequence: degree must be in [2, 20]");
  for (int k : spec.taps)
    if (k < 1 || k > spec.degree)
      throw std::invalid_argument("m_sequence: tap exponent out of range");
  if (std::find(spec.taps.begin(), spec.taps.end(), spec.degree) == spec.taps.end())
    throw std::invalid_argument("m_sequence: tap set must contain the degree");

  const uint32_t mask = (1u << spec.degree) - 1u;
  const uint32_t init = spec.init & mask;
  if (init == 0) throw std::invalid_argument("m_sequence: initial state must be nonzero");

  const int n = (1 << spec.degree) - 1;

  // The polynomial is primitive iff the state sequence has full period.
  uint32_t window = init;
  int period = 0;
  do {
    window = ((window >> 1) | (lfsr_step(window, spec) << (spec.degree - 1))) & mask;
    ++period;
    if (period > n) break;
  } while (window != init);
  if (period != n)
    throw std::invalid_argument("m_sequence: feedback polynomial is not primitive (short period)");

  cvec x(static_cast<size_t>(n));
  window = init;
  for (int t = 0; t < n; ++t) {
    const uint32_t bit = window & 1u;  // y[t]
    x[static_cast<size_t>(t)] = bit ? cplx(1.0, 0.0) : cplx(-1.0, 0.0);
    window = ((window >> 1) | (lfsr_step(window, spec) << (spec.degree - 1))) & mask;
  }
  return x;
}

cvec random_mpsk(int n, int m, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_mpsk: length must be positive");
  if (m < 2) throw std::invalid_argument("random_mpsk: constellation order must be >= 2");
  std::mt19937_64 gen = rng::make(seed);
  std::uniform_int_distribution<int> symbol(0, m - 1);
  cvec x(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i)
    x[static_cast<size_t>(i)] = unit_phase(2ll * symbol(gen), m);
  return x;
}

cvec random_uniform_phase(int n, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_uniform_phase: length must be positive");
  std::mt19937_64 gen = rng::make(seed);
  std::uniform_real_distribution<double> phase(0.0, kTwoPi);
  cvec x(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = std::polar(1.0, phase(gen));
  return x;
}

cvec make_sequence(const SequenceSpec& spec, int n, uint64_t seed) {
  switch (spec.family) {
    case SequenceFamily::kMSequence: {
      cvec x = m_sequence(spec.lfsr);
      if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("make_sequence: LFSR degree does not match length");
      return x;
    }
    case SequenceFamily::kZadoffChu:
      return zadoff_chu(n, spec.zc_root);
    case SequenceFamily::kDft:
      return dft_sequence(n, spec.dft_tone);
    case SequenceFamily::kMpsk:
      return random_mpsk(n, spec.mpsk_order, seed);
  }
  throw std::invalid_argument("make_sequence: unknown family");
}

cvec periodic_autocorrelation(const cvec& x) {
  const int n = static_cast<int>(x.size());
  if (n == 0) throw std::invalid_argument("periodic_autocorrelation: empty sequence");
  cvec rho(static_cast<size_t>(n));
  for (int tau = 0; tau < n; ++tau) {
    cplx acc = 0.0;
    for (int m = 0; m < n; ++m)
      acc += x[static_cast<size_t>(m)] * std::conj(x[static_cast<size_t>(imod(m + tau, n))]);
    rho[static_cast<size_t>(tau)] = acc / static_cast<double>(n);
  }
  return rho;
}

bool is_cazac(const cvec& x, double tol) {
  for (const cplx& v : x)
    if (std::abs(std::abs(v) - 1.0) >= tol) return false;
  const cvec rho = periodic_autocorrelation(x);
  for (size_t tau = 1; tau < rho.size(); ++tau)
    if (std::abs(rho[tau]) >= tol) return false;
  return true;
}

}  // namespace ccdt
