#include "ambiguity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rng.hpp"
#include "sequences.hpp"
#include "transforms.hpp"

namespace ccdt {

namespace {

// sin(pi*x) / cos(pi*x) with the integer part of x removed exactly, so both
// vanish (resp. hit +/-1) at integers with no rounding residue.
double sinpi(double x) {
  const double n = std::nearbyint(x);
  const double s = std::sin(kPi * (x - n));
  return (static_cast<int64_t>(n) % 2 != 0) ? -s : s;
}

double cospi(double x) {
  const double n = std::nearbyint(x);
  const double c = std::cos(kPi * (x - n));
  return (static_cast<int64_t>(n) % 2 != 0) ? -c : c;
}

cplx unit_pi_phase(double x) { return {cospi(x), sinpi(x)}; }

// Dirichlet kernel K(t) = sum_{n=0}^{count-1} exp(j*2*pi*n*t/count) for real
// t: sin(pi*t)/sin(pi*t/count) * exp(j*pi*(count-1)*t/count), with the
// removable singularity at t == 0 (mod count) replaced by its limit.
cplx dirichlet(double t, int count) {
  const double whole = std::nearbyint(t / count);
  const double frac = t - whole * count;
  const cplx phase = unit_pi_phase((count - 1) * t / count);
  if (std::abs(frac) < 1e-9) {
    double sign = 1.0;
    if (static_cast<int64_t>(whole) % 2 != 0 && count % 2 == 0) sign = -1.0;
    return sign * static_cast<double>(count) * phase;
  }
  return (sinpi(t) / sinpi(t / count)) * phase;
}

// Exact partial geometric sum over the occupied band:
//   S = sum_{p=first}^{first+len-1} exp(j*(2*pi/n)*p*(tq/q))
// with tq integer, evaluated through integer phase reduction mod 2*q*n.
cplx band_sum(int64_t tq, int64_t q, int64_t n, int64_t first, int64_t len) {
  const int64_t qn = q * n;
  const int64_t m = imod(tq, 2 * qn);
  if (m == 0 || m == qn) {
    // t is an integer multiple of n: every term equals exp(j*2*pi*p*c) = 1.
    return {static_cast<double>(len), 0.0};
  }
  const double denom = static_cast<double>(qn);
  const double num = std::sin(kPi * static_cast<double>(imod(len * tq, 2 * qn)) / denom);
  const double den = std::sin(kPi * static_cast<double>(m) / denom);
  const cplx rot =
      std::polar(1.0, kPi * static_cast<double>(imod(tq * (2 * first + len - 1), 2 * qn)) / denom);
  return (num / den) * rot;
}

void require_length(const ChirpParams& p, const cvec& x) {
  if (static_cast<int>(x.size()) != p.n)
    throw std::invalid_argument("ambiguity: sequence length does not match n");
}

// Row chi_x(delta, w) for w in [0, n): ambiguity function of the data
// sequence at one integer Doppler.
cvec data_af_row(const cvec& x, int64_t delta) {
  const int n = static_cast<int>(x.size());
  const cvec w = twiddle_table(n);
  const int64_t d = imod(delta, n);
  cvec row(static_cast<size_t>(n));
  for (int lag = 0; lag < n; ++lag) {
    cplx acc = 0.0;
    int64_t e = 0;
    int idx = lag;
    for (int m = 0; m < n; ++m) {
      acc += x[static_cast<size_t>(m)] * std::conj(x[static_cast<size_t>(idx)]) *
             std::conj(w[static_cast<size_t>(e)]);
      e += d;
      if (e >= n) e -= n;
      if (++idx == n) idx = 0;
    }
    row[static_cast<size_t>(lag)] = acc / static_cast<double>(n);
  }
  return row;
}

}  // namespace

int64_t modular_inverse(int64_t a, int64_t n) {
  if (n < 1) throw std::invalid_argument("modular_inverse: modulus must be positive");
  int64_t r0 = n, r1 = imod(a, n);
  int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    const int64_t q = r0 / r1;
    const int64_t r2 = r0 - q * r1;
    const int64_t t2 = t0 - q * t1;
    r0 = r1; r1 = r2;
    t0 = t1; t1 = t2;
  }
  if (r0 != 1) throw std::invalid_argument("modular_inverse: argument not coprime to modulus");
  return imod(t0, n);
}

cplx af_definition(const cvec& s, int64_t delta, int64_t tau) {
  const int n = static_cast<int>(s.size());
  if (n == 0) throw std::invalid_argument("af_definition: empty signal");
  const cvec w = twiddle_table(n);
  const int64_t d = imod(delta, n);
  int idx = static_cast<int>(imod(tau, n));
  int64_t e = 0;
  cplx acc = 0.0;
  for (int t = 0; t < n; ++t) {
    acc += s[static_cast<size_t>(t)] * std::conj(s[static_cast<size_t>(idx)]) *
           std::conj(w[static_cast<size_t>(e)]);
    e += d;
    if (e >= n) e -= n;
    if (++idx == n) idx = 0;
  }
  return acc / static_cast<double>(n);
}

cplx af_definition_real(const cvec& s, double delta, int64_t tau) {
  const int n = static_cast<int>(s.size());
  if (n == 0) throw std::invalid_argument("af_definition_real: empty signal");
  int idx = static_cast<int>(imod(tau, n));
  cplx acc = 0.0;
  for (int t = 0; t < n; ++t) {
    acc += s[static_cast<size_t>(t)] * std::conj(s[static_cast<size_t>(idx)]) *
           unit_pi_phase(2.0 * delta * t / n);
    if (++idx == n) idx = 0;
  }
  return acc / static_cast<double>(n);
}

cvec af_surface(const cvec& s) {
  const int n = static_cast<int>(s.size());
  if (n == 0) throw std::invalid_argument("af_surface: empty signal");
  const cvec w = twiddle_table(n);
  cvec out(static_cast<size_t>(n) * static_cast<size_t>(n));
  cvec lag_product(static_cast<size_t>(n));
  for (int tau = 0; tau < n; ++tau) {
    int idx = tau;
    for (int t = 0; t < n; ++t) {
      lag_product[static_cast<size_t>(t)] =
          s[static_cast<size_t>(t)] * std::conj(s[static_cast<size_t>(idx)]);
      if (++idx == n) idx = 0;
    }
    for (int delta = 0; delta < n; ++delta) {
      cplx acc = 0.0;
      int64_t e = 0;
      for (int t = 0; t < n; ++t) {
        acc += lag_product[static_cast<size_t>(t)] * std::conj(w[static_cast<size_t>(e)]);
        e += delta;
        if (e >= n) e -= n;
      }
      out[static_cast<size_t>(delta) * n + static_cast<size_t>(tau)] =
          acc / static_cast<double>(n);
    }
  }
  return out;
}

ClosedFormContext closed_form_context(const ChirpParams& p, int64_t delta, int64_t tau) {
  p.validate();
  const int64_t n = p.n;
  const int64_t a = p.two_alpha;
  const int64_t b = p.two_beta;
  const int64_t inv = modular_inverse(a, n);
  const int64_t d = imod(delta, n);
  const int64_t t = imod(tau, n);
  // dhat solves 2*alpha*dhat == delta (mod n); the data shift is then
  // k0 = -(tau + dhat) mod n and the residue count r0 follows exactly.
  const int64_t dhat = imod(inv * d, n);
  ClosedFormContext ctx;
  ctx.k0 = imod(-(t + dhat), n);
  ctx.r0 = (a * ctx.k0 + d + a * t) / n;
  if (ctx.r0 * n != a * ctx.k0 + d + a * t)
    throw std::logic_error("closed_form_context: residue congruence violated");
  ctx.scale = unit_phase(-dhat * (2 * a * t + a * dhat + b), n) / static_cast<double>(n);
  return ctx;
}

cplx af_ccdt_closed_form(const ChirpParams& p, const cvec& x, int64_t delta, int64_t tau) {
  require_length(p, x);
  const ClosedFormContext ctx = closed_form_context(p, delta, tau);
  const int n = p.n;
  const cvec w = twiddle_table(n);
  const int64_t d = imod(delta, n);
  cplx acc = 0.0;
  int idx = static_cast<int>(ctx.k0);
  int64_t e = 0;
  for (int m = 0; m < n; ++m) {
    acc += x[static_cast<size_t>(idx)] * std::conj(x[static_cast<size_t>(m)]) *
           std::conj(w[static_cast<size_t>(e)]);
    e += d;
    if (e >= n) e -= n;
    if (++idx == n) idx = 0;
  }
  return ctx.scale * acc;
}

cplx af_chirp_basis(const ChirpParams& p, int64_t delta, int64_t tau) {
  p.validate();
  const int64_t n = p.n;
  const int64_t t = imod(tau, n);
  if (imod(static_cast<int64_t>(p.two_alpha) * t + delta, n) != 0) return 0.0;
  const int64_t num = static_cast<int64_t>(p.two_alpha) * t * t +
                      static_cast<int64_t>(p.two_beta) * t;
  return unit_phase(num, n) / static_cast<double>(n);
}

cplx af_convolution(const ChirpParams& p, const cvec& x, int64_t delta, int64_t tau) {
  require_length(p, x);
  const int64_t n = p.n;
  // Single v on the basis line: 2*alpha*v == -delta (mod n).
  const int64_t inv = modular_inverse(p.two_alpha, n);
  const int64_t v = imod(-inv * imod(delta, n), n);
  const cplx chi_g = af_chirp_basis(p, delta, v);
  const cplx chi_x = af_definition(x, delta, tau - v);
  return static_cast<double>(n) * chi_g * chi_x;
}

cplx af_upsampled(const ChirpParams& p, const cvec& x, int q, int64_t delta, int64_t tau) {
  require_length(p, x);
  if (q < 1) throw std::invalid_argument("af_upsampled: factor must be >= 1");
  const int64_t n = p.n;
  const int64_t nq = n * q;
  const int64_t d_up = imod(delta, nq);

  // Occupied spectral band [first, first+len): bins p with p - delta + r*q*n
  // inside [0, n) for some integer r.  Empty overlap means an exact zero.
  int64_t first = 0;
  int64_t len = 0;
  if (q == 1) {
    first = 0;
    len = n;
  } else if (d_up < n) {
    first = d_up;
    len = n - d_up;
  } else if (d_up > nq - n) {
    first = 0;
    len = n - (nq - d_up);
  } else {
    return 0.0;
  }

  const int64_t d = imod(d_up, n);
  const int64_t inv = modular_inverse(p.two_alpha, n);
  const int64_t v = imod(-inv * d, n);
  const cplx chi_g = af_chirp_basis(p, d, v);

  const cvec row = data_af_row(x, d);
  const int64_t t = imod(tau, nq);
  cplx acc = 0.0;
  for (int64_t lag = 0; lag < n; ++lag) {
    const int64_t tq = q * (v + lag) - t;
    acc += row[static_cast<size_t>(lag)] * band_sum(tq, q, n, first, len);
  }
  return chi_g * acc / static_cast<double>(q);
}

cplx af_fractional(const ChirpParams& p, const cvec& x, double delta, int64_t tau) {
  require_length(p, x);
  const int64_t n = p.n;
  const int64_t a = p.two_alpha;
  const int64_t b = p.two_beta;
  const int64_t t = imod(tau, n);
  cplx acc = 0.0;
  for (int64_t m = 0; m < n; ++m) {
    for (int64_t k = 0; k < n; ++k) {
      const int64_t lag = m - k - t;
      const int64_t phase_num = lag * (a * (t - k - m) + b);
      const cplx kernel = dirichlet(delta - static_cast<double>(a * lag), static_cast<int>(n));
      acc += x[static_cast<size_t>(k)] * std::conj(x[static_cast<size_t>(m)]) *
             unit_phase(-phase_num, n) * kernel;
    }
  }
  return acc / static_cast<double>(n * n);
}

cplx af_ofdm(const cvec& x, int64_t delta, int64_t tau) {
  const int n = static_cast<int>(x.size());
  if (n == 0) throw std::invalid_argument("af_ofdm: empty sequence");
  const cvec w = twiddle_table(n);
  const int64_t t = imod(tau, n);
  int idx = static_cast<int>(imod(-delta, n));
  int64_t e = 0;
  cplx acc = 0.0;
  for (int m = 0; m < n; ++m) {
    acc += x[static_cast<size_t>(idx)] * std::conj(x[static_cast<size_t>(m)]) *
           w[static_cast<size_t>(e)];
    e += t;
    if (e >= n) e -= n;
    if (++idx == n) idx = 0;
  }
  return acc / static_cast<double>(n);
}

cplx af_dfts_ofdm(const cvec& x, int64_t delta, int64_t tau) {
  return af_definition(x, delta, tau);
}

double mseq_af_level(int n, int two_alpha, int64_t delta, int64_t tau) {
  const int64_t d = imod(delta, n);
  const int64_t t = imod(tau, n);
  if (d == 0 && t == 0) return 1.0;
  if (d == 0) return 1.0 / n;
  if (imod(static_cast<int64_t>(two_alpha) * t + d, n) == 0) return 0.0;
  return std::sqrt(static_cast<double>(n) + 1.0) / n;
}

RandomAfEstimate expected_af_random(const ChirpParams& p, int mpsk_order, int trials,
                                    int64_t delta, int64_t tau, uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("expected_af_random: trials must be >= 1");
  if (mpsk_order != 0 && mpsk_order < 2)
    throw std::invalid_argument("expected_af_random: mpsk_order must be 0 or >= 2");
  p.validate();
  cplx sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < trials; ++i) {
    const uint64_t sub = rng::derive(seed, rng::kRoleData, static_cast<uint64_t>(i));
    const cvec x = (mpsk_order == 0) ? random_uniform_phase(p.n, sub)
                                     : random_mpsk(p.n, mpsk_order, sub);
    const cplx chi = af_ccdt_closed_form(p, x, delta, tau);
    sum += chi;
    sum_sq += std::norm(chi);
  }
  RandomAfEstimate est;
  est.trials = trials;
  est.mean = sum / static_cast<double>(trials);
  if (trials > 1) {
    const double resid = sum_sq - static_cast<double>(trials) * std::norm(est.mean);
    est.std_error = std::sqrt(std::max(0.0, resid) /
                              (static_cast<double>(trials) * (trials - 1)));
  }
  return est;
}

}  // namespace ccdt
