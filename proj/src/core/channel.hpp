// Channel models for the synchronization and radar experiments: a tapped
// delay line with per-tap sum-of-sinusoids (Clarke) fading, carrier
// frequency offset, AWGN, and a point-target radar return.  All delays are
// in samples at the symbol rate f_s = n * f_scs; all Dopplers are in
// subcarrier spacings unless stated otherwise.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "types.hpp"

namespace ccdt {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct LinkParams {
  int n = 127;
  int n_cp = 12;
  double f_scs_hz = 15e3;
  double f_c_hz = 6e9;

  double sample_rate_hz() const { return static_cast<double>(n) * f_scs_hz; }
};

// Doppler shift of a reflector/mobile at v km/h, in cycles per sample.
double doppler_cycles_per_sample(double v_kmh, double f_c_hz, double sample_rate_hz);

struct TapProfile {
  std::vector<int> delays;     // samples, nondecreasing, delays[0] == 0
  std::vector<double> powers;  // linear scale
};

// ITU Vehicular A power-delay profile quantized to the given sample rate:
// excess delays {0, 0.52, 1.05, 1.57, 2.62} us, relative powers
// {0, -1, -9, -10, -15, -20} dB combined into five normalized linear taps.
TapProfile vehicular_a(double sample_rate_hz);

// Sum-of-sinusoids Rayleigh fading track of `count` samples:
//   h[t] = (1/sqrt(paths)) * sum_p exp(j*(2*pi*f_d*t*cos(theta_p) + phi_p))
// with theta_p, phi_p iid uniform on [-pi, pi).  Unit average power.
cvec clarke_fading(double f_d_cycles_per_sample, int paths, int count, std::mt19937_64& gen);

// Tapped-delay-line channel: linearly convolves the CP-extended symbol with
// the time-varying taps, then strips the prefix.
//   r[t] = sum_l sqrt(P_l) * gains[l][t + n_cp] * s_cp[t + n_cp - delay_l]
// for t in [0, n).  Each gains[l] must cover n_cp + n samples; tap delays
// must not exceed n_cp (so the output depends only on this symbol).
cvec apply_multipath(const cvec& s_cp, int n_cp, const TapProfile& profile,
                     const std::vector<cvec>& gains);

// Carrier frequency offset of offset_scs subcarrier spacings applied to the
// prefix-stripped symbol: r[t] * exp(j*2*pi*offset_scs*t/n).
cvec apply_freq_offset(const cvec& r, double offset_scs);

// Adds circularly-symmetric complex Gaussian noise of total variance sigma2
// per sample.
void add_awgn(cvec& r, double sigma2, std::mt19937_64& gen);

// Noise variance for a requested SNR against unit mean signal power.
inline double noise_variance(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

struct RadarTarget {
  int delay = 0;          // samples, in [0, n_cp]
  double doppler = 0.0;   // subcarrier spacings
  double phase = 0.0;     // radians
  double power = 1.0;     // linear
};

// Superposition of cyclically delayed, Doppler-shifted echoes of the known
// symbol s (prefix already stripped):
//   r[t] = sum_l sqrt(P_l) * exp(j*phi_l) * exp(j*2*pi*D_l*t/n) *
//          s[(t - delay_l) mod n]
cvec radar_channel(const cvec& s, const std::vector<RadarTarget>& targets);

// Round-trip radar conversions.
double velocity_from_doppler(double doppler_scs, double f_scs_hz, double f_c_hz);
double distance_from_delay(double delay_samples, int n, double f_scs_hz);

}  // namespace ccdt
