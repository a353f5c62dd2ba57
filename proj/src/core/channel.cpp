#include "channel.hpp"

#include <cmath>
#include <stdexcept>

namespace ccdt {

double doppler_cycles_per_sample(double v_kmh, double f_c_hz, double sample_rate_hz) {
  if (sample_rate_hz <= 0.0) throw std::invalid_argument("doppler: sample rate must be positive");
  const double v = v_kmh / 3.6;  // m/s
  return (v / kSpeedOfLight) * f_c_hz / sample_rate_hz;
}

TapProfile vehicular_a(double sample_rate_hz) {
  if (sample_rate_hz <= 0.0) throw std::invalid_argument("vehicular_a: sample rate must be positive");
  // Excess delays in microseconds and normalized linear powers.  The first
  // two 0 dB / -1 dB taps and the remaining ones are normalized to sum to 1.
  const double delays_us[5] = {0.0, 0.52, 1.05, 1.57, 2.62};
  const double powers[5] = {0.4850, 0.4463, 0.0485, 0.0153, 0.0049};
  TapProfile profile;
  for (int l = 0; l < 5; ++l) {
    profile.delays.push_back(static_cast<int>(std::lround(delays_us[l] * 1e-6 * sample_rate_hz)));
    profile.powers.push_back(powers[l]);
  }
  return profile;
}

cvec clarke_fading(double f_d_cycles_per_sample, int paths, int count, std::mt19937_64& gen) {
  if (paths < 1) throw std::invalid_argument("clarke_fading: need at least one path");
  if (count < 1) throw std::invalid_argument("clarke_fading: need at least one sample");
  std::uniform_real_distribution<double> uniform(-kPi, kPi);
  std::vector<double> rate(static_cast<size_t>(paths));
  std::vector<double> phase(static_cast<size_t>(paths));
  for (int p = 0; p < paths; ++p) {
    rate[static_cast<size_t>(p)] = kTwoPi * f_d_cycles_per_sample * std::cos(uniform(gen));
    phase[static_cast<size_t>(p)] = uniform(gen);
  }
  const double amp = 1.0 / std::sqrt(static_cast<double>(paths));
  cvec h(static_cast<size_t>(count));
  for (int t = 0; t < count; ++t) {
    cplx acc = 0.0;
    for (int p = 0; p < paths; ++p)
      acc += std::polar(1.0, rate[static_cast<size_t>(p)] * t + phase[static_cast<size_t>(p)]);
    h[static_cast<size_t>(t)] = amp * acc;
  }
  return h;
}

cvec apply_multipath(const cvec& s_cp, int n_cp, const TapProfile& profile,
                     const std::vector<cvec>& gains) {
  const int total = static_cast<int>(s_cp.size());
  const int n = total - n_cp;
  if (n_cp < 0 || n <= 0) throw std::invalid_argument("apply_multipath: bad prefix length");
  if (profile.delays.size() != profile.powers.size() || profile.delays.empty())
    throw std::invalid_argument("apply_multipath: malformed tap profile");
  if (gains.size() != profile.delays.size())
    throw std::invalid_argument("apply_multipath: one gain track per tap required");
  for (const cvec& g : gains)
    if (static_cast<int>(g.size()) < total)
      throw std::invalid_argument("apply_multipath: gain track shorter than symbol");
  for (int d : profile.delays)
    if (d < 0 || d > n_cp)
      throw std::invalid_argument("apply_multipath: tap delay exceeds cyclic prefix");

  cvec r(static_cast<size_t>(n), cplx(0.0, 0.0));
  for (size_t l = 0; l < profile.delays.size(); ++l) {
    const double amp = std::sqrt(profile.powers[l]);
    const int delay = profile.delays[l];
    for (int t = 0; t < n; ++t) {
      const int rx = t + n_cp;  // receive-window index
      r[static_cast<size_t>(t)] += amp * gains[l][static_cast<size_t>(rx)] *
                                   s_cp[static_cast<size_t>(rx - delay)];
    }
  }
  return r;
}

cvec apply_freq_offset(const cvec& r, double offset_scs) {
  const int n = static_cast<int>(r.size());
  cvec out(r.size());
  for (int t = 0; t < n; ++t)
    out[static_cast<size_t>(t)] =
        r[static_cast<size_t>(t)] * std::polar(1.0, kTwoPi * offset_scs * t / n);
  return out;
}

void add_awgn(cvec& r, double sigma2, std::mt19937_64& gen) {
  if (sigma2 < 0.0) throw std::invalid_argument("add_awgn: negative variance");
  if (sigma2 == 0.0) return;
  std::normal_distribution<double> gauss(0.0, std::sqrt(sigma2 / 2.0));
  for (cplx& v : r) v += cplx(gauss(gen), gauss(gen));
}

cvec radar_channel(const cvec& s, const std::vector<RadarTarget>& targets) {
  const int n = static_cast<int>(s.size());
  if (n == 0) throw std::invalid_argument("radar_channel: empty symbol");
  cvec r(s.size(), cplx(0.0, 0.0));
  for (const RadarTarget& tgt : targets) {
    const double amp = std::sqrt(tgt.power);
    for (int t = 0; t < n; ++t) {
      const cplx rot = std::polar(amp, tgt.phase + kTwoPi * tgt.doppler * t / n);
      r[static_cast<size_t>(t)] += rot * s[static_cast<size_t>(imod(t - tgt.delay, n))];
    }
  }
  return r;
}

double velocity_from_doppler(double doppler_scs, double f_scs_hz, double f_c_hz) {
  return f_scs_hz * doppler_scs * kSpeedOfLight / (2.0 * f_c_hz);
}

double distance_from_delay(double delay_samples, int n, double f_scs_hz) {
  return delay_samples * kSpeedOfLight / (2.0 * static_cast<double>(n) * f_scs_hz);
}

}  // namespace ccdt
