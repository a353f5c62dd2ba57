#include "detection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "rng.hpp"

namespace ccdt {

std::vector<double> doppler_grid(int h) {
  if (h < 1) throw std::invalid_argument("doppler_grid: need at least one hypothesis");
  std::vector<double> grid(static_cast<size_t>(h));
  for (int k = 0; k < h; ++k)
    grid[static_cast<size_t>(k)] = static_cast<double>(2 * k - h + 1) / h;
  return grid;
}

double correlate_periodic(const cvec& r, const cvec& s_ref, int tau, double doppler) {
  const int n = static_cast<int>(r.size());
  if (n == 0 || s_ref.size() != r.size())
    throw std::invalid_argument("correlate_periodic: length mismatch");
  cplx acc = 0.0;
  for (int t = 0; t < n; ++t) {
    const cplx ramp = std::polar(1.0, -kTwoPi * doppler * t / n);
    acc += r[static_cast<size_t>(t)] * std::conj(s_ref[static_cast<size_t>(imod(t - tau, n))]) *
           ramp;
  }
  return std::abs(acc) / static_cast<double>(n);
}

CorrelatorBank::CorrelatorBank(int n, std::vector<double> dopplers, std::vector<int> delays)
    : n_(n), dopplers_(std::move(dopplers)), delays_(std::move(delays)) {
  if (n_ < 1) throw std::invalid_argument("CorrelatorBank: bad length");
  if (dopplers_.empty() || delays_.empty())
    throw std::invalid_argument("CorrelatorBank: empty hypothesis grid");
  if (!std::is_sorted(dopplers_.begin(), dopplers_.end()) ||
      !std::is_sorted(delays_.begin(), delays_.end()))
    throw std::invalid_argument("CorrelatorBank: grids must be ascending");
  ramps_.reserve(dopplers_.size());
  for (double d : dopplers_) {
    cvec ramp(static_cast<size_t>(n_));
    for (int t = 0; t < n_; ++t)
      ramp[static_cast<size_t>(t)] = std::polar(1.0, -kTwoPi * d * t / n_);
    ramps_.push_back(std::move(ramp));
  }
}

DetectionPeak CorrelatorBank::detect(const cvec& r, const cvec& s_ref) const {
  if (static_cast<int>(r.size()) != n_ || s_ref.size() != r.size())
    throw std::invalid_argument("CorrelatorBank: length mismatch");
  DetectionPeak peak;
  peak.value = -1.0;
  cvec lagged(static_cast<size_t>(n_));
  for (size_t ti = 0; ti < delays_.size(); ++ti) {
    const int tau = delays_[ti];
    int idx = static_cast<int>(imod(-tau, n_));
    for (int t = 0; t < n_; ++t) {
      lagged[static_cast<size_t>(t)] = r[static_cast<size_t>(t)] *
                                       std::conj(s_ref[static_cast<size_t>(idx)]);
      if (++idx == n_) idx = 0;
    }
    for (size_t di = 0; di < ramps_.size(); ++di) {
      const cvec& ramp = ramps_[di];
      double re = 0.0, im = 0.0;
      for (int t = 0; t < n_; ++t) {
        const cplx& a = lagged[static_cast<size_t>(t)];
        const cplx& b = ramp[static_cast<size_t>(t)];
        re += a.real() * b.real() - a.imag() * b.imag();
        im += a.real() * b.imag() + a.imag() * b.real();
      }
      const double value = std::sqrt(re * re + im * im) / static_cast<double>(n_);
      if (value > peak.value) {
        peak.value = value;
        peak.tau = tau;
        peak.doppler = dopplers_[di];
        peak.tau_index = static_cast<int>(ti);
        peak.doppler_index = static_cast<int>(di);
      }
    }
  }
  return peak;
}

void parallel_for(int64_t count, int threads, const std::function<void(int64_t)>& fn) {
  if (count <= 0) return;
  if (threads <= 1) {
    for (int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const int workers = static_cast<int>(std::min<int64_t>(threads, count));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const int64_t begin = count * w / workers;
    const int64_t end = count * (w + 1) / workers;
    pool.emplace_back([begin, end, &fn] {
      for (int64_t i = begin; i < end; ++i) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

namespace {

double quantile_no_interp(std::vector<double>& values, double q) {
  std::sort(values.begin(), values.end());
  size_t k = static_cast<size_t>(q * static_cast<double>(values.size()));
  if (k >= values.size()) k = values.size() - 1;
  return values[k];
}

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

MeanStd mean_std(const std::vector<double>& v) {
  MeanStd out;
  if (v.empty()) return out;
  double acc = 0.0;
  for (double x : v) acc += x;
  out.mean = acc / static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - out.mean) * (x - out.mean);
  out.std = v.size() > 1 ? std::sqrt(var / static_cast<double>(v.size() - 1)) : 0.0;
  return out;
}

}  // namespace

double calibrate_threshold(const CorrelatorBank& bank,
                           const std::function<cvec(uint64_t)>& ref_for_trial, double p_fa,
                           int noise_trials, uint64_t seed) {
  if (p_fa <= 0.0 || p_fa >= 1.0)
    throw std::invalid_argument("calibrate_threshold: p_fa must be in (0, 1)");
  if (static_cast<double>(noise_trials) < 100.0 / p_fa)
    throw std::invalid_argument("calibrate_threshold: too few noise trials for requested quantile");
  std::vector<double> stats(static_cast<size_t>(noise_trials));
  for (int64_t i = 0; i < noise_trials; ++i) {
    const cvec ref = ref_for_trial(static_cast<uint64_t>(i));
    cvec r(ref.size(), cplx(0.0, 0.0));
    std::mt19937_64 gen = rng::make(rng::derive(seed, rng::kRoleCalibration, i, 0));
    add_awgn(r, 1.0, gen);
    stats[static_cast<size_t>(i)] = bank.detect(r, ref).value;
  }
  return quantile_no_interp(stats, 1.0 - p_fa);
}

namespace {

struct AcqTrial {
  bool miss = false;
  double te_samples = 0.0;
  double delta_err = 0.0;
};

}  // namespace

AcquisitionStats run_acquisition(const AcquisitionConfig& config) {
  ChirpParams chirp = config.chirp;
  chirp.n = config.link.n;
  if (config.waveform == Waveform::kCcdt) chirp.validate();
  if (config.trials < 1) throw std::invalid_argument("run_acquisition: need at least one trial");

  const int n = config.link.n;
  const int n_cp = config.link.n_cp;
  const double f_s = config.link.sample_rate_hz();
  const cvec x = make_sequence(config.sequence, n, rng::derive(config.seed, rng::kRoleData, 0));
  const cvec s = modulate(config.waveform, chirp, x);
  const cvec s_cp = add_cp(s, n_cp);

  const TapProfile profile = vehicular_a(f_s);
  for (int d : profile.delays)
    if (d > n_cp) throw std::invalid_argument("run_acquisition: profile exceeds cyclic prefix");
  const double f_d = doppler_cycles_per_sample(config.velocity_kmh, config.link.f_c_hz, f_s);
  const double sigma2 = noise_variance(config.snr_db);

  std::vector<int> all_delays(static_cast<size_t>(n));
  for (int t = 0; t < n; ++t) all_delays[static_cast<size_t>(t)] = t;
  const CorrelatorBank bank(n, doppler_grid(config.doppler_hypotheses), all_delays);

  std::vector<AcqTrial> outcomes(static_cast<size_t>(config.trials));
  parallel_for(config.trials, config.threads, [&](int64_t trial) {
    std::vector<cvec> gains;
    gains.reserve(profile.delays.size());
    for (size_t l = 0; l < profile.delays.size(); ++l) {
      std::mt19937_64 gen = rng::make(rng::derive(config.seed, rng::kRoleFading, trial, l));
      gains.push_back(clarke_fading(f_d, config.clarke_paths, n_cp + n, gen));
    }
    cvec r = apply_multipath(s_cp, n_cp, profile, gains);

    std::mt19937_64 offset_gen = rng::make(rng::derive(config.seed, rng::kRoleFreqOffset, trial));
    std::uniform_real_distribution<double> offset_draw(-config.freq_offset_span,
                                                       config.freq_offset_span);
    const double f_o = config.freq_offset_span > 0.0 ? offset_draw(offset_gen) : 0.0;
    if (f_o != 0.0) r = apply_freq_offset(r, f_o);

    std::mt19937_64 noise_gen = rng::make(rng::derive(config.seed, rng::kRoleNoise, trial));
    add_awgn(r, sigma2, noise_gen);

    const DetectionPeak peak = bank.detect(r, s);
    AcqTrial& out = outcomes[static_cast<size_t>(trial)];
    out.miss = true;
    double best = static_cast<double>(n);
    for (int d : profile.delays) {
      if (peak.tau == d) out.miss = false;
      best = std::min(best, std::abs(static_cast<double>(peak.tau - d)));
    }
    out.te_samples = best;
    out.delta_err = std::abs(peak.doppler - f_o);
  });

  AcquisitionStats stats;
  stats.trials = config.trials;
  std::vector<double> te_s, tau_err, delta_err;
  for (const AcqTrial& out : outcomes) {
    if (out.miss) ++stats.misses;
    if (config.errors_on_hits_only && out.miss) continue;
    te_s.push_back(out.te_samples / f_s);
    tau_err.push_back(out.te_samples);
    delta_err.push_back(out.delta_err);
  }
  stats.p_md = static_cast<double>(stats.misses) / static_cast<double>(config.trials);
  const MeanStd te = mean_std(te_s);
  stats.mean_te_s = te.mean;
  stats.std_te_s = te.std;
  stats.mean_abs_tau_err = mean_std(tau_err).mean;
  stats.mean_abs_delta_err = mean_std(delta_err).mean;
  return stats;
}

namespace {

cvec tracking_reference(const TrackingConfig& config, const ChirpParams& chirp, uint64_t role,
                        uint64_t trial) {
  const cvec x = make_sequence(config.sequence, config.link.n,
                               rng::derive(config.seed, role, trial, 1));
  return modulate(config.waveform, chirp, x);
}

CorrelatorBank tracking_bank(const TrackingConfig& config) {
  std::vector<int> delays(static_cast<size_t>(config.link.n_cp) + 1);
  for (int d = 0; d <= config.link.n_cp; ++d) delays[static_cast<size_t>(d)] = d;
  return CorrelatorBank(config.link.n, doppler_grid(config.link.n), delays);
}

}  // namespace

double calibrate_tracking_threshold(const TrackingConfig& config) {
  ChirpParams chirp = config.chirp;
  chirp.n = config.link.n;
  const CorrelatorBank bank = tracking_bank(config);
  const bool random_payload = config.sequence.family == SequenceFamily::kMpsk;
  const cvec fixed_ref =
      random_payload ? cvec() : tracking_reference(config, chirp, rng::kRoleCalibration, 0);
  std::vector<double> stats(static_cast<size_t>(config.noise_trials));
  if (config.p_fa <= 0.0 || config.p_fa >= 1.0)
    throw std::invalid_argument("calibrate_tracking_threshold: p_fa must be in (0, 1)");
  if (static_cast<double>(config.noise_trials) < 100.0 / config.p_fa)
    throw std::invalid_argument("calibrate_tracking_threshold: too few noise trials");
  parallel_for(config.noise_trials, config.threads, [&](int64_t trial) {
    const cvec ref = random_payload
                         ? tracking_reference(config, chirp, rng::kRoleCalibration, trial)
                         : fixed_ref;
    cvec r(ref.size(), cplx(0.0, 0.0));
    std::mt19937_64 gen = rng::make(rng::derive(config.seed, rng::kRoleCalibration, trial, 0));
    add_awgn(r, 1.0, gen);
    stats[static_cast<size_t>(trial)] = bank.detect(r, ref).value;
  });
  return quantile_no_interp(stats, 1.0 - config.p_fa);
}

namespace {

struct TrackTrial {
  bool detected = false;
  double tau_err = 0.0;
  double delta_err = 0.0;
};

}  // namespace

TrackingStats run_tracking(const TrackingConfig& config) {
  ChirpParams chirp = config.chirp;
  chirp.n = config.link.n;
  if (config.waveform == Waveform::kCcdt) chirp.validate();
  if (config.trials < 1) throw std::invalid_argument("run_tracking: need at least one trial");
  if (config.target_powers.empty())
    throw std::invalid_argument("run_tracking: need at least one target");

  const int n_cp = config.link.n_cp;
  const double sigma2 = noise_variance(config.snr_db);
  const double sigma = std::sqrt(sigma2);
  const double gamma_unit = config.threshold_unit_noise > 0.0
                                ? config.threshold_unit_noise
                                : calibrate_tracking_threshold(config);
  const double gamma = gamma_unit * sigma;
  const CorrelatorBank bank = tracking_bank(config);

  const bool random_payload = config.sequence.family == SequenceFamily::kMpsk;
  const cvec fixed_ref = random_payload ? cvec() : tracking_reference(config, chirp, rng::kRoleData, 0);
  const size_t strongest = static_cast<size_t>(
      std::max_element(config.target_powers.begin(), config.target_powers.end()) -
      config.target_powers.begin());

  std::vector<TrackTrial> outcomes(static_cast<size_t>(config.trials));
  parallel_for(config.trials, config.threads, [&](int64_t trial) {
    const cvec s = random_payload ? tracking_reference(config, chirp, rng::kRoleData, trial)
                                  : fixed_ref;

    std::mt19937_64 target_gen = rng::make(rng::derive(config.seed, rng::kRoleTargets, trial));
    std::uniform_int_distribution<int> delay_draw(0, n_cp);
    std::uniform_real_distribution<double> doppler_draw(-1.0, 1.0);
    std::uniform_real_distribution<double> phase_draw(-kPi, kPi);
    std::vector<RadarTarget> targets;
    targets.reserve(config.target_powers.size());
    for (double p : config.target_powers) {
      RadarTarget t;
      t.delay = delay_draw(target_gen);
      t.doppler = doppler_draw(target_gen);
      t.phase = phase_draw(target_gen);
      t.power = p;
      targets.push_back(t);
    }

    cvec r = radar_channel(s, targets);
    std::mt19937_64 noise_gen = rng::make(rng::derive(config.seed, rng::kRoleNoise, trial));
    add_awgn(r, sigma2, noise_gen);

    const DetectionPeak peak = bank.detect(r, s);
    TrackTrial& out = outcomes[static_cast<size_t>(trial)];
    out.detected = peak.value >= gamma;
    if (out.detected) {
      out.tau_err = std::abs(static_cast<double>(peak.tau - targets[strongest].delay));
      out.delta_err = std::abs(peak.doppler - targets[strongest].doppler);
    }
  });

  TrackingStats stats;
  stats.trials = config.trials;
  stats.threshold = gamma;
  std::vector<double> tau_err, delta_err;
  for (const TrackTrial& out : outcomes) {
    if (!out.detected) continue;
    ++stats.detections;
    tau_err.push_back(out.tau_err);
    delta_err.push_back(out.delta_err);
  }
  stats.detection_rate = static_cast<double>(stats.detections) / static_cast<double>(config.trials);
  const MeanStd tau = mean_std(tau_err);
  const MeanStd delta = mean_std(delta_err);
  stats.mean_abs_tau_err = tau.mean;
  stats.std_abs_tau_err = tau.std;
  stats.mean_abs_delta_err = delta.mean;
  stats.std_abs_delta_err = delta.std;
  const double f_s = config.link.sample_rate_hz();
  stats.mean_te_s = tau.mean / f_s;
  stats.std_te_s = tau.std / f_s;
  return stats;
}

}  // namespace ccdt
