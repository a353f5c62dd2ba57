// Delay/Doppler detection and the two Monte-Carlo harnesses built on it:
// synchronization acquisition over a fading multipath downlink, and radar
// range/Doppler estimation of point targets.
//
// Reproducibility contract: every random quantity in a trial is drawn from a
// substream keyed by (master seed, role, trial index, component), and trial
// results are reduced in trial order.  Outputs are therefore bit-identical
// for a given master seed regardless of the thread count.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "channel.hpp"
#include "sequences.hpp"
#include "types.hpp"
#include "waveform.hpp"

namespace ccdt {

// Symmetric Doppler hypothesis grid {(2k - h + 1)/h : k = 0..h-1} in
// subcarrier spacings; h = 1 gives {0}, h = n the dense tracking grid with
// step 2/n.
std::vector<double> doppler_grid(int h);

// Normalized matched-filter statistic
//   rho(tau, d) = |(1/n) * sum_t r[t] * conj(s_ref[(t - tau) mod n]) *
//                 exp(-j*2*pi*d*t/n)|.
double correlate_periodic(const cvec& r, const cvec& s_ref, int tau, double doppler);

struct DetectionPeak {
  int tau = 0;
  double doppler = 0.0;
  int tau_index = 0;
  int doppler_index = 0;
  double value = 0.0;
};

// Precomputed Doppler ramps over a fixed hypothesis grid.  detect() scans
// delays (outer, ascending) and Dopplers (inner, ascending) keeping the
// first strict maximum, so ties resolve to the smallest delay, then the
// smallest Doppler.
class CorrelatorBank {
 public:
  CorrelatorBank(int n, std::vector<double> dopplers, std::vector<int> delays);

  DetectionPeak detect(const cvec& r, const cvec& s_ref) const;

  const std::vector<double>& dopplers() const { return dopplers_; }
  const std::vector<int>& delays() const { return delays_; }

 private:
  int n_;
  std::vector<double> dopplers_;
  std::vector<int> delays_;
  std::vector<cvec> ramps_;  // ramps_[d][t] = exp(-j*2*pi*dopplers_[d]*t/n)
};

// Empirical (1 - p_fa) quantile of the peak statistic under noise-only input
// of unit variance, taken as an order statistic without interpolation.
// ref_for_trial supplies the reference symbol for each noise trial (constant
// for deterministic preambles, redrawn for random payloads).  Requires
// noise_trials >= 100 / p_fa.  Thresholds for noise variance sigma2 scale as
// sqrt(sigma2) times the returned value.
double calibrate_threshold(const CorrelatorBank& bank,
                           const std::function<cvec(uint64_t)>& ref_for_trial, double p_fa,
                           int noise_trials, uint64_t seed);

// Runs fn(i) for i in [0, count) across `threads` workers (<= 1 runs
// inline).  fn must only touch slot i of any shared output.
void parallel_for(int64_t count, int threads, const std::function<void(int64_t)>& fn);

struct AcquisitionConfig {
  Waveform waveform = Waveform::kCcdt;
  ChirpParams chirp;                  // chirp.n is the symbol length for all waveforms
  SequenceSpec sequence;
  LinkParams link;
  double velocity_kmh = 100.0;
  double snr_db = 0.0;
  int doppler_hypotheses = 3;         // bank = doppler_grid(this)
  double freq_offset_span = 1.0;      // f_o/f_scs drawn uniform on +/- span
  int clarke_paths = 5;
  int trials = 1000;
  int threads = 1;
  uint64_t seed = 1;
  bool errors_on_hits_only = false;   // restrict timing stats to detected trials
};

struct AcquisitionStats {
  int trials = 0;
  int misses = 0;
  double p_md = 0.0;
  double mean_te_s = 0.0;        // mean of min_l |tau* - tau_l| / f_s
  double std_te_s = 0.0;
  double mean_abs_tau_err = 0.0; // samples, against the nearest tap
  double mean_abs_delta_err = 0.0;  // |doppler* - f_o| in subcarrier spacings
};

// One operating point: fixed waveform/sequence, velocity and SNR.  Channel,
// offset and noise substreams depend only on (seed, trial), so runs at
// different SNRs or with different waveforms share their random draws
// (common random numbers).
AcquisitionStats run_acquisition(const AcquisitionConfig& config);

struct TrackingConfig {
  Waveform waveform = Waveform::kCcdt;
  ChirpParams chirp;
  SequenceSpec sequence;              // kMSequence or kMpsk (payload per trial)
  LinkParams link;
  std::vector<double> target_powers = {1.0, 0.75, 0.5, 0.25};
  double snr_db = 0.0;
  double p_fa = 0.01;
  int noise_trials = 10000;
  int trials = 1000;
  int threads = 1;
  uint64_t seed = 1;
  double threshold_unit_noise = 0.0;  // 0: calibrate internally
};

struct TrackingStats {
  int trials = 0;
  int detections = 0;
  double detection_rate = 0.0;
  double threshold = 0.0;            // at the configured SNR
  // Error stats over detected trials, against the strongest target.
  double mean_abs_tau_err = 0.0;     // samples
  double std_abs_tau_err = 0.0;
  double mean_abs_delta_err = 0.0;   // subcarrier spacings
  double std_abs_delta_err = 0.0;
  double mean_te_s = 0.0;            // mean_abs_tau_err / f_s
  double std_te_s = 0.0;
};

// Calibration half of run_tracking, exposed so sweeps can reuse one unit-
// noise threshold across SNR points.
double calibrate_tracking_threshold(const TrackingConfig& config);

// One operating point of the radar experiment; targets are redrawn each
// trial (delays uniform on [0, n_cp], Dopplers uniform on [-1, 1] subcarrier
// spacings, phases uniform).
TrackingStats run_tracking(const TrackingConfig& config);

}  // namespace ccdt
