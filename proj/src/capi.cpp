// C ABI shim over the C++ core: exceptions become status codes plus a
// thread-local message, complex buffers are copied at the boundary.
#include "ccdt/ccdt.h"

#include <cstring>
#include <exception>
#include <new>
#include <stdexcept>
#include <string>

#include "core/ambiguity.hpp"
#include "core/detection.hpp"
#include "core/papr.hpp"
#include "core/sequences.hpp"
#include "core/verify.hpp"
#include "core/waveform.hpp"

namespace {

thread_local std::string g_last_error;

ccdt_status fail(ccdt_status code, const char* message) {
  g_last_error = message;
  return code;
}

template <typename Fn>
ccdt_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    return fail(CCDT_ERROR_INVALID, e.what());
  } catch (const std::exception& e) {
    return fail(CCDT_ERROR_INTERNAL, e.what());
  } catch (...) {
    return fail(CCDT_ERROR_INTERNAL, "unknown error");
  }
}

ccdt::cvec to_cvec(const ccdt_complex* data, int n) {
  if (data == nullptr || n < 1) throw std::invalid_argument("null or empty sample buffer");
  ccdt::cvec out(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = {data[i].re, data[i].im};
  return out;
}

void from_cvec(const ccdt::cvec& v, ccdt_complex* out) {
  for (size_t i = 0; i < v.size(); ++i) out[i] = {v[i].real(), v[i].imag()};
}

ccdt::Waveform to_waveform(int waveform) {
  switch (waveform) {
    case CCDT_WAVEFORM_CHIRP: return ccdt::Waveform::kCcdt;
    case CCDT_WAVEFORM_OFDM: return ccdt::Waveform::kOfdm;
    case CCDT_WAVEFORM_DFTS_OFDM: return ccdt::Waveform::kDftsOfdm;
    default: throw std::invalid_argument("unknown waveform id");
  }
}

ccdt::ChirpParams to_chirp(const ccdt_chirp_params* params, int waveform, int n) {
  ccdt::ChirpParams p;
  p.n = n;
  if (params != nullptr) {
    p.two_alpha = params->two_alpha;
    p.two_beta = params->two_beta;
    p.gamma = params->gamma;
    if (params->n > 0) p.n = params->n;
  } else if (waveform == CCDT_WAVEFORM_CHIRP) {
    throw std::invalid_argument("chirp waveform needs chirp parameters");
  }
  if (n > 0 && p.n != n) throw std::invalid_argument("chirp length disagrees with data length");
  if (waveform == CCDT_WAVEFORM_CHIRP) p.validate();
  return p;
}

ccdt::LfsrSpec to_lfsr(int degree, const int* taps, int num_taps, uint32_t init) {
  if (num_taps <= 0) {
    ccdt::LfsrSpec spec = ccdt::default_lfsr(degree);
    if (init != 0) spec.init = init;
    return spec;
  }
  ccdt::LfsrSpec spec;
  spec.degree = degree;
  spec.taps.assign(taps, taps + num_taps);
  spec.init = init;
  return spec;
}

ccdt::SequenceSpec to_sequence_spec(const ccdt_sequence_spec* spec) {
  if (spec == nullptr) throw std::invalid_argument("null sequence spec");
  ccdt::SequenceSpec out;
  switch (spec->family) {
    case CCDT_FAMILY_MSEQUENCE: out.family = ccdt::SequenceFamily::kMSequence; break;
    case CCDT_FAMILY_ZADOFF_CHU: out.family = ccdt::SequenceFamily::kZadoffChu; break;
    case CCDT_FAMILY_DFT: out.family = ccdt::SequenceFamily::kDft; break;
    case CCDT_FAMILY_MPSK: out.family = ccdt::SequenceFamily::kMpsk; break;
    default: throw std::invalid_argument("unknown sequence family id");
  }
  out.lfsr = to_lfsr(spec->lfsr_degree, spec->lfsr_taps, spec->lfsr_num_taps, spec->lfsr_init);
  out.zc_root = spec->zc_root;
  out.dft_tone = spec->dft_tone;
  out.mpsk_order = spec->mpsk_order;
  return out;
}

ccdt::LinkParams to_link(int n, int n_cp, double f_scs_hz, double f_c_hz) {
  ccdt::LinkParams link;
  link.n = n;
  link.n_cp = n_cp;
  link.f_scs_hz = f_scs_hz;
  link.f_c_hz = f_c_hz;
  return link;
}

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

ccdt::TrackingConfig to_tracking(const ccdt_tracking_config* config) {
  require(config != nullptr, "null config");
  require(config->num_targets >= 1 &&
              config->num_targets <= static_cast<int>(sizeof(config->target_powers) /
                                                      sizeof(config->target_powers[0])),
          "num_targets out of range");
  ccdt::TrackingConfig cfg;
  cfg.waveform = to_waveform(config->waveform);
  cfg.chirp = to_chirp(&config->chirp, config->waveform, config->n);
  cfg.sequence = to_sequence_spec(&config->sequence);
  cfg.link = to_link(config->n, config->n_cp, config->f_scs_hz, config->f_c_hz);
  cfg.target_powers.assign(config->target_powers, config->target_powers + config->num_targets);
  cfg.snr_db = config->snr_db;
  cfg.p_fa = config->p_fa;
  cfg.noise_trials = config->noise_trials;
  cfg.trials = config->trials;
  cfg.threads = config->threads;
  cfg.seed = config->seed;
  cfg.threshold_unit_noise = config->threshold_unit_noise;
  return cfg;
}

}  // namespace

struct ccdt_sequence {
  ccdt::cvec samples;
};

extern "C" {

const char* ccdt_version(void) { return "1.0.0"; }

const char* ccdt_last_error(void) { return g_last_error.c_str(); }

void ccdt_chirp_params_default(ccdt_chirp_params* params) {
  if (params == nullptr) return;
  params->n = 127;
  params->two_alpha = 4;
  params->two_beta = 2;
  params->gamma = 0.0;
}

void ccdt_sequence_spec_default(ccdt_sequence_spec* spec) {
  if (spec == nullptr) return;
  std::memset(spec, 0, sizeof(*spec));
  spec->family = CCDT_FAMILY_MSEQUENCE;
  spec->lfsr_degree = 7;
  spec->lfsr_num_taps = 0;
  spec->lfsr_init = 0xffffffffu;
  spec->zc_root = 3;
  spec->dft_tone = 5;
  spec->mpsk_order = 4;
}

ccdt_status ccdt_sequence_create(const ccdt_sequence_spec* spec, int n, uint64_t seed,
                                 ccdt_sequence** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    ccdt::cvec samples = ccdt::make_sequence(to_sequence_spec(spec), n, seed);
    *out = new ccdt_sequence{std::move(samples)};
    return CCDT_OK;
  });
}

ccdt_status ccdt_sequence_length(const ccdt_sequence* seq, int* out) {
  return guarded([&] {
    require(seq != nullptr && out != nullptr, "null argument");
    *out = static_cast<int>(seq->samples.size());
    return CCDT_OK;
  });
}

ccdt_status ccdt_sequence_copy(const ccdt_sequence* seq, ccdt_complex* out) {
  return guarded([&] {
    require(seq != nullptr && out != nullptr, "null argument");
    from_cvec(seq->samples, out);
    return CCDT_OK;
  });
}

void ccdt_sequence_free(ccdt_sequence* seq) { delete seq; }

ccdt_status ccdt_modulate(int waveform, const ccdt_chirp_params* params, const ccdt_complex* data,
                          int n, ccdt_complex* out) {
  return guarded([&] {
    require(out != nullptr, "null output buffer");
    const ccdt::cvec x = to_cvec(data, n);
    const ccdt::ChirpParams p = to_chirp(params, waveform, n);
    from_cvec(ccdt::modulate(to_waveform(waveform), p, x), out);
    return CCDT_OK;
  });
}

ccdt_status ccdt_upsample(int waveform, const ccdt_chirp_params* params, const ccdt_complex* data,
                          int n, int q, ccdt_complex* out) {
  return guarded([&] {
    require(out != nullptr, "null output buffer");
    const ccdt::cvec x = to_cvec(data, n);
    const ccdt::ChirpParams p = to_chirp(params, waveform, n);
    from_cvec(ccdt::upsample(to_waveform(waveform), p, x, q), out);
    return CCDT_OK;
  });
}

ccdt_status ccdt_af_point(const ccdt_complex* signal, int n, int64_t delta, int64_t tau,
                          ccdt_complex* out) {
  return guarded([&] {
    require(out != nullptr, "null output buffer");
    const ccdt::cplx value = ccdt::af_definition(to_cvec(signal, n), delta, tau);
    *out = {value.real(), value.imag()};
    return CCDT_OK;
  });
}

ccdt_status ccdt_af_point_real(const ccdt_complex* signal, int n, double delta, int64_t tau,
                               ccdt_complex* out) {
  return guarded([&] {
    require(out != nullptr, "null output buffer");
    const ccdt::cplx value = ccdt::af_definition_real(to_cvec(signal, n), delta, tau);
    *out = {value.real(), value.imag()};
    return CCDT_OK;
  });
}

ccdt_status ccdt_af_closed_form(int waveform, const ccdt_chirp_params* params,
                                const ccdt_complex* data, int n, int64_t delta, int64_t tau,
                                ccdt_complex* out) {
  return guarded([&] {
    require(out != nullptr, "null output buffer");
    const ccdt::cvec x = to_cvec(data, n);
    ccdt::cplx value;
    switch (to_waveform(waveform)) {
      case ccdt::Waveform::kCcdt:
        value = ccdt::af_ccdt_closed_form(to_chirp(params, waveform, n), x, delta, tau);
        break;
      case ccdt::Waveform::kOfdm:
        value = ccdt::af_ofdm(x, delta, tau);
        break;
      case ccdt::Waveform::kDftsOfdm:
        value = ccdt::af_dfts_ofdm(x, delta, tau);
        break;
    }
    *out = {value.real(), value.imag()};
    return CCDT_OK;
  });
}

ccdt_status ccdt_af_fractional(const ccdt_chirp_params* params, const ccdt_complex* data,
                               double delta, int64_t tau, ccdt_complex* out) {
  return guarded([&] {
    require(out != nullptr && params != nullptr, "null argument");
    const ccdt::cvec x = to_cvec(data, params->n);
    const ccdt::cplx value =
        ccdt::af_fractional(to_chirp(params, CCDT_WAVEFORM_CHIRP, params->n), x, delta, tau);
    *out = {value.real(), value.imag()};
    return CCDT_OK;
  });
}

ccdt_status ccdt_af_upsampled(const ccdt_chirp_params* params, const ccdt_complex* data, int q,
                              int64_t delta, int64_t tau, ccdt_complex* out) {
  return guarded([&] {
    require(out != nullptr && params != nullptr, "null argument");
    const ccdt::cvec x = to_cvec(data, params->n);
    const ccdt::cplx value =
        ccdt::af_upsampled(to_chirp(params, CCDT_WAVEFORM_CHIRP, params->n), x, q, delta, tau);
    *out = {value.real(), value.imag()};
    return CCDT_OK;
  });
}

ccdt_status ccdt_af_surface(int waveform, const ccdt_chirp_params* params,
                            const ccdt_complex* data, int n, int q, ccdt_complex* out) {
  return guarded([&] {
    require(out != nullptr, "null output buffer");
    require(q >= 1, "upsampling factor must be >= 1");
    const ccdt::cvec x = to_cvec(data, n);
    const ccdt::ChirpParams p = to_chirp(params, waveform, n);
    const ccdt::Waveform kind = to_waveform(waveform);
    const ccdt::cvec s = q == 1 ? ccdt::modulate(kind, p, x) : ccdt::upsample(kind, p, x, q);
    from_cvec(ccdt::af_surface(s), out);
    return CCDT_OK;
  });
}

ccdt_status ccdt_papr(int waveform, const ccdt_chirp_params* params, const ccdt_complex* data,
                      int n, int q, double* papr_db, int* peak_index) {
  return guarded([&] {
    require(papr_db != nullptr, "null output");
    const ccdt::cvec x = to_cvec(data, n);
    const ccdt::ChirpParams p = to_chirp(params, waveform, n);
    const ccdt::PaprResult result = ccdt::papr_upsampled(to_waveform(waveform), p, x, q);
    *papr_db = result.papr_db;
    if (peak_index != nullptr) *peak_index = result.peak_index;
    return CCDT_OK;
  });
}

ccdt_status ccdt_papr_sweep(int waveform, const ccdt_chirp_params* params, int family, int q,
                            int* roots, double* paprs_db, int capacity, int* count) {
  return guarded([&] {
    require(roots != nullptr && paprs_db != nullptr && count != nullptr, "null output");
    require(params != nullptr, "sweep needs chirp parameters for the length");
    require(family == 0 || family == 1, "family must be 0 (Zadoff-Chu) or 1 (DFT)");
    const ccdt::ChirpParams p = to_chirp(params, waveform, params->n);
    const std::vector<ccdt::PaprSweepEntry> entries = ccdt::papr_sweep(
        to_waveform(waveform), p,
        family == 0 ? ccdt::SweepFamily::kZadoffChu : ccdt::SweepFamily::kDft, q);
    require(static_cast<int>(entries.size()) <= capacity, "sweep output capacity too small");
    *count = static_cast<int>(entries.size());
    for (size_t i = 0; i < entries.size(); ++i) {
      roots[i] = entries[i].root;
      paprs_db[i] = entries[i].papr_db;
    }
    return CCDT_OK;
  });
}

void ccdt_verify_options_default(ccdt_verify_options* options) {
  if (options == nullptr) return;
  std::memset(options, 0, sizeof(*options));
  options->n = 127;
  ccdt_chirp_params_default(&options->chirp);
  options->zc_root = 3;
  options->dft_tone = 5;
  options->lfsr_degree = 7;
  options->lfsr_num_taps = 0;
  options->lfsr_init = 0xffffffffu;
  options->seed = 1;
  options->tolerance = 0.0;
}

ccdt_status ccdt_verify_run(const ccdt_verify_options* options, ccdt_property_result* results,
                            int capacity, int* count) {
  return guarded([&] {
    require(options != nullptr && results != nullptr && count != nullptr, "null argument");
    ccdt::VerifyOptions opts;
    opts.n = options->n;
    opts.chirp.n = options->n;
    opts.chirp.two_alpha = options->chirp.two_alpha;
    opts.chirp.two_beta = options->chirp.two_beta;
    opts.chirp.gamma = options->chirp.gamma;
    opts.zc_root = options->zc_root;
    opts.dft_tone = options->dft_tone;
    opts.lfsr = to_lfsr(options->lfsr_degree, options->lfsr_taps, options->lfsr_num_taps,
                        options->lfsr_init);
    opts.seed = options->seed;
    opts.tolerance = options->tolerance;
    const std::vector<ccdt::PropertyResult> suite = ccdt::run_property_suite(opts);
    require(static_cast<int>(suite.size()) <= capacity, "result capacity too small");
    *count = static_cast<int>(suite.size());
    for (size_t i = 0; i < suite.size(); ++i) {
      std::memset(results[i].name, 0, sizeof(results[i].name));
      std::strncpy(results[i].name, suite[i].name.c_str(), sizeof(results[i].name) - 1);
      results[i].max_deviation = suite[i].max_deviation;
      results[i].tolerance = suite[i].tolerance;
      results[i].passed = suite[i].passed ? 1 : 0;
    }
    return CCDT_OK;
  });
}

void ccdt_acquisition_config_default(ccdt_acquisition_config* config) {
  if (config == nullptr) return;
  std::memset(config, 0, sizeof(*config));
  config->waveform = CCDT_WAVEFORM_CHIRP;
  ccdt_chirp_params_default(&config->chirp);
  ccdt_sequence_spec_default(&config->sequence);
  config->n = 127;
  config->n_cp = 12;
  config->f_scs_hz = 15e3;
  config->f_c_hz = 6e9;
  config->velocity_kmh = 100.0;
  config->snr_db = 0.0;
  config->doppler_hypotheses = 3;
  config->freq_offset_span = 1.0;
  config->clarke_paths = 5;
  config->trials = 1000;
  config->threads = 1;
  config->seed = 1;
  config->errors_on_hits_only = 0;
}

void ccdt_tracking_config_default(ccdt_tracking_config* config) {
  if (config == nullptr) return;
  std::memset(config, 0, sizeof(*config));
  config->waveform = CCDT_WAVEFORM_CHIRP;
  ccdt_chirp_params_default(&config->chirp);
  ccdt_sequence_spec_default(&config->sequence);
  config->n = 127;
  config->n_cp = 12;
  config->f_scs_hz = 15e3;
  config->f_c_hz = 6e9;
  config->target_powers[0] = 1.0;
  config->target_powers[1] = 0.75;
  config->target_powers[2] = 0.5;
  config->target_powers[3] = 0.25;
  config->num_targets = 4;
  config->snr_db = 0.0;
  config->p_fa = 0.01;
  config->noise_trials = 10000;
  config->trials = 1000;
  config->threads = 1;
  config->seed = 1;
  config->threshold_unit_noise = 0.0;
}

ccdt_status ccdt_run_acquisition(const ccdt_acquisition_config* config,
                                 ccdt_acquisition_stats* stats) {
  return guarded([&] {
    require(config != nullptr && stats != nullptr, "null argument");
    ccdt::AcquisitionConfig cfg;
    cfg.waveform = to_waveform(config->waveform);
    cfg.chirp = to_chirp(&config->chirp, config->waveform, config->n);
    cfg.sequence = to_sequence_spec(&config->sequence);
    cfg.link = to_link(config->n, config->n_cp, config->f_scs_hz, config->f_c_hz);
    cfg.velocity_kmh = config->velocity_kmh;
    cfg.snr_db = config->snr_db;
    cfg.doppler_hypotheses = config->doppler_hypotheses;
    cfg.freq_offset_span = config->freq_offset_span;
    cfg.clarke_paths = config->clarke_paths;
    cfg.trials = config->trials;
    cfg.threads = config->threads;
    cfg.seed = config->seed;
    cfg.errors_on_hits_only = config->errors_on_hits_only != 0;
    const ccdt::AcquisitionStats out = ccdt::run_acquisition(cfg);
    stats->trials = out.trials;
    stats->misses = out.misses;
    stats->p_md = out.p_md;
    stats->mean_te_s = out.mean_te_s;
    stats->std_te_s = out.std_te_s;
    stats->mean_abs_tau_err = out.mean_abs_tau_err;
    stats->mean_abs_delta_err = out.mean_abs_delta_err;
    return CCDT_OK;
  });
}

ccdt_status ccdt_run_tracking(const ccdt_tracking_config* config, ccdt_tracking_stats* stats) {
  return guarded([&] {
    require(stats != nullptr, "null argument");
    const ccdt::TrackingStats out = ccdt::run_tracking(to_tracking(config));
    stats->trials = out.trials;
    stats->detections = out.detections;
    stats->detection_rate = out.detection_rate;
    stats->threshold = out.threshold;
    stats->mean_abs_tau_err = out.mean_abs_tau_err;
    stats->std_abs_tau_err = out.std_abs_tau_err;
    stats->mean_abs_delta_err = out.mean_abs_delta_err;
    stats->std_abs_delta_err = out.std_abs_delta_err;
    stats->mean_te_s = out.mean_te_s;
    stats->std_te_s = out.std_te_s;
    return CCDT_OK;
  });
}

ccdt_status ccdt_tracking_calibrate(const ccdt_tracking_config* config,
                                    double* threshold_unit_noise) {
  return guarded([&] {
    require(threshold_unit_noise != nullptr, "null output");
    *threshold_unit_noise = ccdt::calibrate_tracking_threshold(to_tracking(config));
    return CCDT_OK;
  });
}

}  // extern "C"
