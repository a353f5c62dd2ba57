// Command-line front end over the C API: JSON config in, CSV out.
//
// Exit codes: 0 success, 2 configuration or argument error, 3 property
// failure from the verify battery, 4 I/O failure.  Output is deterministic
// for a fixed config and seed regardless of the thread count.
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ccdt/ccdt.h"
#include "json.hpp"

namespace {

using nlohmann::json;

constexpr int kExitConfig = 2;
constexpr int kExitProperty = 3;
constexpr int kExitIo = 4;

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void die(int code, const std::string& message) { throw CliError{code, message}; }

void check(ccdt_status status) {
  if (status != CCDT_OK) die(kExitConfig, ccdt_last_error());
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) die(kExitIo, "cannot open config file: " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    die(kExitConfig, std::string("config parse error: ") + e.what());
  }
}

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
  if (!j.is_object()) die(kExitConfig, where + " must be a JSON object");
  for (const auto& item : j.items())
    if (allowed.find(item.key()) == allowed.end())
      die(kExitConfig, "unknown key \"" + item.key() + "\" in " + where);
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    die(kExitConfig, std::string("bad value for \"") + key + "\": " + e.what());
  }
}

int waveform_from(const json& j) {
  const std::string name = get_or<std::string>(j, "waveform", "ccdt");
  if (name == "ccdt") return CCDT_WAVEFORM_CHIRP;
  if (name == "ofdm") return CCDT_WAVEFORM_OFDM;
  if (name == "dfts-ofdm" || name == "dfts_ofdm") return CCDT_WAVEFORM_DFTS_OFDM;
  die(kExitConfig, "waveform must be one of ccdt, ofdm, dfts-ofdm");
}

const char* waveform_name(int waveform) {
  switch (waveform) {
    case CCDT_WAVEFORM_CHIRP: return "ccdt";
    case CCDT_WAVEFORM_OFDM: return "ofdm";
    default: return "dfts-ofdm";
  }
}

void fill_chirp(const json& root, int n, ccdt_chirp_params* chirp) {
  ccdt_chirp_params_default(chirp);
  chirp->n = n;
  if (!root.contains("chirp")) return;
  const json& j = root.at("chirp");
  reject_unknown(j, {"two_alpha", "two_beta", "gamma"}, "chirp");
  chirp->two_alpha = get_or(j, "two_alpha", chirp->two_alpha);
  chirp->two_beta = get_or(j, "two_beta", chirp->two_beta);
  chirp->gamma = get_or(j, "gamma", chirp->gamma);
}

void fill_sequence(const json& root, ccdt_sequence_spec* spec) {
  ccdt_sequence_spec_default(spec);
  if (!root.contains("sequence")) return;
  const json& j = root.at("sequence");
  reject_unknown(j,
                 {"family", "lfsr_degree", "lfsr_taps", "lfsr_init", "zc_root", "dft_tone",
                  "mpsk_order"},
                 "sequence");
  const std::string family = get_or<std::string>(j, "family", "mseq");
  if (family == "mseq") {
    spec->family = CCDT_FAMILY_MSEQUENCE;
  } else if (family == "zc") {
    spec->family = CCDT_FAMILY_ZADOFF_CHU;
  } else if (family == "dft") {
    spec->family = CCDT_FAMILY_DFT;
  } else if (family == "mpsk") {
    spec->family = CCDT_FAMILY_MPSK;
  } else {
    die(kExitConfig, "sequence.family must be one of mseq, zc, dft, mpsk");
  }
  spec->lfsr_degree = get_or(j, "lfsr_degree", spec->lfsr_degree);
  const std::vector<int> taps = get_or(j, "lfsr_taps", std::vector<int>{});
  if (taps.size() > sizeof(spec->lfsr_taps) / sizeof(spec->lfsr_taps[0]))
    die(kExitConfig, "lfsr_taps supports at most 12 entries");
  spec->lfsr_num_taps = static_cast<int>(taps.size());
  for (size_t i = 0; i < taps.size(); ++i) spec->lfsr_taps[i] = taps[i];
  spec->lfsr_init = get_or(j, "lfsr_init", spec->lfsr_init);
  spec->zc_root = get_or(j, "zc_root", spec->zc_root);
  spec->dft_tone = get_or(j, "dft_tone", spec->dft_tone);
  spec->mpsk_order = get_or(j, "mpsk_order", spec->mpsk_order);
}

std::string sequence_name(const ccdt_sequence_spec& spec) {
  switch (spec.family) {
    case CCDT_FAMILY_MSEQUENCE: return "mseq" + std::to_string(spec.lfsr_degree);
    case CCDT_FAMILY_ZADOFF_CHU: return "zc" + std::to_string(spec.zc_root);
    case CCDT_FAMILY_DFT: return "dft" + std::to_string(spec.dft_tone);
    default: return "mpsk" + std::to_string(spec.mpsk_order);
  }
}

std::vector<double> snr_list(const json& j) {
  if (!j.contains("snr_db")) return {0.0};
  const json& v = j.at("snr_db");
  if (v.is_array()) {
    if (v.empty()) die(kExitConfig, "snr_db array must not be empty");
    try {
      return v.get<std::vector<double>>();
    } catch (const json::exception& e) {
      die(kExitConfig, std::string("bad value for \"snr_db\": ") + e.what());
    }
  }
  if (v.is_number()) return {v.get<double>()};
  die(kExitConfig, "snr_db must be a number or an array of numbers");
}

struct Output {
  std::ofstream file;
  std::ostream* stream = &std::cout;
  std::string path;

  explicit Output(const std::string& out_path) : path(out_path) {
    if (out_path.empty() || out_path == "-") return;
    file.open(out_path, std::ios::binary);
    if (!file) die(kExitIo, "cannot open output file: " + out_path);
    stream = &file;
  }
  std::ostream& os() { return *stream; }
  void finish() {
    stream->flush();
    if (!stream->good()) die(kExitIo, "write failure on " + (path.empty() ? "<stdout>" : path));
  }
};

int run_verify(const json& config, const uint64_t* seed, const double* tol,
               const std::string& out_path) {
  reject_unknown(config,
                 {"n", "chirp", "zc_root", "dft_tone", "lfsr_degree", "lfsr_taps", "lfsr_init",
                  "seed", "tolerance"},
                 "config");
  ccdt_verify_options options;
  ccdt_verify_options_default(&options);
  options.n = get_or(config, "n", options.n);
  fill_chirp(config, options.n, &options.chirp);
  options.zc_root = get_or(config, "zc_root", options.zc_root);
  options.dft_tone = get_or(config, "dft_tone", options.dft_tone);
  options.lfsr_degree = get_or(config, "lfsr_degree", options.lfsr_degree);
  const std::vector<int> taps = get_or(config, "lfsr_taps", std::vector<int>{});
  if (taps.size() > sizeof(options.lfsr_taps) / sizeof(options.lfsr_taps[0]))
    die(kExitConfig, "lfsr_taps supports at most 12 entries");
  options.lfsr_num_taps = static_cast<int>(taps.size());
  for (size_t i = 0; i < taps.size(); ++i) options.lfsr_taps[i] = taps[i];
  options.lfsr_init = get_or(config, "lfsr_init", options.lfsr_init);
  options.seed = get_or(config, "seed", options.seed);
  options.tolerance = get_or(config, "tolerance", options.tolerance);
  if (seed != nullptr) options.seed = *seed;
  if (tol != nullptr) options.tolerance = *tol;

  ccdt_property_result results[32];
  int count = 0;
  check(ccdt_verify_run(&options, results, 32, &count));

  Output out(out_path);
  out.os() << "# cmd=verify n=" << options.n << " two_alpha=" << options.chirp.two_alpha
           << " two_beta=" << options.chirp.two_beta << " gamma=" << fmt(options.chirp.gamma)
           << " zc_root=" << options.zc_root << " dft_tone=" << options.dft_tone
           << " lfsr_degree=" << options.lfsr_degree << " seed=" << options.seed
           << " tolerance=" << fmt(options.tolerance) << "\n";
  out.os() << "property,max_deviation,tolerance,status\n";
  bool ok = true;
  for (int i = 0; i < count; ++i) {
    out.os() << results[i].name << ',' << fmt(results[i].max_deviation) << ','
             << fmt(results[i].tolerance) << ',' << (results[i].passed ? "pass" : "fail") << "\n";
    ok = ok && results[i].passed != 0;
  }
  out.finish();
  return ok ? 0 : kExitProperty;
}

int run_af(const json& config, const uint64_t* seed, const std::string& out_path) {
  reject_unknown(config,
                 {"waveform", "n", "chirp", "sequence", "upsample", "seed", "delta_min",
                  "delta_step", "delta_count"},
                 "config");
  const int waveform = waveform_from(config);
  const int n = get_or(config, "n", 127);
  ccdt_chirp_params chirp;
  fill_chirp(config, n, &chirp);
  ccdt_sequence_spec spec;
  fill_sequence(config, &spec);
  const int q = get_or(config, "upsample", 1);
  uint64_t master = get_or<uint64_t>(config, "seed", 1);
  if (seed != nullptr) master = *seed;
  if (n < 1 || q < 1) die(kExitConfig, "n and upsample must be positive");

  // Doppler grid: delta_min + i*delta_step for i in [0, delta_count).  The
  // default covers one full period of integer bins; a fractional grid keeps
  // the delay axis at the symbol rate.
  const bool custom_grid = config.contains("delta_min") || config.contains("delta_step") ||
                           config.contains("delta_count");
  const double delta_min = get_or(config, "delta_min", 0.0);
  const double delta_step = get_or(config, "delta_step", 1.0);
  if (delta_step <= 0.0) die(kExitConfig, "delta_step must be positive");
  if (custom_grid && q != 1) die(kExitConfig, "custom Doppler grid requires upsample=1");
  int64_t delta_count;
  if (config.contains("delta_count")) {
    delta_count = get_or<int64_t>(config, "delta_count", 0);
  } else if (custom_grid) {
    delta_count = static_cast<int64_t>(std::ceil((n - delta_min) / delta_step));
  } else {
    delta_count = static_cast<int64_t>(n) * q;
  }
  if (delta_count <= 0) die(kExitConfig, "empty Doppler grid");

  ccdt_sequence* seq = nullptr;
  check(ccdt_sequence_create(&spec, n, master, &seq));
  std::vector<ccdt_complex> data(static_cast<size_t>(n));
  const ccdt_status copied = ccdt_sequence_copy(seq, data.data());
  ccdt_sequence_free(seq);
  check(copied);

  Output out(out_path);
  out.os() << "# cmd=af waveform=" << waveform_name(waveform) << " sequence="
           << sequence_name(spec) << " n=" << n << " upsample=" << q
           << " two_alpha=" << chirp.two_alpha << " two_beta=" << chirp.two_beta
           << " gamma=" << fmt(chirp.gamma) << " delta_min=" << fmt(delta_min)
           << " delta_step=" << fmt(delta_step) << " delta_count=" << delta_count
           << " seed=" << master << "\n";
  out.os() << "delta,tau,re,im,abs\n";
  if (!custom_grid) {
    const int grid = n * q;
    std::vector<ccdt_complex> surface(static_cast<size_t>(grid) * static_cast<size_t>(grid));
    check(ccdt_af_surface(waveform, &chirp, data.data(), n, q, surface.data()));
    for (int d = 0; d < grid; ++d) {
      for (int t = 0; t < grid; ++t) {
        const ccdt_complex v = surface[static_cast<size_t>(d) * grid + t];
        out.os() << d << ',' << t << ',' << fmt(v.re) << ',' << fmt(v.im) << ','
                 << fmt(std::hypot(v.re, v.im)) << "\n";
      }
    }
  } else {
    std::vector<ccdt_complex> signal(static_cast<size_t>(n));
    if (waveform != CCDT_WAVEFORM_CHIRP)
      check(ccdt_modulate(waveform, &chirp, data.data(), n, signal.data()));
    for (int64_t i = 0; i < delta_count; ++i) {
      const double delta = delta_min + static_cast<double>(i) * delta_step;
      for (int t = 0; t < n; ++t) {
        ccdt_complex v;
        if (waveform == CCDT_WAVEFORM_CHIRP)
          check(ccdt_af_fractional(&chirp, data.data(), delta, t, &v));
        else
          check(ccdt_af_point_real(signal.data(), n, delta, t, &v));
        out.os() << fmt(delta) << ',' << t << ',' << fmt(v.re) << ',' << fmt(v.im) << ','
                 << fmt(std::hypot(v.re, v.im)) << "\n";
      }
    }
  }
  out.finish();
  return 0;
}

int run_papr(const json& config, const std::string& out_path) {
  reject_unknown(config, {"waveform", "n", "chirp", "family", "upsample"}, "config");
  const int waveform = waveform_from(config);
  const int n = get_or(config, "n", 127);
  ccdt_chirp_params chirp;
  fill_chirp(config, n, &chirp);
  const std::string family = get_or<std::string>(config, "family", "zc");
  if (family != "zc" && family != "dft") die(kExitConfig, "family must be zc or dft");
  const int q = get_or(config, "upsample", 1);
  if (n < 1 || q < 1) die(kExitConfig, "n and upsample must be positive");

  std::vector<int> roots(static_cast<size_t>(n));
  std::vector<double> paprs(static_cast<size_t>(n));
  int count = 0;
  check(ccdt_papr_sweep(waveform, &chirp, family == "zc" ? 0 : 1, q, roots.data(), paprs.data(),
                        n, &count));

  Output out(out_path);
  out.os() << "# cmd=papr waveform=" << waveform_name(waveform) << " family=" << family
           << " n=" << n << " upsample=" << q << " two_alpha=" << chirp.two_alpha
           << " two_beta=" << chirp.two_beta << " gamma=" << fmt(chirp.gamma) << "\n";
  out.os() << "rank,root,papr_db,waveform\n";
  for (int i = 0; i < count; ++i)
    out.os() << i + 1 << ',' << roots[static_cast<size_t>(i)] << ','
             << fmt(paprs[static_cast<size_t>(i)]) << ',' << waveform_name(waveform) << "\n";
  out.finish();
  return 0;
}

const char* kExperimentHeader =
    "waveform,sequence,velocity_kmh,snr_db,trials,p_md,mean_te_s,std_te_s,mean_abs_tau_err,"
    "mean_abs_delta_err\n";

int run_acquire(const json& config, const uint64_t* seed, const int* trials,
                const std::string& out_path) {
  reject_unknown(config,
                 {"waveform", "n", "chirp", "sequence", "n_cp", "f_scs_hz", "f_c_hz",
                  "velocity_kmh", "snr_db", "doppler_hypotheses", "freq_offset_span",
                  "clarke_paths", "trials", "threads", "seed", "errors_on_hits_only"},
                 "config");
  ccdt_acquisition_config cfg;
  ccdt_acquisition_config_default(&cfg);
  cfg.waveform = waveform_from(config);
  cfg.n = get_or(config, "n", cfg.n);
  fill_chirp(config, cfg.n, &cfg.chirp);
  fill_sequence(config, &cfg.sequence);
  cfg.n_cp = get_or(config, "n_cp", cfg.n_cp);
  cfg.f_scs_hz = get_or(config, "f_scs_hz", cfg.f_scs_hz);
  cfg.f_c_hz = get_or(config, "f_c_hz", cfg.f_c_hz);
  cfg.velocity_kmh = get_or(config, "velocity_kmh", cfg.velocity_kmh);
  cfg.doppler_hypotheses = get_or(config, "doppler_hypotheses", cfg.doppler_hypotheses);
  cfg.freq_offset_span = get_or(config, "freq_offset_span", cfg.freq_offset_span);
  cfg.clarke_paths = get_or(config, "clarke_paths", cfg.clarke_paths);
  cfg.trials = get_or(config, "trials", cfg.trials);
  cfg.threads = get_or(config, "threads", cfg.threads);
  cfg.seed = get_or(config, "seed", cfg.seed);
  cfg.errors_on_hits_only = get_or(config, "errors_on_hits_only", false) ? 1 : 0;
  if (seed != nullptr) cfg.seed = *seed;
  if (trials != nullptr) cfg.trials = *trials;
  const std::vector<double> snrs = snr_list(config);

  Output out(out_path);
  out.os() << "# cmd=acquire waveform=" << waveform_name(cfg.waveform) << " sequence="
           << sequence_name(cfg.sequence) << " n=" << cfg.n << " n_cp=" << cfg.n_cp
           << " two_alpha=" << cfg.chirp.two_alpha << " two_beta=" << cfg.chirp.two_beta
           << " f_scs_hz=" << fmt(cfg.f_scs_hz) << " f_c_hz=" << fmt(cfg.f_c_hz)
           << " velocity_kmh=" << fmt(cfg.velocity_kmh)
           << " doppler_hypotheses=" << cfg.doppler_hypotheses
           << " freq_offset_span=" << fmt(cfg.freq_offset_span)
           << " clarke_paths=" << cfg.clarke_paths << " trials=" << cfg.trials
           << " errors_on_hits_only=" << cfg.errors_on_hits_only << " seed=" << cfg.seed
           << "\n";
  out.os() << kExperimentHeader;
  for (double snr : snrs) {
    cfg.snr_db = snr;
    ccdt_acquisition_stats stats;
    check(ccdt_run_acquisition(&cfg, &stats));
    out.os() << waveform_name(cfg.waveform) << ',' << sequence_name(cfg.sequence) << ','
             << fmt(cfg.velocity_kmh) << ',' << fmt(snr) << ',' << stats.trials << ','
             << fmt(stats.p_md) << ',' << fmt(stats.mean_te_s) << ',' << fmt(stats.std_te_s)
             << ',' << fmt(stats.mean_abs_tau_err) << ',' << fmt(stats.mean_abs_delta_err)
             << "\n";
  }
  out.finish();
  return 0;
}

int run_track(const json& config, const uint64_t* seed, const int* trials,
              const std::string& out_path) {
  reject_unknown(config,
                 {"waveform", "n", "chirp", "sequence", "n_cp", "f_scs_hz", "f_c_hz",
                  "target_powers", "snr_db", "p_fa", "noise_trials", "trials", "threads", "seed",
                  "threshold_unit_noise"},
                 "config");
  ccdt_tracking_config cfg;
  ccdt_tracking_config_default(&cfg);
  cfg.waveform = waveform_from(config);
  cfg.n = get_or(config, "n", cfg.n);
  fill_chirp(config, cfg.n, &cfg.chirp);
  fill_sequence(config, &cfg.sequence);
  cfg.n_cp = get_or(config, "n_cp", cfg.n_cp);
  cfg.f_scs_hz = get_or(config, "f_scs_hz", cfg.f_scs_hz);
  cfg.f_c_hz = get_or(config, "f_c_hz", cfg.f_c_hz);
  const std::vector<double> powers = get_or(config, "target_powers", std::vector<double>{});
  if (!powers.empty()) {
    if (powers.size() > sizeof(cfg.target_powers) / sizeof(cfg.target_powers[0]))
      die(kExitConfig, "target_powers supports at most 16 entries");
    cfg.num_targets = static_cast<int>(powers.size());
    for (size_t i = 0; i < powers.size(); ++i) cfg.target_powers[i] = powers[i];
  }
  cfg.p_fa = get_or(config, "p_fa", cfg.p_fa);
  cfg.noise_trials = get_or(config, "noise_trials", cfg.noise_trials);
  cfg.trials = get_or(config, "trials", cfg.trials);
  cfg.threads = get_or(config, "threads", cfg.threads);
  cfg.seed = get_or(config, "seed", cfg.seed);
  cfg.threshold_unit_noise = get_or(config, "threshold_unit_noise", cfg.threshold_unit_noise);
  if (seed != nullptr) cfg.seed = *seed;
  if (trials != nullptr) cfg.trials = *trials;
  const std::vector<double> snrs = snr_list(config);

  if (cfg.threshold_unit_noise <= 0.0) {
    double gamma = 0.0;
    check(ccdt_tracking_calibrate(&cfg, &gamma));
    cfg.threshold_unit_noise = gamma;
  }

  Output out(out_path);
  out.os() << "# cmd=track waveform=" << waveform_name(cfg.waveform) << " sequence="
           << sequence_name(cfg.sequence) << " n=" << cfg.n << " n_cp=" << cfg.n_cp
           << " two_alpha=" << cfg.chirp.two_alpha << " two_beta=" << cfg.chirp.two_beta
           << " f_scs_hz=" << fmt(cfg.f_scs_hz) << " f_c_hz=" << fmt(cfg.f_c_hz)
           << " num_targets=" << cfg.num_targets << " p_fa=" << fmt(cfg.p_fa)
           << " noise_trials=" << cfg.noise_trials
           << " threshold_unit_noise=" << fmt(cfg.threshold_unit_noise)
           << " trials=" << cfg.trials << " seed=" << cfg.seed << "\n";
  out.os() << kExperimentHeader;
  for (double snr : snrs) {
    cfg.snr_db = snr;
    ccdt_tracking_stats stats;
    check(ccdt_run_tracking(&cfg, &stats));
    out.os() << waveform_name(cfg.waveform) << ',' << sequence_name(cfg.sequence) << ",0,"
             << fmt(snr) << ',' << stats.trials << ',' << fmt(1.0 - stats.detection_rate) << ','
             << fmt(stats.mean_te_s) << ',' << fmt(stats.std_te_s) << ','
             << fmt(stats.mean_abs_tau_err) << ',' << fmt(stats.mean_abs_delta_err) << "\n";
  }
  out.finish();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("multicarrier chirp waveform toolkit ") + ccdt_version()};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  uint64_t seed = 0;
  double tol = 0.0;
  int trials = 0;

  CLI::App* verify = app.add_subcommand("verify", "run the analytic property battery");
  CLI::App* af = app.add_subcommand("af", "emit an ambiguity surface as CSV");
  CLI::App* papr = app.add_subcommand("papr", "envelope sweep across a root family");
  CLI::App* acquire = app.add_subcommand("acquire", "downlink acquisition Monte-Carlo");
  CLI::App* track = app.add_subcommand("track", "radar range/Doppler Monte-Carlo");

  for (CLI::App* sub : {verify, af, papr, acquire, track}) {
    sub->add_option("--config", config_path, "JSON configuration file");
    sub->add_option("--out", out_path, "output file, - or empty for stdout");
  }
  for (CLI::App* sub : {verify, af, acquire, track})
    sub->add_option("--seed", seed, "master seed override");
  verify->add_option("--tol", tol, "uniform tolerance override for every check");
  for (CLI::App* sub : {acquire, track})
    sub->add_option("--trials", trials, "Monte-Carlo trial count override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    const json config = load_config(config_path);
    if (verify->parsed())
      return run_verify(config, verify->count("--seed") ? &seed : nullptr,
                        verify->count("--tol") ? &tol : nullptr, out_path);
    if (af->parsed()) return run_af(config, af->count("--seed") ? &seed : nullptr, out_path);
    if (papr->parsed()) return run_papr(config, out_path);
    if (acquire->parsed())
      return run_acquire(config, acquire->count("--seed") ? &seed : nullptr,
                         acquire->count("--trials") ? &trials : nullptr, out_path);
    if (track->parsed())
      return run_track(config, track->count("--seed") ? &seed : nullptr,
                       track->count("--trials") ? &trials : nullptr, out_path);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
