// Structural self-checks for the three waveforms.
//
// run_property_suite executes a fixed battery of fourteen analytic claims
// about ambiguity surfaces and envelopes, each reduced to a max deviation
// against an exact expected value.  The battery needs a maximum-length
// sequence of the working length, so n must be 2^p - 1 with p in 2..10.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sequences.hpp"
#include "waveform.hpp"

namespace ccdt {

struct PropertyResult {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

// chirp.n is overridden with n.  tolerance > 0 replaces every per-check
// default; otherwise surface checks use 1e-10 and envelope (dB) checks 1e-9.
struct VerifyOptions {
  int n = 127;
  ChirpParams chirp;
  int zc_root = 3;
  int dft_tone = 5;
  LfsrSpec lfsr;
  uint64_t seed = 1;
  double tolerance = 0.0;
};

std::vector<PropertyResult> run_property_suite(const VerifyOptions& options);

bool all_passed(const std::vector<PropertyResult>& results);

}  // namespace ccdt
