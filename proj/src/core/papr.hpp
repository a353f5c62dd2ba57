// Peak-to-average power ratio analysis, at symbol rate and on the
// band-limited upsampled signal.
#pragma once

#include <vector>

#include "types.hpp"
#include "waveform.hpp"

namespace ccdt {

struct PaprResult {
  double papr_db = 0.0;
  int peak_index = 0;     // index of the largest |s[t]|^2
  double mean_power = 0.0;
};

// 10*log10(max |s|^2 / mean |s|^2).  The mean-power normalization makes the
// value scale-invariant; callers that promise unit mean power can check the
// mean_power field.
PaprResult papr(const cvec& s);

// PAPR of upsample(kind, p, x, q); q == 1 gives the symbol-rate value.
PaprResult papr_upsampled(Waveform kind, const ChirpParams& p, const cvec& x, int q);

struct PaprSweepEntry {
  int root = 0;
  double papr_db = 0.0;
};

enum class SweepFamily { kZadoffChu = 0, kDft = 1 };

// PAPR across a sequence family: Zadoff-Chu roots 1..n-1 or DFT tones
// 0..n-1, sorted ascending by PAPR (ties by root).
std::vector<PaprSweepEntry> papr_sweep(Waveform kind, const ChirpParams& p,
                                       SweepFamily family, int q);

}  // namespace ccdt
