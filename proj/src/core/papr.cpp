#include "papr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sequences.hpp"

namespace ccdt {

PaprResult papr(const cvec& s) {
  if (s.empty()) throw std::invalid_argument("papr: empty signal");
  double peak = 0.0;
  double acc = 0.0;
  int peak_index = 0;
  for (size_t t = 0; t < s.size(); ++t) {
    const double pw = std::norm(s[t]);
    acc += pw;
    if (pw > peak) {
      peak = pw;
      peak_index = static_cast<int>(t);
    }
  }
  const double mean = acc / static_cast<double>(s.size());
  if (mean <= 0.0) throw std::invalid_argument("papr: zero-power signal");
  return {10.0 * std::log10(peak / mean), peak_index, mean};
}

PaprResult papr_upsampled(Waveform kind, const ChirpParams& p, const cvec& x, int q) {
  return papr(upsample(kind, p, x, q));
}

std::vector<PaprSweepEntry> papr_sweep(Waveform kind, const ChirpParams& p,
                                       SweepFamily family, int q) {
  const int n = p.n;
  std::vector<PaprSweepEntry> out;
  if (family == SweepFamily::kZadoffChu) {
    for (int u = 1; u < n; ++u)
      out.push_back({u, papr_upsampled(kind, p, zadoff_chu(n, u), q).papr_db});
  } else {
    for (int k = 0; k < n; ++k)
      out.push_back({k, papr_upsampled(kind, p, dft_sequence(n, k), q).papr_db});
  }
  std::sort(out.begin(), out.end(), [](const PaprSweepEntry& a, const PaprSweepEntry& b) {
    if (a.papr_db != b.papr_db) return a.papr_db < b.papr_db;
    return a.root < b.root;
  });
  return out;
}

}  // namespace ccdt
