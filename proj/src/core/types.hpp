// Shared scalar/vector types and small numeric helpers used across the library.
#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace ccdt {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Euclidean remainder: imod(v, n) is in [0, n) for n > 0.
inline int64_t imod(int64_t v, int64_t n) {
  int64_t r = v % n;
  return r < 0 ? r + n : r;
}

// exp(j * pi * t / n) with the integer argument reduced mod 2n first, so the
// phase handed to sin/cos stays in [0, 2*pi) and full double accuracy is kept.
inline cplx unit_phase(int64_t t, int64_t n) {
  return std::polar(1.0, kPi * static_cast<double>(imod(t, 2 * n)) / static_cast<double>(n));
}

inline double mean_power(const cvec& s) {
  double acc = 0.0;
  for (const cplx& v : s) acc += std::norm(v);
  return s.empty() ? 0.0 : acc / static_cast<double>(s.size());
}

}  // namespace ccdt
