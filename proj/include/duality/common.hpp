#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <string>

namespace duality {

using cdouble = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Absolute tolerance for equality invariants.
inline constexpr double kEqTol = 1e-12;

// Inputs violating an equality invariant by more than kEqTol but at most
// kRenormTol are renormalized with a warning; anything worse is rejected.
inline constexpr double kRenormTol = 1e-9;

// Reduce an angle to (-pi, pi].
inline double wrap_angle(double theta) {
  double r = std::remainder(theta, kTwoPi);
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

// 15-significant-digit decimal formatting, used for all emitted numbers.
inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

}  // namespace duality
