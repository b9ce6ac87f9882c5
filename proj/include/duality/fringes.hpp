#pragma once

// Wave and particle measures of the emitted photon, both analytic and
// statistical: visibility V = 2|gamma eta| from the fringe contrast,
// distinguishability D = |p_a - p_b| from which-path information, seeded
// Poisson photon counting, and a closed-form least-squares fringe fit.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "duality/common.hpp"
#include "duality/emission.hpp"
#include "duality/errors.hpp"
#include "duality/sampling.hpp"
#include "duality/source_state.hpp"

namespace duality {

namespace detail {

// A grid "spans a full period" if its range misses at most two uniform
// steps of 2 pi / n, which admits the usual half-open [0, 2 pi) grids.
inline void require_full_period(const std::vector<double>& angles, std::size_t min_points,
                                const char* who) {
  const std::size_t n = angles.size();
  if (n < min_points)
    throw ValidationError(std::string(who) + " needs at least " +
                          std::to_string(min_points) + " angles, got " + std::to_string(n));
  const double span = angles.back() - angles.front();
  if (span < kTwoPi * (1.0 - 2.0 / static_cast<double>(n)))
    throw ValidationError(std::string(who) + " needs angles spanning a full period (span " +
                          fmt(span) + ")");
}

}  // namespace detail

// Discretized fringe: detection rates tabulated over increasing angles
// within one period.
struct FringeScan {
  std::vector<double> angles;
  std::vector<double> rates;

  FringeScan(std::vector<double> a, std::vector<double> r)
      : angles(std::move(a)), rates(std::move(r)) {
    if (angles.size() != rates.size() || angles.size() < 4)
      throw ValidationError("fringe scan needs equally sized angle/rate lists of length >= 4");
    for (std::size_t i = 1; i < angles.size(); ++i)
      if (!(angles[i] > angles[i - 1]))
        throw ValidationError("fringe scan angles must be strictly increasing");
    if (angles.back() - angles.front() > kTwoPi + kEqTol)
      throw ValidationError("fringe scan angles must stay within one period");
  }
};

// Uniform n-point scan of the detection rate over [offset, offset + 2 pi).
inline FringeScan uniform_scan(const SourceState& s, const std::optional<ModeConfig>& modes,
                               std::size_t n, double offset = 0.0) {
  std::vector<double> angles(n), rates(n);
  for (std::size_t i = 0; i < n; ++i) {
    angles[i] = offset + kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    rates[i] = modes ? detection_rate_polarized(s, *modes, angles[i])
                     : detection_rate(s, angles[i]);
  }
  return FringeScan(std::move(angles), std::move(rates));
}

// Simulated photon-counting record: counts per fringe angle plus optional
// which-path tallies (n_a, n_b), with the seed that produced them.
struct CountData {
  std::vector<double> angles;
  std::vector<std::uint64_t> counts;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> which_path;
  std::uint64_t seed = 0;
};

// Point estimate with its propagated standard error.
struct Estimate {
  double value;
  double std_error;
};

// V = 2 |gamma| eta_mag; eta_mag = 1 recovers the scalar fringe contrast.
inline double analytic_visibility(const SourceState& s, double eta_mag = 1.0) {
  if (!(eta_mag >= 0.0 && eta_mag <= 1.0))
    throw ValidationError("eta magnitude must lie in [0, 1], got " + fmt(eta_mag));
  return std::min(1.0, 2.0 * s.gamma_mag() * eta_mag);
}

// Fringe contrast (max - min) / (max + min) from a tabulated scan covering
// a full period with >= 64 points. Agrees with analytic_visibility up to
// O(h^2) in the grid spacing h.
inline double numeric_visibility(const FringeScan& scan) {
  detail::require_full_period(scan.angles, 64, "numeric visibility");
  double lo = scan.rates.front(), hi = scan.rates.front();
  for (double r : scan.rates) {
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  if (!(hi + lo > 0.0))
    throw ValidationError("degenerate fringe scan: all rates are zero");
  return (hi - lo) / (hi + lo);
}

// D = |p_a - p_b| (the denominator p_a + p_b is one by construction).
inline double distinguishability(const SourceState& s) {
  return std::abs(s.p_a() - s.p_b());
}

// Simulated fringe experiment. Counts at each angle are Poisson with mean
// mean_total * p_D(theta_i) / sum_j p_D(theta_j); which-path tallies are
// binomial over the grand total with probability p_a. Draw order (counts
// in angle order, then the which-path split) is part of the determinism
// contract: identical inputs and seed give identical records.
inline CountData simulate_counts(const SourceState& s, const std::optional<ModeConfig>& modes,
                                 const std::vector<double>& angles, double mean_total,
                                 std::uint64_t seed) {
  if (angles.empty()) throw ValidationError("simulate_counts: empty angle list");
  if (!(mean_total > 0.0) || !std::isfinite(mean_total))
    throw ValidationError("simulate_counts: mean_total must be positive");
  detail::require_full_period(angles, 8, "simulate_counts");

  const std::size_t n = angles.size();
  std::vector<double> rate(n);
  double rate_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    rate[i] = modes ? detection_rate_polarized(s, *modes, angles[i])
                    : detection_rate(s, angles[i]);
    rate_sum += rate[i];
  }
  if (!(rate_sum > 0.0))
    throw ValidationError("simulate_counts: detection rate vanishes on the whole grid");

  Rng rng(seed);
  CountData data;
  data.angles = angles;
  data.counts.resize(n);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    data.counts[i] = sample_poisson(rng, mean_total * rate[i] / rate_sum);
    total += data.counts[i];
  }
  const std::uint64_t n_a = sample_binomial(rng, total, s.p_a());
  data.which_path = {n_a, total - n_a};
  data.seed = seed;
  return data;
}

namespace detail {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3d = std::array<double, 3>;

// Gauss-Jordan inverse with partial pivoting; throws on rank deficiency
// (fewer than three effective angles in the design).
inline Mat3 invert3(Mat3 a) {
  double scale = 0.0;
  for (const auto& row : a)
    for (double x : row) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) throw NumericalError("singular fringe-fit design matrix");

  Mat3 inv{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  for (std::size_t col = 0; col < 3; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < 3; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) <= 1e-12 * scale)
      throw NumericalError(
          "singular fringe-fit design matrix (need >= 3 distinct angles)");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    const double d = a[col][col];
    for (std::size_t c = 0; c < 3; ++c) {
      a[col][c] /= d;
      inv[col][c] /= d;
    }
    for (std::size_t r = 0; r < 3; ++r) {
      if (r == col) continue;
      const double f = a[r][col];
      for (std::size_t c = 0; c < 3; ++c) {
        a[r][c] -= f * a[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

inline Mat3 mul3(const Mat3& x, const Mat3& y) {
  Mat3 out{};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c)
      for (std::size_t k = 0; k < 3; ++k) out[r][c] += x[r][k] * y[k][c];
  return out;
}

}  // namespace detail

// Least-squares fit of counts to a + b cos(theta) + c sin(theta), solved by
// the closed-form normal equations; V = sqrt(b^2 + c^2) / a. The standard
// error propagates a per-angle Poisson variance (var_i = y_i) through the
// sandwich covariance of the linear fit and the gradient of V.
inline Estimate estimate_visibility(const CountData& data) {
  const std::size_t n = data.angles.size();
  if (data.counts.size() != n)
    throw ValidationError("count data: angle and count lists differ in length");
  if (n < 8) throw ValidationError("visibility estimate needs at least 8 angles");

  detail::Mat3 a{};
  detail::Mat3 moment{};
  detail::Vec3d rhs{};
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double y = static_cast<double>(data.counts[i]);
    const detail::Vec3d x{1.0, std::cos(data.angles[i]), std::sin(data.angles[i])};
    for (std::size_t r = 0; r < 3; ++r) {
      rhs[r] += y * x[r];
      for (std::size_t c = 0; c < 3; ++c) {
        a[r][c] += x[r] * x[c];
        moment[r][c] += y * x[r] * x[c];
      }
    }
    total += y;
  }
  if (!(total > 0.0)) throw ValidationError("visibility estimate needs positive total counts");

  const detail::Mat3 inv = detail::invert3(a);
  detail::Vec3d beta{};
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) beta[r] += inv[r][c] * rhs[c];
  if (!(beta[0] > 0.0))
    throw NumericalError("unphysical fringe fit: mean level a = " + fmt(beta[0]));

  const detail::Mat3 cov = detail::mul3(detail::mul3(inv, moment), inv);
  const double amp = std::hypot(beta[1], beta[2]);
  const double v = amp / beta[0];

  detail::Vec3d g{};
  if (amp > 0.0) {
    g = {-v / beta[0], beta[1] / (beta[0] * amp), beta[2] / (beta[0] * amp)};
  } else {
    // V is not differentiable at zero amplitude; bound the error by the
    // quadrature sum of the amplitude-component deviations.
    return {v, std::sqrt(std::max(0.0, cov[1][1] + cov[2][2])) / beta[0]};
  }
  double var = 0.0;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) var += g[r] * cov[r][c] * g[c];
  return {v, std::sqrt(std::max(0.0, var))};
}

// D = |n_a - n_b| / (n_a + n_b) with the binomial standard error.
inline Estimate estimate_distinguishability(const CountData& data) {
  if (!data.which_path)
    throw ValidationError("distinguishability estimate: which-path counts are missing");
  const double n_a = static_cast<double>(data.which_path->first);
  const double n_b = static_cast<double>(data.which_path->second);
  const double total = n_a + n_b;
  if (!(total > 0.0))
    throw ValidationError("distinguishability estimate: which-path counts are empty");
  const double p_hat = n_a / total;
  return {std::abs(n_a - n_b) / total, 2.0 * std::sqrt(p_hat * (1.0 - p_hat) / total)};
}

}  // namespace duality
