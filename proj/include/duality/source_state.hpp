#pragma once

// Two-atom single-excitation source. A photon emitted by a pair of
// entangled two-level atoms is described, after tracing out every other
// degree of freedom, by the 2x2 density matrix
//
//     rho = [ p_a      gamma ]
//           [ gamma*   p_b   ]
//
// in the basis {|e_A g_B>, |g_A e_B>}. The off-diagonal coherence gamma
// obeys the Cauchy-Schwarz bound |gamma| <= sqrt(p_a p_b). This header
// holds the purified description (amplitudes plus environment vectors),
// the partial trace down to rho, and scalar characterizations of rho.

#include <cmath>
#include <complex>
#include <cstddef>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "duality/common.hpp"
#include "duality/errors.hpp"
#include "duality/mat2.hpp"

namespace duality {

namespace detail {

enum class NormAction { kKeep, kRescale };

// Policy for equality invariants: deviations <= kEqTol pass untouched,
// deviations <= kRenormTol are repaired with a warning, larger ones are
// rejected.
inline NormAction norm_action(double deviation, const std::string& what) {
  if (deviation <= kEqTol) return NormAction::kKeep;
  if (deviation <= kRenormTol) {
    std::cerr << "duality: renormalizing " << what << " (deviation " << fmt(deviation)
              << ")\n";
    return NormAction::kRescale;
  }
  throw ValidationError(what + " violated: deviation " + fmt(deviation) +
                        " exceeds " + fmt(kRenormTol));
}

inline double vec_norm(const std::vector<cdouble>& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace detail

// Purified source description: amplitudes c_a, c_b on the two emission
// paths and unit vectors |m>, |n> collecting all remaining degrees of
// freedom. The environment dimension is finite and caller-chosen; a
// continuous environment is represented by entering its overlap directly
// as gamma on SourceState.
class Purification {
 public:
  Purification(cdouble c_a, cdouble c_b, std::vector<cdouble> m, std::vector<cdouble> n)
      : c_a_(c_a), c_b_(c_b), m_(std::move(m)), n_(std::move(n)) {
    if (m_.empty() || m_.size() != n_.size())
      throw ValidationError(
          "environment vectors |m>, |n> must have equal dimension >= 1 (got " +
          std::to_string(m_.size()) + " and " + std::to_string(n_.size()) + ")");
    if (!std::isfinite(std::norm(c_a_)) || !std::isfinite(std::norm(c_b_)))
      throw ValidationError("amplitudes c_a, c_b must be finite");
    const double amp_sq = std::norm(c_a_) + std::norm(c_b_);
    if (detail::norm_action(std::abs(amp_sq - 1.0), "|c_a|^2 + |c_b|^2 = 1") ==
        detail::NormAction::kRescale) {
      const double s = std::sqrt(amp_sq);
      c_a_ /= s;
      c_b_ /= s;
    }
    rescale_unit(m_, "norm of |m>");
    rescale_unit(n_, "norm of |n>");
  }

  cdouble c_a() const { return c_a_; }
  cdouble c_b() const { return c_b_; }
  const std::vector<cdouble>& m() const { return m_; }
  const std::vector<cdouble>& n() const { return n_; }
  std::size_t env_dim() const { return m_.size(); }

  // <n|m> = sum_i conj(n_i) m_i
  cdouble env_overlap() const {
    cdouble s = 0.0;
    for (std::size_t i = 0; i < m_.size(); ++i) s += std::conj(n_[i]) * m_[i];
    return s;
  }

 private:
  static void rescale_unit(std::vector<cdouble>& v, const std::string& what) {
    const double nrm = detail::vec_norm(v);
    if (!std::isfinite(nrm)) throw ValidationError(what + " must be finite");
    if (detail::norm_action(std::abs(nrm - 1.0), what) == detail::NormAction::kRescale)
      for (auto& z : v) z /= nrm;
  }

  cdouble c_a_, c_b_;
  std::vector<cdouble> m_, n_;
};

// Reduced atomic state (p_a, p_b, gamma). Both the magnitude |gamma| and
// the phase arg(gamma) are carried by the single complex field.
class SourceState {
 public:
  SourceState(double p_a, double p_b, cdouble gamma)
      : p_a_(p_a), p_b_(p_b), gamma_(gamma) {
    if (!std::isfinite(p_a_) || !std::isfinite(p_b_) || !std::isfinite(std::norm(gamma_)))
      throw ValidationError("source state fields must be finite");
    if (p_a_ < -kEqTol || p_b_ < -kEqTol)
      throw ValidationError("probabilities must be nonnegative (p_a = " + fmt(p_a_) +
                            ", p_b = " + fmt(p_b_) + ")");
    p_a_ = std::max(p_a_, 0.0);
    p_b_ = std::max(p_b_, 0.0);
    const double sum = p_a_ + p_b_;
    if (detail::norm_action(std::abs(sum - 1.0), "p_a + p_b = 1") ==
        detail::NormAction::kRescale) {
      p_a_ /= sum;
      p_b_ /= sum;
    }
    const double bound = std::sqrt(p_a_ * p_b_);
    if (std::abs(gamma_) > bound + kEqTol)
      throw ValidationError("Cauchy-Schwarz bound violated: |gamma| = " +
                            fmt(std::abs(gamma_)) + " exceeds sqrt(p_a p_b) = " +
                            fmt(bound));
  }

  double p_a() const { return p_a_; }
  double p_b() const { return p_b_; }
  cdouble gamma() const { return gamma_; }
  double gamma_mag() const { return std::abs(gamma_); }
  double gamma_phase() const { return std::arg(gamma_); }

  Mat2 density_matrix() const { return {p_a_, gamma_, std::conj(gamma_), p_b_}; }

 private:
  double p_a_, p_b_;
  cdouble gamma_;
};

// Partial trace over the environment: p_a = |c_a|^2, p_b = |c_b|^2,
// gamma = c_a conj(c_b) <n|m>. Unit environment vectors make the
// Cauchy-Schwarz bound |gamma| <= |c_a c_b| automatic.
inline SourceState trace_out(const Purification& p) {
  return SourceState(std::norm(p.c_a()), std::norm(p.c_b()),
                     p.c_a() * std::conj(p.c_b()) * p.env_overlap());
}

// Normalized purity mu_S = sqrt(2 Tr rho^2 - 1), 0 for the maximally
// mixed state and 1 for any pure state.
inline double purity(const SourceState& s) {
  const double tr_sq =
      s.p_a() * s.p_a() + s.p_b() * s.p_b() + 2.0 * std::norm(s.gamma());
  // Rounding can push 2 Tr rho^2 - 1 a hair outside [0, 1].
  return std::sqrt(std::clamp(2.0 * tr_sq - 1.0, 0.0, 1.0));
}

// Three algebraically equal expressions for (p_a - p_b)^2 + 4 |gamma|^2.
struct DualitySumForms {
  double lhs;         // (p_a - p_b)^2 + 4 |gamma|^2
  double det_form;    // 1 - 4 det rho
  double trace_form;  // 2 Tr rho^2 - 1
};

inline DualitySumForms duality_sum_identity(const SourceState& s) {
  const double diff = s.p_a() - s.p_b();
  const double gamma_sq = std::norm(s.gamma());
  const Mat2 rho = s.density_matrix();
  const double tr_sq =
      s.p_a() * s.p_a() + s.p_b() * s.p_b() + 2.0 * gamma_sq;
  return {diff * diff + 4.0 * gamma_sq, 1.0 - 4.0 * rho.det().real(),
          2.0 * tr_sq - 1.0};
}

// Parameterized family for sweeps: gamma = mixing sqrt(p_a p_b) e^{i phase}.
// mixing = 1 gives a pure state, mixing = 0 a fully dephased one.
inline SourceState mixed_family(double p_a, double mixing, double phase) {
  if (!(p_a >= -kEqTol && p_a <= 1.0 + kEqTol))
    throw ValidationError("mixed_family: p_a must lie in [0, 1], got " + fmt(p_a));
  if (!(mixing >= -kEqTol && mixing <= 1.0 + kEqTol))
    throw ValidationError("mixed_family: mixing must lie in [0, 1], got " + fmt(mixing));
  if (!std::isfinite(phase))
    throw ValidationError("mixed_family: phase must be finite");
  p_a = std::clamp(p_a, 0.0, 1.0);
  mixing = std::clamp(mixing, 0.0, 1.0);
  const double p_b = 1.0 - p_a;
  return SourceState(p_a, p_b, std::polar(mixing * std::sqrt(p_a * p_b), phase));
}

}  // namespace duality
