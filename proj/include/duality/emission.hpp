#pragma once

// Geometry-to-phase mapping and closed-form single-photon detection rates.
// A detector in direction r_hat sees the two emission paths with relative
// phase theta = k r_hat . (R_B - R_A) + phi_B - phi_A, and the count rate
//
//     p_D(theta) = p_a + p_b + 2 |gamma eta| cos(theta + phi + Delta),
//
// where eta = <eps_a|eps_b> = |eta| e^{i Delta} is the overlap of the two
// emission modes (eta = 1 for identical modes). Rates are relative
// intensities, not probabilities; only ratios of them are used downstream.

#include <algorithm>
#include <array>
#include <cmath>

#include "duality/common.hpp"
#include "duality/errors.hpp"
#include "duality/mat2.hpp"
#include "duality/source_state.hpp"

namespace duality {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// Atom positions, detector direction, wavenumber and initial phases.
class EmissionGeometry {
 public:
  EmissionGeometry(double k, const Vec3& r_a, const Vec3& r_b, const Vec3& r_hat,
                   double phi_a = 0.0, double phi_b = 0.0)
      : k_(k), r_a_(r_a), r_b_(r_b), r_hat_(r_hat), phi_a_(phi_a), phi_b_(phi_b) {
    if (!(k_ > 0.0) || !std::isfinite(k_))
      throw ValidationError("wavenumber k must be positive, got " + fmt(k));
    const double nrm = std::sqrt(dot(r_hat_, r_hat_));
    if (detail::norm_action(std::abs(nrm - 1.0), "norm of detector direction r_hat") ==
        detail::NormAction::kRescale)
      for (auto& c : r_hat_) c /= nrm;
  }

  double k() const { return k_; }
  const Vec3& r_a() const { return r_a_; }
  const Vec3& r_b() const { return r_b_; }
  const Vec3& r_hat() const { return r_hat_; }
  double phi_a() const { return phi_a_; }
  double phi_b() const { return phi_b_; }

 private:
  double k_;
  Vec3 r_a_, r_b_, r_hat_;
  double phi_a_, phi_b_;
};

// theta = k r_hat . (R_B - R_A) + phi_B - phi_A, reduced to (-pi, pi].
inline double relative_phase(const EmissionGeometry& g) {
  const Vec3 baseline{g.r_b()[0] - g.r_a()[0], g.r_b()[1] - g.r_a()[1],
                      g.r_b()[2] - g.r_a()[2]};
  return wrap_angle(g.k() * dot(g.r_hat(), baseline) + g.phi_b() - g.phi_a());
}

// The two emission modes in an effective two-dimensional internal space.
// Serves photon polarization as well as any grouped internal degrees of
// freedom; the derived overlap eta fully controls the interference terms.
class ModeConfig {
 public:
  ModeConfig(const Vec2& eps_a, const Vec2& eps_b) : eps_a_(eps_a), eps_b_(eps_b) {
    rescale_unit(eps_a_, "norm of emission mode eps_a");
    rescale_unit(eps_b_, "norm of emission mode eps_b");
    eta_ = inner(eps_a_, eps_b_);
    // |eta| <= 1 holds for unit vectors; trim rounding excess only.
    const double mag = std::abs(eta_);
    if (mag > 1.0 + kEqTol)
      throw ValidationError("mode overlap |eta| = " + fmt(mag) + " exceeds 1");
    if (mag > 1.0) eta_ *= 1.0 / mag;
  }

  // Canonical-basis pair: eps_a = (1, 0) and
  // eps_b = (eta, sqrt(1 - |eta|^2) e^{i chi}).
  static ModeConfig canonical(cdouble eta, double chi = 0.0) {
    const double mag = std::abs(eta);
    if (mag > 1.0 + kEqTol)
      throw ValidationError("mode overlap |eta| = " + fmt(mag) + " exceeds 1");
    const double rest = std::sqrt(std::max(0.0, 1.0 - std::norm(eta)));
    return ModeConfig({cdouble{1.0, 0.0}, cdouble{0.0, 0.0}},
                      {eta, std::polar(rest, chi)});
  }

  const Vec2& eps_a() const { return eps_a_; }
  const Vec2& eps_b() const { return eps_b_; }
  cdouble eta() const { return eta_; }
  double eta_mag() const { return std::abs(eta_); }
  double eta_phase() const { return std::arg(eta_); }

 private:
  static void rescale_unit(Vec2& v, const std::string& what) {
    const double nrm = std::sqrt(norm_sq(v));
    if (!std::isfinite(nrm)) throw ValidationError(what + " must be finite");
    if (detail::norm_action(std::abs(nrm - 1.0), what) == detail::NormAction::kRescale) {
      v[0] /= nrm;
      v[1] /= nrm;
    }
  }

  Vec2 eps_a_, eps_b_;
  cdouble eta_;
};

// Express a mode pair in the basis aligned with eps_a: eps_a -> (1, 0),
// eps_b -> (eta, sqrt(1 - |eta|^2)). The overlap eta is invariant.
inline ModeConfig canonicalize(const ModeConfig& modes) {
  return ModeConfig::canonical(modes.eta());
}

// Scalar fringe rate p_a + p_b + 2 |gamma| cos(theta + arg gamma); lies in
// [1 - 2|gamma|, 1 + 2|gamma|], nonnegative by Cauchy-Schwarz.
inline double detection_rate(const SourceState& s, double theta) {
  const double rate =
      s.p_a() + s.p_b() +
      2.0 * s.gamma_mag() * std::cos(theta + s.gamma_phase());
  return std::max(rate, 0.0);  // clip rounding noise at the dark fringe
}

// Mode-resolved fringe rate p_a + p_b + 2 |gamma eta| cos(theta + phi + Delta);
// reduces to detection_rate when the two modes coincide (eta = 1).
inline double detection_rate_polarized(const SourceState& s, const ModeConfig& modes,
                                       double theta) {
  const cdouble g = s.gamma() * modes.eta();
  const double rate =
      s.p_a() + s.p_b() + 2.0 * std::abs(g) * std::cos(theta + std::arg(g));
  return std::max(rate, 0.0);
}

}  // namespace duality
