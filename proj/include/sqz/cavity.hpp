#pragma once

// Single-ended detuned cavity seen in reflection, and the quadrature-domain
// transfer it applies to a two-sideband noise field.
//
// Sign convention: a positive detuning puts the cavity resonance at +detuning
// relative to the carrier; the upper sideband at +omega co-rotates with it.
// Reflection uses the single-resonance (Lorentzian) approximation, so it is
// only meaningful for sidebands well inside one free spectral range; see
// within_single_resonance().

#include <optional>

#include "sqz/quadcore.hpp"

namespace sqz {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct CavityParams {
  std::optional<double> length_m;
  double fsr_hz = 0.0;       ///< 0 when unknown
  double t_in = 0.0;         ///< input coupler power transmission
  double loss_rt = 0.0;      ///< round-trip power loss excluding the coupler
  double detuning_hz = 0.0;  ///< signed
  double hwhm_hz = 0.0;      ///< half-width of the power resonance; 0 = derive from finesse

  bool lossless() const noexcept { return loss_rt == 0.0; }

  friend bool operator==(const CavityParams&, const CavityParams&) = default;
};

/// Amplitude decay rates in rad/s.
struct CavityRates {
  double kappa_in;
  double kappa_loss;
  double kappa_total;
};

double finesse(double t_in, double loss_rt);

/// Fills in fsr_hz (from the length) and hwhm_hz (from fsr and finesse unless
/// already set). Validates coupler and loss ranges.
CavityParams derive_rates(const CavityParams& p);

/// kappa_total = 2*pi*hwhm, split between coupler and loss in proportion
/// t_in : loss_rt (the small-transmission limit of t/(2 T_rt), l/(2 T_rt)).
CavityRates rates(const CavityParams& p);

/// Complex amplitude reflectivity at signed sideband frequency omega_hz:
/// r = 2 k_in / (k_tot - i 2pi (omega - detuning)) - 1.
complex reflection(const CavityParams& p, double omega_hz);

/// Quadrature transfer T and the vacuum noise it admits, N = I - T T^dagger.
struct TransferPair {
  Matrix2c transfer;
  Matrix2c noise;

  /// S' = T S T^dagger + N.
  SpectralCovariance apply(const SpectralCovariance& s) const;
};

/// The two-photon transform for the sideband pair +/-omega_hz (omega_hz > 0).
TransferPair quadrature_transfer(const CavityParams& p, double omega_hz);

/// Quadrature rotation angle for a lossless cavity, continuous in omega.
/// Throws UsageError for a lossy cavity, whose map is not a pure rotation.
double rotation_angle(const CavityParams& p, double omega_hz);

/// True when both sidebands lie within a quarter FSR of the resonance, or the
/// FSR is unknown.
bool within_single_resonance(const CavityParams& p, double omega_hz);

}  // namespace sqz
