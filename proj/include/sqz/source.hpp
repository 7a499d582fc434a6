#pragma once

// Below-threshold OPA squeezed-vacuum source.

#include <optional>

#include "sqz/quadcore.hpp"

namespace sqz {

enum class SourceMode {
  /// Generated squeezing given in dB at DC with a Lorentzian roll-off of the
  /// squeezing power; anti-squeezing fixed by purity before escape.
  direct,
  /// Textbook OPA spectrum from the pump parameter implied by the classical gain.
  physical,
};

struct SourceParams {
  SourceMode mode = SourceMode::direct;
  double gen_db_at_dc = 0.0;          ///< direct mode
  double classical_gain = 1.0;        ///< physical mode
  std::optional<double> escape;       ///< explicit escape efficiency; overrides t_out/loss_rt
  double t_out = 0.0;
  double loss_rt = 0.0;
  double bandwidth_hz = 20e6;         ///< OPA cavity HWHM

  /// A source that emits plain vacuum.
  static SourceParams vacuum();

  friend bool operator==(const SourceParams&, const SourceParams&) = default;
};

/// Output-coupling over total decay rate, t_out / (t_out + loss_rt).
Efficiency escape_efficiency(double t_out, double loss_rt);

/// Escape efficiency of a source, explicit or derived from its coupler.
Efficiency escape_efficiency(const SourceParams& p);

/// x = 1 - 1/sqrt(G), the inverse of G = 1/(1-x)^2.
double pump_parameter(double classical_gain);

/// Largest pump parameter accepted; V+ diverges at threshold (x = 1).
inline constexpr double kMaxPumpParameter = 0.99;

/// Throws UnphysicalError unless all fields are in range.
void validate(const SourceParams& p);

/// Squeezing generated inside the OPA at DC, before escape loss.
DecibelLevel generated_db_at_dc(const SourceParams& p);

/// Covariance at the OPA output (escape applied), amplitude quadrature squeezed.
SpectralCovariance generated_spectrum(const SourceParams& p, double omega_hz);

}  // namespace sqz
