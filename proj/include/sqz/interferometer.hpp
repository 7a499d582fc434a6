#pragma once

// Signal-recycling cavity: what it does to the injected squeezing (reflection)
// and to the single-sideband test signal (transmission resonance), and the
// resulting noise / signal / SNR-improvement spectra.

#include <optional>
#include <span>
#include <vector>

#include "sqz/cavity.hpp"
#include "sqz/chain.hpp"

namespace sqz {

struct SrcParams {
  CavityParams cavity;
  double signal_injection = 1.0;
};

/// The SRC of a scenario, if it has one.
std::optional<SrcParams> src_params(const Scenario& sc);

TransferPair src_squeezing_reflection(const SrcParams& p, double omega_hz);

/// Lorentzian power gain of the SRC for a single-sideband signal, unit at the
/// detuning frequency.
double signal_gain(const SrcParams& p, double omega_hz);

struct SpectrumPoint {
  double frequency_hz;
  double noise_db;       ///< homodyne quadrature, positive = below shot noise
  double anti_noise_db;  ///< conjugate quadrature, same convention
  double signal_db;      ///< 10 log10(signal_injection^2 * signal_gain)
  double snr_improvement_db;
};

struct NoiseSpectrum {
  std::vector<SpectrumPoint> points;
};

/// Spectrum at the given frequencies (all inside the scenario grid). The
/// shot-noise reference is the same scenario run with a vacuum source.
NoiseSpectrum snr_spectrum(const Scenario& sc, std::span<const double> frequencies_hz);

/// Spectrum over the scenario's own grid.
NoiseSpectrum snr_spectrum(const Scenario& sc);

}  // namespace sqz
