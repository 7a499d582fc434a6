#include "sqz/interferometer.hpp"

#include <cmath>
#include <numbers>

#include "sqz/error.hpp"

namespace sqz {

std::optional<SrcParams> src_params(const Scenario& sc) {
  const CavityStage* c = sc.cavity(CavityRole::src);
  if (!c) return std::nullopt;
  return SrcParams{c->cavity, sc.signal_injection};
}

TransferPair src_squeezing_reflection(const SrcParams& p, double omega_hz) {
  return quadrature_transfer(p.cavity, omega_hz);
}

double signal_gain(const SrcParams& p, double omega_hz) {
  const double hw = p.cavity.hwhm_hz;
  if (!(hw > 0.0)) throw UsageError("SRC linewidth not derived");
  const double off = omega_hz - p.cavity.detuning_hz;
  return hw * hw / (hw * hw + off * off);
}

NoiseSpectrum snr_spectrum(const Scenario& sc, std::span<const double> frequencies_hz) {
  const std::optional<SrcParams> src = src_params(sc);
  if (!src) throw UsageError("spectrum needs a signal-recycling cavity stage");

  Scenario reference = sc;
  reference.source = SourceParams::vacuum();

  const double theta = sc.homodyne_angle;
  const double conjugate = theta + std::numbers::pi / 2.0;
  NoiseSpectrum out;
  out.points.reserve(frequencies_hz.size());
  double previous = 0.0;
  for (double f : frequencies_hz) {
    if (!out.points.empty() && !(f > previous)) {
      throw UsageError("spectrum frequencies must be strictly increasing");
    }
    previous = f;
    const SpectralCovariance s = propagate(sc, f);
    const SpectralCovariance shot = propagate(reference, f);
    const double noise = variance_to_db(homodyne_readout(s, theta)).db();
    const double anti = variance_to_db(homodyne_readout(s, conjugate)).db();
    const double shot_db = variance_to_db(homodyne_readout(shot, theta)).db();
    const double amp = src->signal_injection;
    const double signal = 10.0 * std::log10(amp * amp * signal_gain(*src, f));
    out.points.push_back({f, noise, anti, signal, noise - shot_db});
  }
  return out;
}

NoiseSpectrum snr_spectrum(const Scenario& sc) {
  const std::vector<double> f = sc.grid.frequencies();
  return snr_spectrum(sc, f);
}

}  // namespace sqz
