#include "sqz/source.hpp"

#include <cmath>

#include <fmt/format.h>

#include "sqz/error.hpp"

namespace sqz {

SourceParams SourceParams::vacuum() {
  SourceParams p;
  p.escape = 1.0;
  return p;
}

Efficiency escape_efficiency(double t_out, double loss_rt) {
  if (!(t_out > 0.0 && t_out < 1.0)) {
    throw UnphysicalError(fmt::format("output coupler transmission {} outside (0, 1)", t_out));
  }
  if (!(loss_rt >= 0.0 && loss_rt < 1.0) || !(t_out + loss_rt < 1.0)) {
    throw UnphysicalError(fmt::format("OPA round-trip loss {} out of range", loss_rt));
  }
  return Efficiency(t_out / (t_out + loss_rt));
}

Efficiency escape_efficiency(const SourceParams& p) {
  if (p.escape) return Efficiency(*p.escape);
  return escape_efficiency(p.t_out, p.loss_rt);
}

double pump_parameter(double classical_gain) {
  if (!(classical_gain >= 1.0) || !std::isfinite(classical_gain)) {
    throw UnphysicalError(fmt::format("classical gain {} must be >= 1", classical_gain));
  }
  return 1.0 - 1.0 / std::sqrt(classical_gain);
}

void validate(const SourceParams& p) {
  escape_efficiency(p);
  if (!(p.bandwidth_hz > 0.0) || !std::isfinite(p.bandwidth_hz)) {
    throw UnphysicalError("OPA bandwidth must be positive");
  }
  switch (p.mode) {
    case SourceMode::direct:
      if (!(p.gen_db_at_dc >= 0.0) || !std::isfinite(p.gen_db_at_dc)) {
        throw UnphysicalError(
            fmt::format("generated squeezing {} dB must be finite and >= 0", p.gen_db_at_dc));
      }
      break;
    case SourceMode::physical:
      if (pump_parameter(p.classical_gain) >= kMaxPumpParameter) {
        throw UnphysicalError(
            fmt::format("classical gain {} puts the OPA at threshold", p.classical_gain));
      }
      break;
  }
}

DecibelLevel generated_db_at_dc(const SourceParams& p) {
  validate(p);
  if (p.mode == SourceMode::direct) return DecibelLevel(p.gen_db_at_dc);
  const double x = pump_parameter(p.classical_gain);
  const double ratio = (1.0 - x) / (1.0 + x);
  return variance_to_db(RelativeVariance(ratio * ratio));
}

SpectralCovariance generated_spectrum(const SourceParams& p, double omega_hz) {
  validate(p);
  const Efficiency escape = escape_efficiency(p);
  const double f = omega_hz / p.bandwidth_hz;
  const double f2 = f * f;

  double squeezed = 1.0;
  double anti = 1.0;
  if (p.mode == SourceMode::direct) {
    const double dc = db_to_variance(DecibelLevel(p.gen_db_at_dc)).value();
    const double inner = 1.0 - (1.0 - dc) / (1.0 + f2);
    squeezed = apply_loss(RelativeVariance(inner), escape).value();
    anti = apply_loss(RelativeVariance(1.0 / inner), escape).value();
  } else {
    const double x = pump_parameter(p.classical_gain);
    const double e = escape.value();
    squeezed = 1.0 - e * 4.0 * x / ((1.0 + x) * (1.0 + x) + f2);
    anti = 1.0 + e * 4.0 * x / ((1.0 - x) * (1.0 - x) + f2);
  }
  if (!(squeezed > 0.0)) {
    throw UnphysicalError("source spectrum has non-positive squeezed variance");
  }
  return SpectralCovariance::diagonal(squeezed, anti);
}

}  // namespace sqz
