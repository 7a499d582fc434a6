#include "sqz/cavity.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "sqz/error.hpp"

namespace sqz {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_mirrors(double t_in, double loss_rt) {
  if (!(t_in > 0.0 && t_in <= 1.0)) {
    throw UnphysicalError(fmt::format("input coupler transmission {} outside (0, 1]", t_in));
  }
  if (!(loss_rt >= 0.0 && loss_rt < 1.0)) {
    throw UnphysicalError(fmt::format("round-trip loss {} outside [0, 1)", loss_rt));
  }
  if (!(t_in + loss_rt < 1.0)) {
    throw UnphysicalError(
        fmt::format("coupler plus loss ({} + {}) must stay below 1", t_in, loss_rt));
  }
}

void check_derived(const CavityParams& p) {
  if (!(p.hwhm_hz > 0.0)) {
    throw UsageError("cavity linewidth not derived; call derive_rates first");
  }
}

}  // namespace

double finesse(double t_in, double loss_rt) {
  check_mirrors(t_in, loss_rt);
  const double r1 = std::sqrt(1.0 - t_in);
  const double r2 = std::sqrt(1.0 - loss_rt);
  const double rr = r1 * r2;
  return std::numbers::pi * std::sqrt(rr) / (1.0 - rr);
}

CavityParams derive_rates(const CavityParams& p) {
  check_mirrors(p.t_in, p.loss_rt);
  CavityParams out = p;
  if (p.length_m) {
    if (!(*p.length_m > 0.0)) {
      throw UnphysicalError(fmt::format("cavity length {} m must be positive", *p.length_m));
    }
    out.fsr_hz = kSpeedOfLight / (2.0 * *p.length_m);
  }
  if (out.fsr_hz < 0.0) {
    throw UnphysicalError("free spectral range must be positive");
  }
  if (out.hwhm_hz < 0.0) {
    throw UnphysicalError("cavity linewidth must be positive");
  }
  if (out.hwhm_hz == 0.0) {
    if (out.fsr_hz == 0.0) {
      throw UsageError("cavity needs a length, a free spectral range or an explicit linewidth");
    }
    out.hwhm_hz = out.fsr_hz / (2.0 * finesse(p.t_in, p.loss_rt));
  }
  if (!std::isfinite(out.detuning_hz)) {
    throw UnphysicalError("detuning must be finite");
  }
  return out;
}

CavityRates rates(const CavityParams& p) {
  check_derived(p);
  const double total = kTwoPi * p.hwhm_hz;
  const double coupled = p.t_in / (p.t_in + p.loss_rt);
  return {total * coupled, total * (1.0 - coupled), total};
}

complex reflection(const CavityParams& p, double omega_hz) {
  const CavityRates k = rates(p);
  const double delta = kTwoPi * (omega_hz - p.detuning_hz);
  return 2.0 * k.kappa_in / complex(k.kappa_total, -delta) - 1.0;
}

SpectralCovariance TransferPair::apply(const SpectralCovariance& s) const {
  const Matrix2c out = transfer * s.matrix() * transfer.adjoint() + noise;
  return SpectralCovariance::from_matrix(out);
}

TransferPair quadrature_transfer(const CavityParams& p, double omega_hz) {
  if (!(omega_hz > 0.0)) {
    throw UsageError(fmt::format("sideband frequency {} Hz must be positive", omega_hz));
  }
  const complex upper = reflection(p, omega_hz);
  const complex lower = std::conj(reflection(p, -omega_hz));

  // Sideband -> quadrature basis change; unitary, so its inverse is the adjoint.
  const double h = 1.0 / std::sqrt(2.0);
  Matrix2c basis;
  basis << complex(h, 0.0), complex(h, 0.0), complex(0.0, -h), complex(0.0, h);
  const Matrix2c sidebands = Eigen::Vector2cd(upper, lower).asDiagonal();

  TransferPair out;
  out.transfer = basis * sidebands * basis.adjoint();
  out.noise = Matrix2c::Identity() - out.transfer * out.transfer.adjoint();
  return out;
}

double rotation_angle(const CavityParams& p, double omega_hz) {
  if (!p.lossless()) {
    throw UsageError("rotation angle is only defined for a lossless cavity");
  }
  const CavityRates k = rates(p);
  // For a lossless cavity arg r = 2 arg(k + i delta) with k > 0, which never
  // wraps, so half the sum of both sideband phases is continuous in omega.
  const double up = std::arg(complex(k.kappa_total, kTwoPi * (omega_hz - p.detuning_hz)));
  const double down = std::arg(complex(k.kappa_total, kTwoPi * (-omega_hz - p.detuning_hz)));
  return up + down;
}

bool within_single_resonance(const CavityParams& p, double omega_hz) {
  if (p.fsr_hz <= 0.0) return true;
  const double limit = p.fsr_hz / 4.0;
  return std::abs(omega_hz - p.detuning_hz) < limit &&
         std::abs(-omega_hz - p.detuning_hz) < limit;
}

}  // namespace sqz
