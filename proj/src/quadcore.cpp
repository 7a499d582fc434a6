#include "sqz/quadcore.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "sqz/error.hpp"

namespace sqz {

Efficiency::Efficiency(double eta) : eta_(eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw UnphysicalError(fmt::format("efficiency {} outside [0, 1]", eta));
  }
}

RelativeVariance::RelativeVariance(double v) : v_(v) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw UnphysicalError(fmt::format("relative variance {} must be positive and finite", v));
  }
}

DecibelLevel::DecibelLevel(double db) : db_(db) {
  if (!std::isfinite(db)) {
    throw UnphysicalError("decibel level must be finite");
  }
}

RelativeVariance db_to_variance(DecibelLevel d) {
  return RelativeVariance(std::pow(10.0, -d.db() / 10.0));
}

DecibelLevel variance_to_db(RelativeVariance v) {
  return DecibelLevel(-10.0 * std::log10(v.value()));
}

RelativeVariance apply_loss(RelativeVariance v, Efficiency eta) {
  const double e = eta.value();
  return RelativeVariance(e * v.value() + (1.0 - e));
}

SpectralCovariance::SpectralCovariance(double s11, double s22, complex s12)
    : s11_(s11), s22_(s22), s12_(s12) {
  if (!std::isfinite(s11) || !std::isfinite(s22) || !std::isfinite(s12.real()) ||
      !std::isfinite(s12.imag())) {
    throw UnphysicalError("spectral covariance entries must be finite");
  }
}

SpectralCovariance SpectralCovariance::from_matrix(const Matrix2c& m) {
  return {m(0, 0).real(), m(1, 1).real(), 0.5 * (m(0, 1) + std::conj(m(1, 0)))};
}

Matrix2c SpectralCovariance::matrix() const {
  Matrix2c m;
  m << complex(s11_), s12_, std::conj(s12_), complex(s22_);
  return m;
}

double SpectralCovariance::det() const noexcept { return s11_ * s22_ - std::norm(s12_); }

// Closed-form eigenvalues of a Hermitian 2x2 matrix.
double SpectralCovariance::min_eigenvalue() const noexcept {
  const double half_diff = 0.5 * (s11_ - s22_);
  return 0.5 * trace() - std::sqrt(half_diff * half_diff + std::norm(s12_));
}

double SpectralCovariance::max_eigenvalue() const noexcept {
  const double half_diff = 0.5 * (s11_ - s22_);
  return 0.5 * trace() + std::sqrt(half_diff * half_diff + std::norm(s12_));
}

bool SpectralCovariance::is_physical(double tol) const noexcept {
  return min_eigenvalue() >= -tol && det() >= 1.0 - tol;
}

SpectralCovariance apply_loss_cov(const SpectralCovariance& s, Efficiency eta) {
  if (s.min_eigenvalue() < -1e-12) {
    throw UnphysicalError("covariance is not positive semidefinite");
  }
  const double e = eta.value();
  return {e * s.s11() + (1.0 - e), e * s.s22() + (1.0 - e), e * s.s12()};
}

}  // namespace sqz
