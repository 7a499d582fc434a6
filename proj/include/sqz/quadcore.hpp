#pragma once

// Noise-power units, the beamsplitter loss channel and 2x2 quadrature
// spectral covariances. Vacuum (shot noise) is normalized to 1 throughout.

#include <complex>

#include <Eigen/Dense>

namespace sqz {

using complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;

/// Power transmission in [0, 1].
class Efficiency {
 public:
  explicit Efficiency(double eta);

  double value() const noexcept { return eta_; }

  friend Efficiency operator*(Efficiency a, Efficiency b) { return Efficiency(a.eta_ * b.eta_); }
  friend bool operator==(Efficiency, Efficiency) = default;

 private:
  double eta_;
};

/// Noise power relative to shot noise. Must be strictly positive.
class RelativeVariance {
 public:
  explicit RelativeVariance(double v);

  double value() const noexcept { return v_; }

  friend bool operator==(RelativeVariance, RelativeVariance) = default;

 private:
  double v_;
};

/// Squeezing depth in dB; positive means below shot noise, so anti-squeezing
/// is negative.
class DecibelLevel {
 public:
  explicit DecibelLevel(double db);

  double db() const noexcept { return db_; }

  friend bool operator==(DecibelLevel, DecibelLevel) = default;

 private:
  double db_;
};

RelativeVariance db_to_variance(DecibelLevel d);
DecibelLevel variance_to_db(RelativeVariance v);

/// Beamsplitter with vacuum in the open port: eta * v + (1 - eta).
RelativeVariance apply_loss(RelativeVariance v, Efficiency eta);

/// Hermitian quadrature spectral density matrix at one sideband frequency.
/// Index 1 is the amplitude quadrature, index 2 the phase quadrature.
///
/// The matrix is held as (s11, s22, s12); s21 = conj(s12). Constructors do not
/// check positivity so that intermediate numerical results can be inspected;
/// use is_physical() for that.
class SpectralCovariance {
 public:
  SpectralCovariance() = default;  // vacuum
  SpectralCovariance(double s11, double s22, complex s12 = {});

  static SpectralCovariance vacuum() { return {}; }
  static SpectralCovariance diagonal(double s11, double s22) { return {s11, s22}; }
  /// Projects an arbitrary 2x2 matrix onto its Hermitian part.
  static SpectralCovariance from_matrix(const Matrix2c& m);

  double s11() const noexcept { return s11_; }
  double s22() const noexcept { return s22_; }
  complex s12() const noexcept { return s12_; }
  complex s21() const noexcept { return std::conj(s12_); }

  Matrix2c matrix() const;
  double det() const noexcept;
  double trace() const noexcept { return s11_ + s22_; }
  double min_eigenvalue() const noexcept;
  double max_eigenvalue() const noexcept;

  /// Positive semidefinite and det >= 1 within `tol`.
  bool is_physical(double tol = 1e-9) const noexcept;

  friend bool operator==(const SpectralCovariance&, const SpectralCovariance&) = default;

 private:
  double s11_ = 1.0;
  double s22_ = 1.0;
  complex s12_{};
};

/// eta * S + (1 - eta) * I.
SpectralCovariance apply_loss_cov(const SpectralCovariance& s, Efficiency eta);

}  // namespace sqz
