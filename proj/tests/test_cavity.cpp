#include <cmath>
#include <numbers>

#include <doctest.h>

#include "sqz/cavity.hpp"
#include "sqz/error.hpp"
#include "test_util.hpp"

using namespace sqz;
using doctest::Approx;

namespace {

// Oracle values from tests/oracles/cavity_oracle.py (mpmath, 50 digits).
constexpr double kOracleFsr = 123881180.99173554;
constexpr double kOracleFinesse = 59.628208713621065;
constexpr double kOracleHwhm = 1038779.9974564468;
constexpr double kOracleS11 = 9.9733537681670862;
constexpr double kOracleS22 = 0.12664623183291375;
constexpr double kOracleS12 = -0.51292072825628013;
constexpr double kOracleAlpha = 1.5188929855278365;

CavityParams lossless(double detuning_hz, double hwhm_hz) {
  CavityParams p;
  p.t_in = 0.1;
  p.detuning_hz = detuning_hz;
  p.hwhm_hz = hwhm_hz;
  return derive_rates(p);
}

double max_abs(const Matrix2c& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("derive_rates") {
  CavityParams p;
  p.length_m = 1.21;
  p.t_in = 0.10;
  const CavityParams d = derive_rates(p);
  CHECK(d.fsr_hz == Approx(kOracleFsr).epsilon(1e-14));
  CHECK(finesse(0.10, 0.0) == Approx(kOracleFinesse).epsilon(1e-13));
  CHECK(d.hwhm_hz == Approx(kOracleHwhm).epsilon(1e-13));
  CHECK(d.fsr_hz / 1e6 == Approx(123.88).epsilon(1e-4));
  CHECK(d.hwhm_hz / 1e6 == Approx(1.039).epsilon(1e-3));

  CHECK(finesse(1e-6, 0.0) > 1e6);
  CHECK(finesse(1e-9, 0.0) > finesse(1e-6, 0.0));

  p.t_in = 0.0;
  CHECK_THROWS_AS(derive_rates(p), UnphysicalError);
  p.t_in = 0.6;
  p.loss_rt = 0.5;
  CHECK_THROWS_AS(derive_rates(p), UnphysicalError);

  CavityParams bare;
  bare.t_in = 0.1;
  CHECK_THROWS_AS(derive_rates(bare), UsageError);
}

TEST_CASE("explicit linewidth is kept") {
  CavityParams p;
  p.length_m = 1.21;
  p.t_in = 0.1;
  p.hwhm_hz = 2e6;
  CHECK(derive_rates(p).hwhm_hz == 2e6);
}

TEST_CASE("reflection limits") {
  const CavityParams p = lossless(3e6, 1e6);
  CHECK(std::abs(reflection(p, 3e6) - complex(1.0, 0.0)) < 1e-14);
  CHECK(std::abs(reflection(p, 3e12) - complex(-1.0, 0.0)) < 1e-5);

  CavityParams matched;
  matched.t_in = 0.02;
  matched.loss_rt = 0.02;
  matched.hwhm_hz = 1e6;
  matched = derive_rates(matched);
  CHECK(std::abs(reflection(matched, 0.0)) < 1e-14);

  test::Rng rng(21);
  for (int i = 0; i < 1000; ++i) {
    const CavityParams q = lossless(rng.uniform(-2e7, 2e7), rng.uniform(1e4, 5e6));
    CHECK(std::abs(std::abs(reflection(q, rng.uniform(-5e7, 5e7))) - 1.0) < 1e-12);
  }
}

TEST_CASE("lossy reflection dips on resonance") {
  CavityParams p;
  p.length_m = 1.21;
  p.t_in = 0.1;
  p.loss_rt = 0.003;
  p.detuning_hz = 10e6;
  p = derive_rates(p);
  const double on = std::abs(reflection(p, 10e6));
  CHECK(on == Approx((0.1 - 0.003) / 0.103).epsilon(1e-12));
  CHECK(std::abs(reflection(p, 5e6)) > on);
  CHECK(std::abs(reflection(p, 15e6)) > on);
}

TEST_CASE("quadrature_transfer oracle") {
  const CavityParams p = lossless(-10e6, 1.039e6);
  const TransferPair tp = quadrature_transfer(p, 10e6);
  const SpectralCovariance out = tp.apply(SpectralCovariance::diagonal(0.1, 10.0));
  CHECK(out.s11() == Approx(kOracleS11).epsilon(1e-12));
  CHECK(out.s22() == Approx(kOracleS22).epsilon(1e-12));
  CHECK(out.s12().real() == Approx(kOracleS12).epsilon(1e-12));
  CHECK(std::abs(out.s12().imag()) < 1e-12);
  CHECK(out.det() == Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(quadrature_transfer(p, 0.0), UsageError);
}

TEST_CASE("resonant and far-detuned cavities leave spectra unchanged") {
  const SpectralCovariance s(0.3, 4.0, {0.2, 0.1});
  const TransferPair resonant = quadrature_transfer(lossless(0.0, 1e6), 2.5e6);
  // T = e^{i phi} I
  CHECK(std::abs(resonant.transfer(0, 1)) < 1e-14);
  CHECK(std::abs(resonant.transfer(0, 0) - resonant.transfer(1, 1)) < 1e-14);
  const SpectralCovariance r = resonant.apply(s);
  CHECK(r.s11() == Approx(s.s11()));
  CHECK(r.s22() == Approx(s.s22()));
  CHECK(std::abs(r.s12() - s.s12()) < 1e-12);

  const TransferPair far = quadrature_transfer(lossless(1e10, 1e6), 1e3);
  CHECK(max_abs(far.transfer + Matrix2c::Identity()) < 1e-3);
  const SpectralCovariance f = far.apply(s);
  CHECK(f.s11() == Approx(s.s11()).epsilon(1e-3));
  CHECK(f.s22() == Approx(s.s22()).epsilon(1e-3));
}

TEST_CASE("lossless unitarity and det preservation at random frequencies") {
  test::Rng rng(22);
  for (int i = 0; i < 1000; ++i) {
    const CavityParams p = lossless(rng.uniform(-2e7, 2e7), rng.uniform(1e4, 5e6));
    const TransferPair tp = quadrature_transfer(p, rng.uniform(1e3, 3e7));
    CHECK(max_abs(tp.transfer * tp.transfer.adjoint() - Matrix2c::Identity()) < 1e-10);
    CHECK(max_abs(tp.noise) < 1e-10);
    CHECK(std::abs(std::abs(tp.transfer.determinant()) - 1.0) < 1e-12);
    const double v = std::exp(rng.uniform(-3.0, 3.0));
    const SpectralCovariance s = tp.apply(SpectralCovariance::diagonal(v, 1.5 / v));
    CHECK(std::abs(s.det() - 1.5) < 1e-9);
  }
}

TEST_CASE("noise fill is positive semidefinite for lossy cavities") {
  test::Rng rng(23);
  for (int i = 0; i < 1000; ++i) {
    CavityParams p;
    p.t_in = rng.uniform(1e-4, 0.5);
    p.loss_rt = rng.uniform(0.0, 0.45);
    p.detuning_hz = rng.uniform(-2e7, 2e7);
    p.hwhm_hz = rng.uniform(1e4, 5e6);
    p = derive_rates(p);
    const TransferPair tp = quadrature_transfer(p, rng.uniform(1e3, 3e7));
    const SpectralCovariance n = SpectralCovariance::from_matrix(tp.noise);
    CHECK(n.min_eigenvalue() >= -1e-12);
    CHECK(max_abs(tp.noise - tp.noise.adjoint()) < 1e-12);
  }
}

TEST_CASE("rotation_angle") {
  CHECK(rotation_angle(lossless(0.0, 1e6), 3e6) == Approx(0.0));
  const double far = rotation_angle(lossless(-10e6, 1.039e6), 1e13);
  CHECK(std::abs(std::remainder(far, std::numbers::pi)) < 1e-5);

  const CavityParams fc = lossless(-10e6, 1.039e6);
  const double alpha = rotation_angle(fc, 10e6);
  CHECK(alpha == Approx(kOracleAlpha).epsilon(1e-13));

  // The transfer matrix of a lossless cavity is e^{i phi} R(alpha).
  const Matrix2c t = quadrature_transfer(fc, 10e6).transfer;
  const double from_t = std::atan2((t(1, 0) / t(0, 0)).real(), 1.0);
  CHECK(std::abs(std::remainder(from_t - alpha, std::numbers::pi)) < 1e-12);
  CHECK(std::abs(t(0, 1) + t(1, 0)) < 1e-12);

  CavityParams lossy = fc;
  lossy.loss_rt = 0.01;
  CHECK_THROWS_AS(rotation_angle(lossy, 10e6), UsageError);
}

TEST_CASE("rotation angle is continuous across resonance") {
  const CavityParams p = lossless(7e6, 0.3e6);
  double prev = rotation_angle(p, 1e5);
  for (double f = 1.2e5; f < 3e7; f += 2e4) {
    const double a = rotation_angle(p, f);
    CHECK(std::abs(a - prev) < 0.2);
    prev = a;
  }
}

TEST_CASE("opposite detunings cancel the rotation") {
  test::Rng rng(24);
  for (int i = 0; i < 500; ++i) {
    const double detuning = rng.uniform(1e5, 2e7);
    const double hwhm = rng.uniform(1e4, 5e6);
    const CavityParams plus = lossless(detuning, hwhm);
    const CavityParams minus = lossless(-detuning, hwhm);
    const double f = rng.uniform(1e3, 3e7);
    CHECK(std::abs(rotation_angle(plus, f) + rotation_angle(minus, f)) < 1e-9);
    const Matrix2c total = quadrature_transfer(plus, f).transfer * quadrature_transfer(minus, f).transfer;
    CHECK(std::abs(total(0, 1)) < 1e-9);
    CHECK(std::abs(total(1, 0)) < 1e-9);
    CHECK(std::abs(total(0, 0) - total(1, 1)) < 1e-9);
  }
}

TEST_CASE("single-resonance guard") {
  CavityParams p;
  p.length_m = 1.21;
  p.t_in = 0.1;
  p.detuning_hz = 10e6;
  p = derive_rates(p);
  CHECK(within_single_resonance(p, 15e6));
  CHECK_FALSE(within_single_resonance(p, 40e6));
  CHECK(within_single_resonance(lossless(0.0, 1e6), 1e12));  // FSR unknown
}
