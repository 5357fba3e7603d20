#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bjorling/harmonic_series.hpp"
#include "bjorling/verify.hpp"

using namespace bjorling;

namespace {

constexpr double kPi = std::numbers::pi;

// Term-by-term evaluation straight from the series definition.
cplx brute_eval(const AnnularHarmonic& h, cplx z) {
  cplx v = h.log_coeff() * std::log(std::abs(z)) + h.constant();
  for (const auto& [n, m] : h.modes()) v += m.a * std::pow(z, n) + m.b * std::pow(std::conj(z), -n);
  return v;
}

// Central differences in x and y.
Derivatives finite_diff(const AnnularHarmonic& h, cplx z, double eps = 1e-5) {
  const cplx hx = (h(z + eps) - h(z - eps)) / (2.0 * eps);
  const cplx hy = (h(z + cplx(0, eps)) - h(z - cplx(0, eps))) / (2.0 * eps);
  Derivatives d;
  d.hz = 0.5 * (hx - cplx(0, 1) * hy);
  d.hzbar = 0.5 * (hx + cplx(0, 1) * hy);
  const cplx u = z / std::abs(z);
  d.hrho = hx * u.real() + hy * u.imag();
  d.htheta = -hx * z.imag() + hy * z.real();
  return d;
}

}  // namespace

TEST(FourierSeries, SynthesizeAnalyzeRoundTrip) {
  const FourierSeries s({{-3, {0.5, -1.0}}, {0, 2.0}, {2, {0.0, 0.25}}, {5, -1.5}});
  const auto samples = s.synthesize(64);
  const FourierSeries back = analyze(std::span<const cplx>(samples));
  for (int n = -10; n <= 10; ++n) EXPECT_NEAR(std::abs(back.coeff(n) - s.coeff(n)), 0.0, 1e-14) << n;
}

TEST(FourierSeries, PointEvaluationMatchesSynthesis) {
  const FourierSeries s({{-1, {0.3, 0.1}}, {1, 1.0}, {4, {0.0, -0.7}}});
  const auto samples = s.synthesize(16);
  for (int j = 0; j < 16; ++j) EXPECT_NEAR(std::abs(samples[j] - s(2.0 * kPi * j / 16)), 0.0, 1e-14);
}

TEST(FourierSeries, DerivativeAndConjugate) {
  const FourierSeries s({{-2, {1.0, 2.0}}, {3, {0.0, 1.0}}});
  const auto d = s.derivative();
  EXPECT_EQ(d.coeff(3), cplx(0.0, 3.0) * cplx(0.0, 1.0));
  EXPECT_EQ(d.coeff(-2), cplx(0.0, -2.0) * cplx(1.0, 2.0));
  const double t = 0.7, eps = 1e-6;
  EXPECT_NEAR(std::abs((s(t + eps) - s(t - eps)) / (2 * eps) - d(t)), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(s.conj()(t) - std::conj(s(t))), 0.0, 1e-15);
  EXPECT_TRUE((s + s.conj()).is_real());
  EXPECT_FALSE(s.is_real());
}

TEST(FourierSeries, RealSamplesOverload) {
  std::vector<double> v(32);
  for (int j = 0; j < 32; ++j) v[j] = std::cos(2.0 * 2.0 * kPi * j / 32);
  const auto s = analyze(std::span<const double>(v));
  EXPECT_NEAR(s.coeff(2).real(), 0.5, 1e-15);
  EXPECT_NEAR(s.coeff(-2).real(), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(s.coeff(1)), 0.0, 1e-15);
}

TEST(FourierSeries, ChopAndTruncate) {
  const FourierSeries s({{0, 1.0}, {1, 1e-20}, {7, 0.5}});
  EXPECT_EQ(s.chopped(1e-15).coeffs().size(), 2u);
  EXPECT_EQ(s.truncated(5).degree(), 1);
  EXPECT_EQ(s.degree(), 7);
  EXPECT_DOUBLE_EQ(s.max_abs(), 1.0);
}

TEST(Annulus, Validation) {
  EXPECT_THROW(Annulus(0.0, 1.0), Error);
  EXPECT_THROW(Annulus(2.0, 1.0), Error);
  const Annulus A(1.0, std::exp(2.0));
  EXPECT_NEAR(A.modulus(), 2.0, 1e-15);
  EXPECT_TRUE(A.contains(2.0));
  EXPECT_FALSE(A.contains(0.5));
}

TEST(AnnularHarmonic, EvaluationMatchesDefinition) {
  const auto h = verify::random_harmonic(11, 6);
  for (cplx z : {cplx(0.7, 0.2), cplx(-1.3, 0.9), cplx(0.1, -2.2)})
    EXPECT_NEAR(std::abs(h(z) - brute_eval(h, z)), 0.0, 1e-12 * (1 + std::abs(h(z))));
}

TEST(AnnularHarmonic, DerivativesMatchFiniteDifferences) {
  const auto h = verify::random_harmonic(5, 4);
  for (cplx z : {cplx(0.8, 0.3), cplx(-1.1, 0.6), cplx(0.2, -1.5)}) {
    const auto d = h.derivatives(z);
    const auto fd = finite_diff(h, z);
    const double sc = 1.0 + std::abs(d.hz) + std::abs(d.hzbar);
    EXPECT_NEAR(std::abs(d.hz - fd.hz), 0.0, 1e-7 * sc);
    EXPECT_NEAR(std::abs(d.hzbar - fd.hzbar), 0.0, 1e-7 * sc);
    EXPECT_NEAR(std::abs(d.hrho - fd.hrho), 0.0, 1e-7 * sc);
    EXPECT_NEAR(std::abs(d.htheta - fd.htheta), 0.0, 1e-7 * sc * std::abs(z));
  }
}

TEST(AnnularHarmonic, CoordinateMonomials) {
  const cplx z(0.4, -1.2);
  EXPECT_EQ(AnnularHarmonic::z()(z), z);
  EXPECT_NEAR(std::abs(AnnularHarmonic::zbar()(z) - std::conj(z)), 0.0, 1e-15);
  const auto d = AnnularHarmonic::z().derivatives(z);
  EXPECT_EQ(d.hz, cplx(1.0));
  EXPECT_EQ(d.hzbar, cplx(0.0));
}

TEST(AnnularHarmonic, RestrictionMatchesSampledDft) {
  const auto h = verify::random_harmonic(3, 5);
  for (double rho : {0.5, 1.0, 1.7}) {
    const auto samples = sample_circle(h, rho, 64);
    const auto dft = analyze(std::span<const cplx>(samples));
    const auto tr = h.restrict(rho);
    for (int n = -7; n <= 7; ++n) EXPECT_NEAR(std::abs(dft.coeff(n) - tr.coeff(n)), 0.0, 1e-12) << n << ' ' << rho;
  }
}

TEST(AnnularHarmonic, Arithmetic) {
  const auto a = verify::random_harmonic(1, 3), b = verify::random_harmonic(2, 4);
  const cplx z(1.2, 0.4);
  EXPECT_NEAR(std::abs((a + b)(z) - a(z) - b(z)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs((a - b)(z) - a(z) + b(z)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs((cplx(0, 2) * a)(z) - cplx(0, 2) * a(z)), 0.0, 1e-13);
}

TEST(AnnularHarmonic, DomainErrors) {
  EXPECT_THROW(mean_sq(AnnularHarmonic::z(), 0.0), Error);
  EXPECT_THROW(mean_bilinears(AnnularHarmonic::z(), -1.0), Error);
}

// Closed-form circle means against trapezoidal quadrature.
TEST(CircleMeans, ParsevalAgainstQuadrature) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto h = verify::random_harmonic(seed, 1 + static_cast<int>(seed % 12));
    const int M = default_quadrature_size(h.degree());
    for (double rho : {0.5, 1.0, 2.0}) {
      const double U = mean_sq(h, rho);
      EXPECT_NEAR(U, quadrature_mean([&](cplx z) { return std::norm(h(z)); }, rho, M), 1e-12 * U);
      const auto b = mean_bilinears(h, rho);
      const double qS = quadrature_mean(
          [&](cplx z) {
            const auto d = h.derivatives(z);
            return std::norm(d.hz) + std::norm(d.hzbar);
          },
          rho, M);
      EXPECT_NEAR(b.S, qS, 1e-12 * b.S);
      const double qW =
          quadrature_mean([&](cplx z) { return std::imag(std::conj(h(z)) * h.derivatives(z).htheta); }, rho, M);
      EXPECT_NEAR(b.W, qW, 1e-12 * (1 + b.S * rho * rho + U));
    }
  }
}

TEST(CircleMeans, UdotIsDerivativeOfU) {
  const auto h = verify::random_harmonic(9, 5);
  const double rho = 1.3, eps = 1e-5;
  const double fd = (mean_sq(h, rho + eps) - mean_sq(h, rho - eps)) / (2 * eps);
  EXPECT_NEAR(mean_bilinears(h, rho).Udot, fd, 1e-6 * std::abs(fd));
}

TEST(CircleMeans, IdentityValues) {
  const auto b = mean_bilinears(AnnularHarmonic::z(), 2.0);
  EXPECT_DOUBLE_EQ(mean_sq(AnnularHarmonic::z(), 2.0), 4.0);
  EXPECT_DOUBLE_EQ(b.Udot, 4.0);
  EXPECT_DOUBLE_EQ(b.W, 4.0);
  EXPECT_DOUBLE_EQ(b.S, 1.0);
}

TEST(DiskExtension, HarmonicAndMatchesTrace) {
  const FourierSeries p({{-2, {0.1, 0.2}}, {0, 0.5}, {1, 1.0}, {3, {0.0, -0.3}}});
  const auto f = disk_extension(p);
  for (int j = 0; j < 8; ++j) {
    const double t = 2.0 * kPi * j / 8;
    EXPECT_NEAR(std::abs(f(std::polar(1.0, t)) - p(t)), 0.0, 1e-14);
  }
  EXPECT_NEAR(std::abs(f(cplx(1e-9, 0.0)) - p.coeff(0)), 0.0, 1e-8);
}
