#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bjorling/bjorling.hpp"
#include "bjorling/extremals.hpp"
#include "bjorling/verify.hpp"

using namespace bjorling;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<GaussVector> paraboloid_normals(int M) {
  std::vector<GaussVector> out;
  for (int j = 0; j < M; ++j) {
    const double t = 2.0 * kPi * j / M;
    out.push_back({-2.0 * std::polar(1.0, -t) / std::sqrt(5.0), 1.0 / std::sqrt(5.0)});
  }
  return out;
}

BjorlingData paraboloid_data() {
  BjorlingData d;
  d.h0 = FourierSeries::monomial(1, 1.0);
  d.w0 = FourierSeries({{2, 0.5}, {-2, 0.5}});
  d.gauss = paraboloid_normals(64);
  return d;
}

double max_error(const AnnularHarmonic& a, const AnnularHarmonic& b, double r, double R) {
  double m = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 32; ++j) {
      const cplx z = std::polar(r * std::pow(R / r, i / 7.0), 2.0 * kPi * j / 32);
      m = std::max(m, std::abs(a(z) - b(z)));
    }
  return m;
}

}  // namespace

TEST(Neumann, ConformalDataGivesConformalNeumann) {
  // nu = 0: h_rho = -i h_theta on T, so h = z gives h_rho = z.
  const auto hr = neumann_from_beltrami(FourierSeries::monomial(1, 1.0), FourierSeries());
  EXPECT_NEAR(std::abs(hr.coeff(1) - 1.0), 0.0, 1e-15);
  EXPECT_EQ(hr.coeffs().size(), 1u);
}

TEST(Neumann, RecoversRadialTraceOfKnownMap) {
  const auto h = AnnularHarmonic::mode(1, 0.75, 0.25);
  const FourierSeries nu0 = FourierSeries::monomial(2, -1.0 / 3.0);
  const auto hr = neumann_from_beltrami(h.restrict(1.0), nu0);
  const auto expect = h.radial_trace(1.0);
  for (int n = -4; n <= 4; ++n) EXPECT_NEAR(std::abs(hr.coeff(n) - expect.coeff(n)), 0.0, 1e-14) << n;
}

TEST(Neumann, EllipticityFailure) {
  try {
    neumann_from_beltrami(FourierSeries::monomial(1, 1.0), FourierSeries::monomial(2, 1.2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ellipticity);
    EXPECT_NEAR(e.value(), 1.2, 1e-12);
  }
}

TEST(ExtendHarmonic, RoundTripsCauchyData) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto h = verify::random_harmonic(seed, 5);
    const auto g = extend_harmonic(h.restrict(1.0), h.radial_trace(1.0));
    EXPECT_NEAR(max_error(h, g, 0.5, 2.0), 0.0, 1e-12 * (1 + h.coeff_scale() * 32));
  }
}

TEST(GaussData, SqrtNuSquaresToNu) {
  const auto N0 = paraboloid_normals(16);
  const auto s = sqrt_nu_from_gauss(N0);
  const double mod = (1.0 - 1.0 / std::sqrt(5.0)) / (1.0 + 1.0 / std::sqrt(5.0));
  for (const auto& v : s) EXPECT_NEAR(std::norm(v), mod, 1e-14);
  for (std::size_t j = 0; j < s.size(); ++j) {
    const auto g = gauss_from_sqrt_nu(s[j]);
    EXPECT_NEAR(std::abs(g.xi - N0[j].xi), 0.0, 1e-14);
    EXPECT_NEAR(g.tau, N0[j].tau, 1e-14);
  }
}

TEST(GaussData, SouthernNormalRejected) {
  std::vector<GaussVector> N0(8, GaussVector{0.0, -1.0});
  EXPECT_THROW(sqrt_nu_from_gauss(N0), Error);
}

TEST(DecayRate, GeometricCoefficients) {
  std::map<int, Modes> m;
  for (int n = 1; n <= 10; ++n) m[n] = {std::pow(0.5, n), 0.0};
  EXPECT_NEAR(decay_rate(AnnularHarmonic(0.0, 0.0, m)), std::log(2.0), 1e-12);
  EXPECT_EQ(decay_rate(AnnularHarmonic::z()), 0.0);
}

// The Enneper surface generated by paraboloid data, against its closed form.
TEST(Solve, ParaboloidDataGivesEnneper) {
  for (int N : {8, 16, 32}) {
    SolveOptions opts;
    opts.truncation = N;
    const auto res = solve(paraboloid_data(), opts);
    EXPECT_NEAR(max_error(res.surface.h, extremals::paraboloid_enneper_h(), 0.8, 1.25), 0.0, 1e-12);
    EXPECT_NEAR(max_error(res.surface.w, extremals::paraboloid_enneper_w(), 0.8, 1.25), 0.0, 1e-12);
    EXPECT_LE(res.report.r, 0.8);
    EXPECT_GE(res.report.R, 1.25);
    EXPECT_LE(res.report.residual_max, opts.tol);
    EXPECT_LE(res.report.w_crosscheck, 1e-10);
  }
}

TEST(Solve, SignFlagIgnoredForGaussData) {
  SolveOptions a, b;
  b.sign = -1;
  const auto ra = solve(paraboloid_data(), a), rb = solve(paraboloid_data(), b);
  EXPECT_NEAR(max_error(ra.surface.w, rb.surface.w, 0.8, 1.25), 0.0, 1e-15);
}

TEST(Solve, CatenoidalSlabFromBeltramiData) {
  BjorlingData d;
  d.h0 = FourierSeries::monomial(1, 1.0);
  d.nu0 = FourierSeries::monomial(2, -1.0 / 3.0);
  const auto h = AnnularHarmonic::mode(1, 0.75, 0.25);
  for (int sign : {1, -1}) {
    SolveOptions opts;
    opts.sign = sign;
    const auto res = solve(d, opts);
    EXPECT_NEAR(max_error(res.surface.h, h, 0.6, 3.0), 0.0, 1e-13);
    // w = +-(sqrt3/2) log|z| with opposite signs for the two branches.
    const double c = res.surface.w.log_coeff().real();
    EXPECT_NEAR(std::abs(c), std::sqrt(3.0) / 2.0, 1e-13);
    // Folds where J_h = 0, at |z| = 1/sqrt3.
    EXPECT_GT(res.report.r, 1.0 / std::sqrt(3.0));
    EXPECT_LT(res.report.r, 0.6);
  }
  SolveOptions p, m;
  m.sign = -1;
  EXPECT_NEAR(solve(d, p).surface.w.log_coeff().real(), -solve(d, m).surface.w.log_coeff().real(), 1e-14);
}

TEST(Solve, HelicoidTypeDataNotLiftable) {
  BjorlingData d;
  d.h0 = FourierSeries::monomial(1, 1.0);
  d.nu0 = FourierSeries::monomial(2, 3.0 - 2.0 * std::sqrt(2.0));
  try {
    solve(d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::non_liftable);
    EXPECT_NEAR(e.value(), 2.0 * kPi, 1e-8);
  }
}

TEST(Solve, EllipticityFailure) {
  BjorlingData d;
  d.h0 = FourierSeries::monomial(1, 1.0);
  d.nu0 = FourierSeries::monomial(2, 1.2);
  try {
    solve(d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ellipticity);
  }
}

TEST(Solve, HeightNotOrthogonalToNormal) {
  auto d = paraboloid_data();
  d.w0 = FourierSeries({{1, 0.5}, {-1, 0.5}});
  try {
    solve(d);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::inconsistent_data);
  }
}

TEST(Solve, InvalidOptions) {
  SolveOptions o;
  o.sign = 0;
  EXPECT_THROW(solve(paraboloid_data(), o), Error);
  o.sign = 1;
  o.tol = -1.0;
  EXPECT_THROW(solve(paraboloid_data(), o), Error);
}

TEST(Solve, ResidualReproducible) {
  const auto res = solve(paraboloid_data());
  EXPECT_EQ(surface_residual(res.surface, res.report.step), res.report.residual_max);
}

// Ellipse h(e^{it}) = (cos t, sin t) over the tilted plane w = lambda x with
// constant K = sqrt(1 + lambda^2).
TEST(SlopeSolve, TiltedPlane) {
  const double lam = 0.7, K = std::sqrt(1 + lam * lam);
  SlopeData sd;
  sd.h0 = FourierSeries::monomial(1, 1.0);
  sd.w0 = FourierSeries({{1, lam / 2}, {-1, lam / 2}});
  sd.K.assign(128, K);
  const auto res = solve_slope(sd);
  const cplx g1 = (K + 1) / 2, g2 = (K - 1) / 2;
  double err = 0.0;
  for (int j = 0; j < 40; ++j) {
    const cplx z = std::polar(1.1, 0.3 * j);
    const cplx g = g1 * z + g2 / z;
    const cplx hh(g.real() / K, g.imag());
    err = std::max(err, std::abs(res.surface.h(z) - hh) + std::abs(res.surface.height(z) - lam * hh.real()));
  }
  // The radicand (K^2 - 1)|h_theta|^2 - w_theta^2 cancels to ~1e-16 where the
  // slope vanishes; the square root lifts that to ~1e-8.
  EXPECT_LT(err, 1e-7);
}

TEST(SlopeSolve, KBelowOneRejected) {
  SlopeData sd;
  sd.h0 = FourierSeries::monomial(1, 1.0);
  sd.w0 = FourierSeries();
  sd.K.assign(64, 0.9);
  EXPECT_THROW(solve_slope(sd), Error);
}
