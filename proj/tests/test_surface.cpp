#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "bjorling/extremals.hpp"
#include "bjorling/surface.hpp"
#include "bjorling/verify.hpp"

using namespace bjorling;
namespace ex = bjorling::extremals;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Normal, CrossProductAgreesWithBeltramiRoute) {
  for (const char* name : {"catenoid", "enneper", "example32", "catenoidal_slab"}) {
    const auto F = ex::fixture(name);
    for (cplx z : {cplx(1.2, 0.3), cplx(-0.4, 1.1), cplx(0.0, -1.5)}) {
      if (!F.annulus.contains(std::abs(z))) continue;
      const auto a = gauss_map(F, z), b = gauss_map_via_lambda(F, z);
      EXPECT_NEAR(std::abs(a.xi - b.xi), 0.0, 1e-12) << name;
      EXPECT_NEAR(a.tau, b.tau, 1e-12) << name;
      EXPECT_NEAR(a.norm_defect(), 0.0, 1e-14);
    }
  }
}

TEST(Normal, CriticalPointRejected) {
  const auto F = ex::fixture("example32");
  EXPECT_THROW(gauss_map(F, cplx(0.0, 2.0)), Error);
}

TEST(Normal, SqrtNuRoundTrip) {
  const cplx s(0.2, -0.3);
  const auto g = gauss_from_sqrt_nu(s);
  EXPECT_NEAR(g.norm_defect(), 0.0, 1e-15);
  EXPECT_NEAR((1.0 - g.tau) / (1.0 + g.tau), std::norm(s), 1e-15);
}

TEST(Beltrami, AffineStretch) {
  const double a = 0.75, b = 0.25;
  const auto h = AnnularHarmonic::mode(1, a, b);
  for (double rho : {1.0, 2.0}) {
    const cplx z = std::polar(rho, 0.4);
    const double q = b / (rho * rho);
    EXPECT_NEAR(std::abs(first_beltrami(h, z)), q / a, 1e-15);
    EXPECT_NEAR(std::abs(second_beltrami(h, z)), q / a, 1e-15);
    EXPECT_NEAR(jacobian(h, z), a * a - q * q, 1e-15);
    EXPECT_NEAR(distortion(h, z), (a + q) / (a - q), 1e-14);
  }
  EXPECT_THROW(distortion(h, std::polar(0.5, 0.0)), Error);
}

TEST(Residual, FixturesConformalAndPerturbationDetected) {
  for (const auto& name : ex::fixture_names()) {
    const auto F = ex::fixture(name);
    EXPECT_LE(conformality_residual_grid(F, 8, 64).max_relative, 1e-12) << name;
  }
  auto F = ex::fixture("catenoid");
  F.w = 1.1 * F.w;
  EXPECT_GT(conformality_residual_grid(F, 8, 64).max_relative, 1e-3);
}

TEST(Period, PrincipalMaps) {
  EXPECT_NEAR(period_defect(ex::principal(ex::Principal::flat), 2.0), 2.0 * kPi, 1e-12);
  EXPECT_NEAR(period_defect(ex::principal(ex::Principal::sharp), 2.0), 0.0, 1e-12);
  EXPECT_NEAR(period_defect(ex::example32_h(), 1.5), 0.0, 1e-12);
  // The period does not depend on the circle.
  EXPECT_NEAR(period_defect(ex::principal(ex::Principal::flat), 1.3), 2.0 * kPi, 1e-12);
}

TEST(Period, ZeroOfPhiOnContour) {
  // h_zbar of the catenoid-type map mode(1, 1, 1) vanishes nowhere, but phi of
  // example32 vanishes at |z| = 2.
  try {
    period_defect(ex::example32_h(), 2.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::move_contour);
  }
}

TEST(Lift, MatchesClosedFormHeights) {
  const auto h = ex::example32_h();
  const auto w = lift_w(h, 1.0, 1);
  const auto W = ex::example32_w();
  double best = INFINITY;
  for (int sign : {1, -1}) {
    const auto ws = lift_w(h, 1.0, sign);
    double err = 0.0;
    for (int j = 0; j < 40; ++j) {
      const cplx z = std::polar(1.5, 0.15 * j);
      err = std::max(err, std::abs(std::real(ws(z) - W(z)) + std::real(W(1.0))));
    }
    best = std::min(best, err);
  }
  EXPECT_LT(best, 1e-12);
  EXPECT_NEAR(std::real(w(1.0)), 0.0, 1e-15);

  const auto wc = lift_w(ex::principal(ex::Principal::sharp), 1.0, 1);
  EXPECT_NEAR(std::abs(wc.log_coeff().real()), 1.0, 1e-12);
}

TEST(Lift, LaurentRouteAgreesWithPathQuadrature) {
  for (std::uint64_t seed : {3u, 4u}) {
    const auto h = ex::example32_h() + 0.05 * verify::random_harmonic(seed, 2);
    AnnularHarmonic w;
    try {
      w = lift_w(h, 1.0, 1, 1e-6);
    } catch (const Error& e) {
      ASSERT_EQ(e.kind(), ErrorKind::non_liftable);
      continue;
    }
    for (cplx z : {cplx(1.2, 0.5), cplx(-0.3, 1.4), cplx(0.9, -0.9)})
      EXPECT_NEAR(std::real(w(z)), lift_w_path(h, 1.0, z, 1), 1e-9);
  }
  const auto h = ex::example32_h();
  const auto w = lift_w(h, 1.0, 1);
  for (cplx z : {cplx(1.5, 1.0), cplx(-1.2, 0.2), cplx(0.6, -1.4)})
    EXPECT_NEAR(std::real(w(z)), lift_w_path(h, 1.0, z, 1), 1e-11);
}

TEST(Lift, HelicoidNotLiftable) {
  EXPECT_THROW(lift_w(ex::principal(ex::Principal::flat)), Error);
}

TEST(Geometry, PlaneAreaAndModulus) {
  const auto F = ex::make_surface(AnnularHarmonic::z(), AnnularHarmonic(), Annulus(1.0, 2.0));
  EXPECT_NEAR(area(F), 3.0 * kPi, 1e-12);
  EXPECT_NEAR(modulus(F), std::log(2.0), 1e-15);
}

TEST(Geometry, CatenoidArea) {
  // Catenoid over 0 <= t <= T: area = pi (T + sinh(2T)/2).
  ex::FixtureParams p;
  p.R = 3.0;
  const auto F = ex::fixture("catenoid", p);
  const double T = std::log(3.0);
  EXPECT_NEAR(area(F), kPi * (T + 0.5 * std::sinh(2.0 * T)), 1e-11);
}

TEST(Geometry, ImageRadiiOfStretch) {
  const auto h = AnnularHarmonic::mode(1, 0.75, 0.25);
  const auto ir = image_radii(h, 2.0);
  EXPECT_NEAR(ir.min, 1.625, 1e-14);
  EXPECT_NEAR(ir.max, 1.625, 1e-14);
  EXPECT_NEAR(ir.rms, 1.625, 1e-14);
}

TEST(Mesh, CountsAndObjFormat) {
  const auto F = ex::fixture("catenoid");
  const auto m = mesh(F, 5, 12);
  EXPECT_EQ(m.vertices.size(), 60u);
  EXPECT_EQ(m.faces.size(), 2u * 4u * 12u);
  for (const auto& f : m.faces)
    for (int v : f) EXPECT_LT(v, 60);
  // Inner ring sits at height w = log r = 0 on the catenoid.
  EXPECT_NEAR(m.vertices[0][2], 0.0, 1e-15);
  std::ostringstream os;
  write_obj(m, os);
  const std::string s = os.str();
  EXPECT_EQ(s.rfind("v ", 0), 0u);
  EXPECT_NE(s.find("\nf 1 13 14\n"), std::string::npos);
  EXPECT_THROW(mesh(F, 1, 12), Error);
}

TEST(Surface, HelicoidHeightIsMultivalued) {
  const auto F = ex::fixture("helicoid");
  EXPECT_TRUE(F.multivalued());
  EXPECT_NEAR(F.period(), 2.0 * kPi, 1e-15);
  EXPECT_NEAR(F.height(cplx(0.0, 1.5)), kPi / 2.0, 1e-15);
}
