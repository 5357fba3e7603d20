#pragma once

// Closed-form surfaces and the sharp modulus / distortion bounds they attain.

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bjorling/errors.hpp"
#include "bjorling/harmonic_series.hpp"
#include "bjorling/surface.hpp"

namespace bjorling::extremals {

enum class Principal { sharp, flat, upsilon };

/// h# = (z + 1/zbar)/2, hb = (z - 1/zbar)/2, h^u = ((1+u)/2) z + ((1-u)/2)/zbar.
inline AnnularHarmonic principal(Principal kind, double upsilon = 0.0) {
  switch (kind) {
    case Principal::sharp: return AnnularHarmonic::mode(1, 0.5, 0.5);
    case Principal::flat: return AnnularHarmonic::mode(1, 0.5, -0.5);
    case Principal::upsilon:
      if (!(upsilon >= 0.0 && upsilon <= 1.0)) throw Error(ErrorKind::range, "upsilon must lie in [0, 1]", upsilon);
      return AnnularHarmonic::mode(1, 0.5 * (1.0 + upsilon), 0.5 * (1.0 - upsilon));
  }
  return {};
}

/// Same family without the restriction u <= 1 (u > 1 gives non-liftable heights).
inline AnnularHarmonic upsilon_map(double upsilon) {
  return AnnularHarmonic::mode(1, 0.5 * (1.0 + upsilon), 0.5 * (1.0 - upsilon));
}

inline AnnularHarmonic log_modulus(double scale = 1.0, double shift = 0.0) { return AnnularHarmonic(scale, shift); }

/// Real harmonic Re(a z^n) for n != 0.
inline AnnularHarmonic real_part_of_power(int n, cplx a) {
  return AnnularHarmonic(0.0, 0.0, {{n, {0.5 * a, 0.0}}, {-n, {0.0, 0.5 * std::conj(a)}}});
}

struct FixtureParams {
  double K = 2.0;
  double upsilon = 0.5;
  double r = 0.5;  // inner radius of the critical Nitsche map
  double R = 0.0;  // outer radius of the declared annulus (0: fixture default)
};

inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {"catenoid",       "helicoid",        "enneper",
                                                 "example32",      "nitsche_critical", "catenoidal_slab",
                                                 "paraboloid_enneper", "extremal_th34", "upsilon"};
  return names;
}

inline AnnularHarmonic example32_h() {
  return AnnularHarmonic(0.0, 0.0, {{1, {16.0 / 15.0, -1.0 / 15.0}}, {3, {4.0 / 45.0, -4.0 / 45.0}}});
}

/// (4/15) Im(z - 4/z).
inline AnnularHarmonic example32_w() {
  return AnnularHarmonic(0.0, 0.0,
                         {{1, {cplx(0.0, -2.0 / 15.0), cplx(0.0, -8.0 / 15.0)}},
                          {-1, {cplx(0.0, 8.0 / 15.0), cplx(0.0, 2.0 / 15.0)}}});
}

/// Enneper surface obtained from the paraboloid initial data.
inline AnnularHarmonic paraboloid_enneper_h() {
  const double s5 = std::sqrt(5.0);
  return AnnularHarmonic(0.0, 0.0,
                         {{1, {0.5 + 1.5 / s5, 0.5 - 1.5 / s5}}, {-3, {1.0 / (3.0 * s5), -1.0 / (3.0 * s5)}}});
}

/// w = (alpha rho^2 + beta rho^-2) cos 2theta.
inline AnnularHarmonic cos2_profile(double alpha, double beta) {
  return AnnularHarmonic(0.0, 0.0, {{2, {0.5 * alpha, 0.5 * beta}}, {-2, {0.5 * beta, 0.5 * alpha}}});
}

/// Height matching the initial data w(e^{i theta}) = cos 2theta:
/// ((rho^2 + rho^-2)/2) cos 2theta + ((rho^2 - rho^-2)/4)(2/sqrt5) cos 2theta.
inline AnnularHarmonic paraboloid_enneper_w() {
  const double s5 = std::sqrt(5.0);
  return cos2_profile(0.5 + 0.5 / s5, 0.5 - 0.5 / s5);
}

/// The same expression with the first coefficient halved:
/// ((rho^2 + rho^-2)/4) cos 2theta + ((rho^2 - rho^-2)/4)(2/sqrt5) cos 2theta.
inline AnnularHarmonic paraboloid_enneper_w_quarter() {
  const double s5 = std::sqrt(5.0);
  return cos2_profile(0.25 + 0.5 / s5, 0.25 - 0.5 / s5);
}

inline MinimalSurface make_surface(AnnularHarmonic h, AnnularHarmonic w, Annulus A, double angular = 0.0) {
  MinimalSurface F{std::move(h), std::move(w), A, angular};
  F.tolerance = 1e-12;
  const auto stats = conformality_residual_grid(F, 16, 64);
  F.residual = stats.max_relative;
  return F;
}

inline MinimalSurface fixture(std::string_view name, const FixtureParams& p = {}) {
  auto outer = [&](double def) { return p.R > 0.0 ? p.R : def; };
  if (name == "catenoid") return make_surface(principal(Principal::sharp), log_modulus(), Annulus(1.0, outer(3.0)));
  if (name == "helicoid")
    return make_surface(principal(Principal::flat), AnnularHarmonic(), Annulus(1.0, outer(3.0)), 1.0);
  if (name == "enneper")
    return make_surface(AnnularHarmonic(0.0, 0.0, {{-1, {0.0, 1.0}}, {3, {-1.0 / 3.0, 0.0}}}),
                        real_part_of_power(2, 1.0), Annulus(0.5, outer(1.0)));
  if (name == "example32") return make_surface(example32_h(), example32_w(), Annulus(1.0, outer(3.0)));
  if (name == "nitsche_critical") {
    if (!(p.r > 0.0)) throw Error(ErrorKind::range, "nitsche_critical: r must be positive", p.r);
    return make_surface(AnnularHarmonic::mode(1, 0.5 / p.r, 0.5 * p.r), log_modulus(1.0, -std::log(p.r)),
                        Annulus(p.r, outer(3.0 * p.r)));
  }
  if (name == "catenoidal_slab" || name == "extremal_th34") {
    if (!(p.K >= 1.0)) throw Error(ErrorKind::range, "K must be >= 1", p.K);
    const double K = p.K;
    return make_surface(AnnularHarmonic::mode(1, (K + 1.0) / (2.0 * K), (K - 1.0) / (2.0 * K)),
                        log_modulus(std::sqrt(K * K - 1.0) / K), Annulus(1.0, outer(3.0)));
  }
  if (name == "paraboloid_enneper")
    return make_surface(paraboloid_enneper_h(), paraboloid_enneper_w(), Annulus(0.8, outer(1.25)));
  if (name == "upsilon") {
    const double u = p.upsilon;
    return make_surface(principal(Principal::upsilon, u), log_modulus(std::sqrt(std::max(0.0, 1.0 - u * u))),
                        Annulus(1.0, outer(3.0)));
  }
  throw Error(ErrorKind::unknown_name, "unknown fixture: " + std::string(name));
}

/// Critical points of the Example 3.2 map.
inline std::vector<cplx> example32_critical_points() { return {cplx(0.0, 2.0), cplx(0.0, -2.0)}; }

/// Root of lambda^6 - 48 lambda^4 + 3 lambda^2 - 4 in [6.9, 6.95], by bisection.
inline double example32_polynomial_root() {
  auto p = [](double x) {
    const double x2 = x * x;
    return ((x2 - 48.0) * x2 + 3.0) * x2 - 4.0;
  };
  auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-12; };
  const auto [lo, hi] = boost::math::tools::bisect(p, 6.9, 6.95, tol);
  return 0.5 * (lo + hi);
}

/// Positive zero of lambda -> h(i lambda) for the Example 3.2 map; h(i lambda)
/// vanishes exactly when 4 lambda^6 - 48 lambda^4 + 3 lambda^2 - 4 = 0.
inline double example32_axis_zero() {
  auto p = [](double x) {
    const double x2 = x * x;
    return ((4.0 * x2 - 48.0) * x2 + 3.0) * x2 - 4.0;
  };
  auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-13; };
  const auto [lo, hi] = boost::math::tools::bisect(p, 3.0, 4.0, tol);
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Bounds

enum class BoundKind {
  nitsche,
  grotzsch_lower,
  grotzsch_upper,
  combined,
  conjectured_upper,
  th34,
  reverse_harnack,
  graph,
  conjectured_cosh,
};

struct BoundRequest {
  BoundKind kind = BoundKind::nitsche;
  double t = 0.0;         // ratio R/r, or R for th34
  double K = 1.0;
  double modulus = 0.0;   // reverse_harnack, conjectured_cosh
  double sigma = 0.0;     // graph
};

struct BoundValue {
  double value;
  bool conjectured;
};

inline const std::vector<std::pair<std::string, BoundKind>>& bound_kinds() {
  static const std::vector<std::pair<std::string, BoundKind>> kinds = {
      {"nitsche", BoundKind::nitsche},
      {"grotzsch_lower", BoundKind::grotzsch_lower},
      {"grotzsch_upper", BoundKind::grotzsch_upper},
      {"combined", BoundKind::combined},
      {"conjectured_upper", BoundKind::conjectured_upper},
      {"th34", BoundKind::th34},
      {"reverse_harnack", BoundKind::reverse_harnack},
      {"graph", BoundKind::graph},
      {"conjectured_cosh", BoundKind::conjectured_cosh},
  };
  return kinds;
}

inline BoundKind parse_bound_kind(std::string_view s) {
  for (const auto& [name, kind] : bound_kinds())
    if (name == s) return kind;
  throw Error(ErrorKind::unknown_name, "unknown bound kind: " + std::string(s));
}

inline std::string to_string(BoundKind k) {
  for (const auto& [name, kind] : bound_kinds())
    if (kind == k) return name;
  return "?";
}

inline bool is_conjectured(BoundKind k) { return k == BoundKind::conjectured_upper || k == BoundKind::conjectured_cosh; }

namespace detail {
inline void need_K(double K) {
  if (!(K >= 1.0)) throw Error(ErrorKind::range, "K must be >= 1", K);
}
inline void need_t(double t) {
  if (!(t > 1.0) || !std::isfinite(t)) throw Error(ErrorKind::range, "ratio must be > 1", t);
}
}  // namespace detail

inline double nitsche(double t) {
  detail::need_t(t);
  return 0.5 * (t + 1.0 / t);
}
inline double grotzsch_lower(double t, double K) {
  detail::need_t(t);
  detail::need_K(K);
  return std::pow(t, 1.0 / K);
}
inline double grotzsch_upper(double t, double K) {
  detail::need_t(t);
  detail::need_K(K);
  return std::pow(t, K);
}
inline double combined(double t, double K) {
  detail::need_t(t);
  detail::need_K(K);
  return (K + 1.0) / (2.0 * K) * t + (K - 1.0) / (2.0 * K) / t;
}
inline double conjectured_upper(double t, double K) {
  detail::need_t(t);
  detail::need_K(K);
  return 0.5 * (K + 1.0) * t - 0.5 * (K - 1.0) / t;
}
inline double th34(double R, double K) { return combined(R, K); }
inline double reverse_harnack(double m, double K) {
  if (!(m > 0.0)) throw Error(ErrorKind::range, "modulus must be positive", m);
  detail::need_K(K);
  return ((K + 1.0) * std::exp(m) + (K - 1.0) * std::exp(-m)) / (2.0 * K);
}
inline double graph(double sigma, double K) {
  if (!(sigma > 1.0) || !std::isfinite(sigma)) throw Error(ErrorKind::range, "sigma must be > 1", sigma);
  detail::need_K(K);
  return std::log((K * sigma + std::sqrt(K * K * sigma * sigma - K * K + 1.0)) / (K + 1.0));
}
inline double conjectured_cosh(double m) {
  if (!(m > 0.0)) throw Error(ErrorKind::range, "modulus must be positive", m);
  return std::cosh(0.5 * m);
}

inline BoundValue bound(const BoundRequest& q) {
  const bool flag = is_conjectured(q.kind);
  switch (q.kind) {
    case BoundKind::nitsche: return {nitsche(q.t), flag};
    case BoundKind::grotzsch_lower: return {grotzsch_lower(q.t, q.K), flag};
    case BoundKind::grotzsch_upper: return {grotzsch_upper(q.t, q.K), flag};
    case BoundKind::combined: return {combined(q.t, q.K), flag};
    case BoundKind::conjectured_upper: return {conjectured_upper(q.t, q.K), flag};
    case BoundKind::th34: return {th34(q.t, q.K), flag};
    case BoundKind::reverse_harnack: return {reverse_harnack(q.modulus, q.K), flag};
    case BoundKind::graph: return {graph(q.sigma, q.K), flag};
    case BoundKind::conjectured_cosh: return {conjectured_cosh(q.modulus), flag};
  }
  return {std::numeric_limits<double>::quiet_NaN(), flag};
}

/// Grotzsch lower bound as an interval (t^{1/K}, t^K).
inline std::pair<double, double> grotzsch_interval(double t, double K) {
  return {grotzsch_lower(t, K), grotzsch_upper(t, K)};
}

struct ChainGaps {
  double combined_minus_grotzsch;
  double combined_minus_nitsche;
};

inline ChainGaps bound_chain_check(double t, double K) {
  const double c = combined(t, K);
  return {c - grotzsch_lower(t, K), c - nitsche(t)};
}

}  // namespace bjorling::extremals
