#pragma once

// Quadrature rules used as oracles for the closed-form spectral quantities.
// Uniform trapezoid in theta is spectrally accurate for smooth periodic
// integrands; Gauss-Legendre panels handle the radial direction.

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <type_traits>

#include "bjorling/errors.hpp"

namespace bjorling {

using cplx = std::complex<double>;

inline int default_quadrature_size(int degree) {
  return std::max(256, 4 * degree + 4);
}

/// Trapezoidal mean of f(theta_j), theta_j = 2 pi j / M.
template <class F>
auto theta_mean(F&& f, int M) {
  using R = std::decay_t<decltype(f(0.0))>;
  R acc{};
  for (int j = 0; j < M; ++j) acc += f(2.0 * std::numbers::pi * j / M);
  return acc / static_cast<double>(M);
}

/// (1/M) sum_j f(rho e^{i theta_j}); the single sanctioned circle oracle.
template <class F>
auto quadrature_mean(F&& f, double rho, int M) {
  if (M < 4) throw Error(ErrorKind::precondition, "quadrature_mean: M must be >= 4");
  if (!(rho > 0.0)) throw Error(ErrorKind::domain, "quadrature_mean: rho must be positive");
  return theta_mean([&](double t) { return f(std::polar(rho, t)); }, M);
}

/// Composite Gauss-Legendre integral of f over [a, b], split into `panels`
/// geometrically spaced pieces (a > 0) or uniform pieces (a == 0).
template <int Points = 64, class F>
auto radial_integral(F&& f, double a, double b, int panels = 1) {
  using G = boost::math::quadrature::gauss<double, Points>;
  using R = std::decay_t<decltype(f(1.0))>;
  R acc{};
  for (int p = 0; p < panels; ++p) {
    double lo, hi;
    if (a > 0.0) {
      lo = a * std::pow(b / a, static_cast<double>(p) / panels);
      hi = a * std::pow(b / a, static_cast<double>(p + 1) / panels);
    } else {
      lo = a + (b - a) * p / panels;
      hi = a + (b - a) * (p + 1) / panels;
    }
    acc += G::integrate(f, lo, hi);
  }
  return acc;
}

/// One 64-point panel per decade of rho, as the area rule prescribes.
inline int panels_per_decade(double a, double b) {
  return std::max(1, static_cast<int>(std::ceil(std::log10(b / a) - 1e-12)));
}

}  // namespace bjorling
