#pragma once

// Minimal surfaces F = (h, w) in isothermal coordinates over an annulus.
// h is the complex horizontal coordinate, w the real height; they are
// coupled by h_z conj(h_zbar) + w_z^2 = 0.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <vector>

#include "bjorling/errors.hpp"
#include "bjorling/harmonic_series.hpp"
#include "bjorling/quadrature.hpp"

namespace bjorling {

inline constexpr double kCriticalTol = 1e-13;

/// Unit normal (xi, tau) in C x R.
struct GaussVector {
  cplx xi;
  double tau = 1.0;

  double norm_defect() const { return std::abs(std::norm(xi) + tau * tau - 1.0); }
};

/// Normal field written in terms of a square root of the second Beltrami
/// coefficient: N = (2i sqrt(nu), 1 - |nu|) / (1 + |nu|).
inline GaussVector gauss_from_sqrt_nu(cplx sqrt_nu) {
  const double m = std::norm(sqrt_nu);
  return {2.0 * cplx(0.0, 1.0) * sqrt_nu / (1.0 + m), (1.0 - m) / (1.0 + m)};
}

struct MinimalSurface {
  AnnularHarmonic h;
  AnnularHarmonic w;
  Annulus annulus;
  /// Coefficient of arg z added to w (nonzero only for surfaces whose height
  /// is multivalued, e.g. the helicoid); w has period 2 pi * angular.
  double angular = 0.0;
  /// Declared conformality tolerance and the residual measured at construction.
  double tolerance = 1e-10;
  double residual = 0.0;

  bool multivalued() const { return angular != 0.0; }
  double period() const { return 2.0 * std::numbers::pi * angular; }

  double height(cplx z) const {
    double v = std::real(w(z));
    if (angular != 0.0) v += angular * std::arg(z);
    return v;
  }
  cplx height_z(cplx z) const {
    cplx v = w.derivatives(z).hz;
    if (angular != 0.0) v += angular * cplx(0.0, -0.5) / z;
    return v;
  }
};

struct Mesh {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<int, 3>> faces;  // 0-based
  int n_rho = 0;
  int n_theta = 0;
};

/// Scale of h used for relative thresholds.
inline double derivative_scale(const AnnularHarmonic& h) {
  return std::max(1.0, h.coeff_scale() * std::max(1, h.degree()));
}

/// |h_z conj(h_zbar) + w_z^2| at z.
inline double conformality_residual(const MinimalSurface& F, cplx z) {
  const Derivatives d = F.h.derivatives(z);
  const cplx wz = F.height_z(z);
  return std::abs(d.hz * std::conj(d.hzbar) + wz * wz);
}

struct ResidualStats {
  double max_abs = 0.0;       // max |h_z conj(h_zbar) + w_z^2|
  double max_relative = 0.0;  // per circle: max residual / max (|h_z| + |h_zbar|)^2
  double scale = 0.0;         // max (|h_z| + |h_zbar|)^2 over the grid
};

/// Residual over a grid of n_rho geometric radii in [r, R] and n_theta angles.
inline ResidualStats conformality_residual_grid(const MinimalSurface& F, int n_rho, int n_theta) {
  ResidualStats s;
  const double r = F.annulus.r, R = F.annulus.R;
  for (int i = 0; i < n_rho; ++i) {
    const double rho = n_rho == 1 ? r : r * std::pow(R / r, static_cast<double>(i) / (n_rho - 1));
    double circle_scale = 0.0, circle_res = 0.0;
    for (int j = 0; j < n_theta; ++j) {
      const cplx z = std::polar(rho, 2.0 * std::numbers::pi * j / n_theta);
      const Derivatives d = F.h.derivatives(z);
      const cplx wz = F.height_z(z);
      const double res = std::abs(d.hz * std::conj(d.hzbar) + wz * wz);
      const double sc = std::pow(std::abs(d.hz) + std::abs(d.hzbar), 2);
      circle_res = std::max(circle_res, res);
      circle_scale = std::max(circle_scale, sc);
    }
    s.max_abs = std::max(s.max_abs, circle_res);
    s.scale = std::max(s.scale, circle_scale);
    if (circle_scale > 0.0) s.max_relative = std::max(s.max_relative, circle_res / circle_scale);
  }
  return s;
}

/// First Beltrami coefficient mu = h_zbar / h_z.
inline cplx first_beltrami(const AnnularHarmonic& h, cplx z) {
  const Derivatives d = h.derivatives(z);
  if (std::abs(d.hz) == 0.0) throw Error(ErrorKind::singularity, "first_beltrami: h_z = 0");
  return d.hzbar / d.hz;
}

/// Second Beltrami coefficient nu = h_zbar / conj(h_z).
inline cplx second_beltrami(const AnnularHarmonic& h, cplx z) {
  const Derivatives d = h.derivatives(z);
  if (std::abs(d.hz) == 0.0) throw Error(ErrorKind::singularity, "second_beltrami: h_z = 0");
  return d.hzbar / std::conj(d.hz);
}

inline double jacobian(const AnnularHarmonic& h, cplx z) {
  const Derivatives d = h.derivatives(z);
  return std::norm(d.hz) - std::norm(d.hzbar);
}

/// K_h = (|h_z| + |h_zbar|) / (|h_z| - |h_zbar|).
inline double distortion(const AnnularHarmonic& h, cplx z) {
  const Derivatives d = h.derivatives(z);
  const double p = std::abs(d.hz), q = std::abs(d.hzbar);
  if (!(p > q)) throw Error(ErrorKind::orientation, "distortion: nonpositive Jacobian", p * p - q * q);
  return (p + q) / (p - q);
}

/// Unit normal from the cross product of the coordinate tangents F_x, F_y.
inline GaussVector gauss_map(const MinimalSurface& F, cplx z) {
  const Derivatives d = F.h.derivatives(z);
  if (std::abs(d.hz) + std::abs(d.hzbar) < kCriticalTol * derivative_scale(F.h))
    throw Error(ErrorKind::singularity, "gauss_map: critical point of h");
  const cplx hx = d.hz + d.hzbar;
  const cplx hy = cplx(0.0, 1.0) * (d.hz - d.hzbar);
  const cplx wz = F.height_z(z);
  const double wx = 2.0 * wz.real(), wy = -2.0 * wz.imag();
  const double ux = hx.real(), vx = hx.imag(), uy = hy.real(), vy = hy.imag();
  const double n1 = vx * wy - wx * vy;
  const double n2 = wx * uy - ux * wy;
  const double n3 = ux * vy - vx * uy;
  const double len = std::sqrt(n1 * n1 + n2 * n2 + n3 * n3);
  return {cplx(n1, n2) / len, n3 / len};
}

/// Normal through the meromorphic factor lambda = -i w_z / h_z, whose
/// conjugate is a square root of nu; independent of the cross product.
inline GaussVector gauss_map_via_lambda(const MinimalSurface& F, cplx z) {
  const Derivatives d = F.h.derivatives(z);
  if (std::abs(d.hz) < kCriticalTol * derivative_scale(F.h))
    throw Error(ErrorKind::singularity, "gauss_map_via_lambda: h_z = 0");
  const cplx lambda = cplx(0.0, -1.0) * F.height_z(z) / d.hz;
  return gauss_from_sqrt_nu(std::conj(lambda));
}

namespace detail {

/// sqrt(phi) with nonnegative real part; ties broken towards Im > 0.
inline cplx basepoint_root(cplx phi) {
  cplx s = std::sqrt(phi);
  if (std::abs(s.real()) <= 1e-12 * std::abs(s)) s = cplx(0.0, std::abs(s.imag()));
  else if (s.real() < 0.0) s = -s;
  return s;
}

inline cplx phi_of(const AnnularHarmonic& h, cplx z) {
  const Derivatives d = h.derivatives(z);
  return d.hz * std::conj(d.hzbar);
}

struct TrackedRoot {
  std::vector<cplx> values;  // sqrt(phi) at theta0 + 2 pi j / M, continuous in j
  bool degenerate = false;   // phi vanishes identically
};

/// Continuous branch of sqrt(phi) around T_rho starting at angle theta0.
inline TrackedRoot track_sqrt_phi(const AnnularHarmonic& h, double rho, double theta0, int M) {
  std::vector<cplx> phi(static_cast<std::size_t>(M));
  double big = 0.0;
  for (int j = 0; j < M; ++j) {
    phi[static_cast<std::size_t>(j)] = phi_of(h, std::polar(rho, theta0 + 2.0 * std::numbers::pi * j / M));
    big = std::max(big, std::abs(phi[static_cast<std::size_t>(j)]));
  }
  const double scale = std::pow(derivative_scale(h), 2) * std::max(1.0, 1.0 / (rho * rho));
  TrackedRoot out;
  if (big <= 1e-26 * scale) {
    out.degenerate = true;
    out.values.assign(static_cast<std::size_t>(M), cplx{});
    return out;
  }
  for (int j = 0; j < M; ++j)
    if (std::abs(phi[static_cast<std::size_t>(j)]) <= 1e-10 * big)
      throw Error(ErrorKind::move_contour, "zero of h_z conj(h_zbar) on the contour", rho);
  out.values.resize(static_cast<std::size_t>(M));
  out.values[0] = basepoint_root(phi[0]);
  for (int j = 1; j < M; ++j) {
    const cplx s = std::sqrt(phi[static_cast<std::size_t>(j)]);
    const cplx prev = out.values[static_cast<std::size_t>(j - 1)];
    out.values[static_cast<std::size_t>(j)] = std::abs(s - prev) <= std::abs(s + prev) ? s : -s;
  }
  const cplx last = out.values.back();
  const cplx s0 = out.values[0];
  if (std::abs(last + s0) < std::abs(last - s0))
    throw Error(ErrorKind::non_liftable, "sqrt(h_z conj(h_zbar)) changes sign around the circle");
  return out;
}

inline int lift_grid_size(const AnnularHarmonic& h) { return std::max(512, 16 * h.degree() + 16); }

}  // namespace detail

/// Period of the height function around T_rho: 2 Im of the contour integral
/// of sqrt(h_z conj(h_zbar)) dz along a continuously tracked branch.
inline double period_defect(const AnnularHarmonic& h, double rho, int M = 0) {
  if (!(rho > 0.0)) throw Error(ErrorKind::domain, "period_defect: rho must be positive");
  if (M <= 0) M = detail::lift_grid_size(h);
  const auto tr = detail::track_sqrt_phi(h, rho, 0.0, M);
  if (tr.degenerate) return 0.0;
  cplx acc{};
  for (int j = 0; j < M; ++j) {
    const cplx z = std::polar(rho, 2.0 * std::numbers::pi * j / M);
    acc += tr.values[static_cast<std::size_t>(j)] * cplx(0.0, 1.0) * z;
  }
  const cplx integral = acc * (2.0 * std::numbers::pi / M);
  return 2.0 * integral.imag();
}

/// Height function w = sign * 2 Im of the integral of sqrt(phi) from z0,
/// returned as a real AnnularHarmonic with w(z0) = 0. The branch of the root
/// is the one with nonnegative real part at z0.
inline AnnularHarmonic lift_w(const AnnularHarmonic& h, cplx z0 = 1.0, int sign = 1, double tol = 1e-10) {
  const double rho0 = std::abs(z0);
  if (!(rho0 > 0.0)) throw Error(ErrorKind::domain, "lift_w: basepoint must be nonzero");
  const double theta0 = std::arg(z0);
  const int M = detail::lift_grid_size(h);
  const auto tr = detail::track_sqrt_phi(h, rho0, theta0, M);
  if (tr.degenerate) return AnnularHarmonic();

  // Laurent coefficients e_k of sqrt(phi) = sum e_k z^k from samples on T_rho0.
  const int K = (M - 1) / 2;
  std::map<int, cplx> e;
  double emax = 0.0;
  for (int k = -K; k <= K; ++k) {
    cplx s{};
    for (int j = 0; j < M; ++j)
      s += tr.values[static_cast<std::size_t>(j)] * std::polar(1.0, -k * (theta0 + 2.0 * std::numbers::pi * j / M));
    s /= static_cast<double>(M) * std::pow(rho0, k);
    e[k] = s;
    emax = std::max(emax, std::abs(s) * std::pow(rho0, k));
  }
  const double defect = 4.0 * std::numbers::pi * e[-1].real();
  if (std::abs(defect) > tol * std::max(1.0, emax))
    throw Error(ErrorKind::non_liftable, "height function has a nonzero period", defect);

  // w_z = -i sign sqrt(phi); w = 2 Re(sum a_n z^n) + c log|z| + d.
  const cplx factor = cplx(0.0, -1.0) * static_cast<double>(sign);
  std::map<int, Modes> modes;
  for (const auto& [k, ek] : e) {
    if (k == -1) continue;
    if (std::abs(ek) * std::pow(rho0, k) <= 1e-13 * emax) continue;  // DFT round-off
    const int n = k + 1;
    const cplx a = factor * ek / static_cast<double>(n);
    modes[n].a += a;
    modes[-n].b += std::conj(a);
  }
  const double c = 2.0 * (factor * e[-1]).real();
  AnnularHarmonic w(c, 0.0, std::move(modes));
  const double w0 = std::real(w(z0));
  return AnnularHarmonic(c, -w0, w.modes());
}

/// Height at z by direct quadrature along the radial-then-circular path from
/// z0; the branch is tracked pointwise. Independent of the Laurent route.
inline double lift_w_path(const AnnularHarmonic& h, cplx z0, cplx z, int sign = 1, int panels = 64) {
  using G = boost::math::quadrature::gauss<double, 20>;
  const double r0 = std::abs(z0), r1 = std::abs(z);
  const double t0 = std::arg(z0);
  double t1 = std::arg(z);
  if (t1 < t0) t1 += 2.0 * std::numbers::pi;
  cplx root = detail::basepoint_root(detail::phi_of(h, z0));
  auto follow = [&](cplx zz) {
    const cplx s = std::sqrt(detail::phi_of(h, zz));
    root = std::abs(s - root) <= std::abs(s + root) ? s : -s;
    return root;
  };
  cplx total{};
  // radial leg: z = rho e^{i t0}, dz = e^{i t0} drho
  for (int p = 0; p < panels; ++p) {
    const double a = r0 + (r1 - r0) * p / panels, b = r0 + (r1 - r0) * (p + 1) / panels;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    // nodes are visited in increasing order so the branch follows the path
    std::vector<std::pair<double, double>> nodes;
    for (std::size_t i = 0; i < G::abscissa().size(); ++i) {
      const double x = G::abscissa()[i], wgt = G::weights()[i];
      nodes.emplace_back(-x, wgt);
      if (x != 0.0) nodes.emplace_back(x, wgt);
    }
    std::sort(nodes.begin(), nodes.end());
    for (const auto& [x, wgt] : nodes) {
      const double rho = mid + half * x;
      total += wgt * half * follow(std::polar(rho, t0)) * std::polar(1.0, t0);
    }
  }
  // arc leg: z = r1 e^{it}, dz = i z dt
  for (int p = 0; p < panels; ++p) {
    const double a = t0 + (t1 - t0) * p / panels, b = t0 + (t1 - t0) * (p + 1) / panels;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    std::vector<std::pair<double, double>> nodes;
    for (std::size_t i = 0; i < G::abscissa().size(); ++i) {
      const double x = G::abscissa()[i], wgt = G::weights()[i];
      nodes.emplace_back(-x, wgt);
      if (x != 0.0) nodes.emplace_back(x, wgt);
    }
    std::sort(nodes.begin(), nodes.end());
    for (const auto& [x, wgt] : nodes) {
      const cplx zz = std::polar(r1, mid + half * x);
      total += wgt * half * follow(zz) * cplx(0.0, 1.0) * zz;
    }
  }
  return sign * 2.0 * total.imag();
}

inline double modulus(const MinimalSurface& F) { return F.annulus.modulus(); }

/// Area as the integral of (|h_z| + |h_zbar|)^2 over the annulus.
inline double area(const MinimalSurface& F) {
  const int M = default_quadrature_size(F.h.degree());
  auto ring = [&](double rho) {
    return rho * quadrature_mean(
                     [&](cplx z) {
                       const Derivatives d = F.h.derivatives(z);
                       return std::pow(std::abs(d.hz) + std::abs(d.hzbar), 2);
                     },
                     rho, M);
  };
  const double a = F.annulus.r, b = F.annulus.R;
  return 2.0 * std::numbers::pi * radial_integral<64>(ring, a, b, panels_per_decade(a, b));
}

struct ImageRadii {
  double min;
  double max;
  double rms;
};

inline ImageRadii image_radii(const AnnularHarmonic& h, double rho, int M = 0) {
  if (M <= 0) M = default_quadrature_size(h.degree());
  ImageRadii out{std::numeric_limits<double>::infinity(), 0.0, std::sqrt(mean_sq(h, rho))};
  for (int j = 0; j < M; ++j) {
    const double v = std::abs(h(std::polar(rho, 2.0 * std::numbers::pi * j / M)));
    out.min = std::min(out.min, v);
    out.max = std::max(out.max, v);
  }
  return out;
}

/// Geometric rho grid times uniform theta grid; quads split along the
/// (i,j)-(i+1,j+1) diagonal.
inline Mesh mesh(const MinimalSurface& F, int n_rho, int n_theta) {
  if (n_rho < 2 || n_theta < 3) throw Error(ErrorKind::precondition, "mesh: need n_rho >= 2 and n_theta >= 3");
  Mesh m;
  m.n_rho = n_rho;
  m.n_theta = n_theta;
  const double r = F.annulus.r, R = F.annulus.R;
  for (int i = 0; i < n_rho; ++i) {
    const double rho = r * std::pow(R / r, static_cast<double>(i) / (n_rho - 1));
    for (int j = 0; j < n_theta; ++j) {
      const cplx z = std::polar(rho, 2.0 * std::numbers::pi * j / n_theta);
      const cplx hv = F.h(z);
      m.vertices.push_back({hv.real(), hv.imag(), F.height(z)});
    }
  }
  auto id = [&](int i, int j) { return i * n_theta + (j % n_theta); };
  for (int i = 0; i + 1 < n_rho; ++i)
    for (int j = 0; j < n_theta; ++j) {
      m.faces.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.faces.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  return m;
}

inline void write_obj(const Mesh& m, std::ostream& os) {
  char buf[128];
  for (const auto& v : m.vertices) {
    std::snprintf(buf, sizeof buf, "v %.9g %.9g %.9g\n", v[0], v[1], v[2]);
    os << buf;
  }
  for (const auto& f : m.faces) os << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

}  // namespace bjorling
