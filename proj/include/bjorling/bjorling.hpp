#pragma once

// Cauchy problem for minimal surfaces on the unit circle: given the boundary
// curve F0 = (h0, w0) and a normal field along it (through nu0, Gauss vectors,
// or a slope function K), recover the Neumann data and extend harmonically.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include "bjorling/errors.hpp"
#include "bjorling/harmonic_series.hpp"
#include "bjorling/surface.hpp"

namespace bjorling {

struct BjorlingData {
  FourierSeries h0;
  FourierSeries w0;
  /// Either nu0 or gauss is used; gauss takes precedence when nonempty.
  FourierSeries nu0;
  std::vector<GaussVector> gauss;  // samples at theta_j = 2 pi j / gauss.size()
};

struct SlopeData {
  FourierSeries h0;
  FourierSeries w0;
  std::vector<double> K;  // samples of K(theta) >= 1 at theta_j = 2 pi j / K.size()
};

struct SolveOptions {
  int truncation = kDefaultTruncation;
  double tol = 1e-10;
  int sign = 1;
  double step = 0.01;
  int max_steps = 300;
};

struct ResidualSample {
  double rho;
  double residual;
};

struct SolveReport {
  double r = 1.0;
  double R = 1.0;
  double residual_max = 0.0;
  double w_crosscheck = 0.0;
  double decay_rate = 0.0;
  double step = 0.01;
  std::vector<ResidualSample> profile;
};

struct SolveResult {
  MinimalSurface surface;
  SolveReport report;
};

namespace detail {

inline double theta_at(int j, int M) { return 2.0 * std::numbers::pi * j / M; }

inline std::string angle_note(int j, int M) {
  std::ostringstream os;
  os << " at theta = " << theta_at(j, M);
  return os.str();
}

inline FourierSeries real_part(const FourierSeries& s) { return 0.5 * (s + s.conj()); }

/// Sqrt of nu along T, continuous in theta and principal at theta = 0.
/// Samples with |nu| below 1e-12 get root 0 and are skipped by the tracking.
inline std::vector<cplx> continuous_sqrt(const std::vector<cplx>& nu) {
  const int M = static_cast<int>(nu.size());
  std::vector<cplx> out(nu.size());
  std::optional<cplx> prev, first;
  for (int j = 0; j < M; ++j) {
    const cplx v = nu[static_cast<std::size_t>(j)];
    if (std::abs(v) < 1e-12) {
      out[static_cast<std::size_t>(j)] = 0.0;
      continue;
    }
    cplx s = std::sqrt(v);
    if (prev && std::abs(s + *prev) < std::abs(s - *prev)) s = -s;
    out[static_cast<std::size_t>(j)] = s;
    prev = s;
    if (!first) first = s;
  }
  if (first && prev && M > 1 && std::abs(*first + *prev) < std::abs(*first - *prev))
    throw Error(ErrorKind::branch_obstruction, "nu0 has no continuous square root on the circle");
  return out;
}

/// Samples of a FourierSeries, or of its Fourier resampling when sizes differ.
inline std::vector<cplx> resample(const std::vector<cplx>& samples, int M) {
  if (static_cast<int>(samples.size()) == M) return samples;
  return analyze(std::span<const cplx>(samples)).synthesize(M);
}

}  // namespace detail

/// nu from Gauss vectors: |nu| = (1 - tau)/(1 + tau), sqrt(nu) = -i xi (1 + |nu|)/2.
inline std::vector<cplx> sqrt_nu_from_gauss(const std::vector<GaussVector>& N0) {
  std::vector<cplx> out;
  out.reserve(N0.size());
  const int M = static_cast<int>(N0.size());
  for (int j = 0; j < M; ++j) {
    const auto& g = N0[static_cast<std::size_t>(j)];
    if (g.norm_defect() > 1e-10) throw Error(ErrorKind::invalid_input, "invalid Gauss vector" + detail::angle_note(j, M));
    if (!(g.tau > 0.0))
      throw Error(ErrorKind::slope, "normal not in the northern hemisphere" + detail::angle_note(j, M), g.tau);
    const double mod = (1.0 - g.tau) / (1.0 + g.tau);
    const cplx s = cplx(0.0, -1.0) * g.xi * (1.0 + mod) / 2.0;
    if (std::abs(std::norm(s) - mod) > 1e-10)
      throw Error(ErrorKind::invalid_input, "Gauss vector inconsistent with |nu|" + detail::angle_note(j, M));
    out.push_back(s);
  }
  return out;
}

inline FourierSeries nu_from_gauss(const std::vector<GaussVector>& N0) {
  if (N0.size() < 2) throw Error(ErrorKind::invalid_input, "nu_from_gauss: need at least 2 samples");
  auto s = sqrt_nu_from_gauss(N0);
  for (auto& v : s) v *= v;
  return analyze(std::span<const cplx>(s)).chopped(1e-14);
}

inline int working_grid(int truncation, int data_degree) {
  return std::max({256, 8 * truncation, 8 * data_degree + 8});
}

/// Pointwise h_rho = [-i(1+|nu|^2) h_theta + 2i nu conj(h_theta)] / (1 - |nu|^2).
inline std::vector<cplx> neumann_samples(const std::vector<cplx>& htheta, const std::vector<cplx>& nu) {
  const int M = static_cast<int>(htheta.size());
  std::vector<cplx> out(htheta.size());
  const cplx I(0.0, 1.0);
  for (int j = 0; j < M; ++j) {
    const cplx v = nu[static_cast<std::size_t>(j)];
    const double m2 = std::norm(v);
    if (!(m2 < 1.0)) throw Error(ErrorKind::ellipticity, "|nu0| >= 1" + detail::angle_note(j, M), std::sqrt(m2));
    const cplx ht = htheta[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(j)] = (-I * (1.0 + m2) * ht + 2.0 * I * v * std::conj(ht)) / (1.0 - m2);
  }
  return out;
}

inline double sup_abs(const std::vector<cplx>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

/// Throws the ellipticity error when sup|nu| >= 1, naming the worst angle.
inline void require_elliptic(const std::vector<cplx>& nu) {
  const auto it = std::max_element(nu.begin(), nu.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
  if (it == nu.end() || std::abs(*it) < 1.0) return;
  const int M = static_cast<int>(nu.size());
  throw Error(ErrorKind::ellipticity, "sup|nu0| >= 1" + detail::angle_note(static_cast<int>(it - nu.begin()), M),
              std::abs(*it));
}

inline FourierSeries neumann_from_beltrami(const FourierSeries& h0, const FourierSeries& nu0, int M = 0) {
  if (M <= 0) M = working_grid(kDefaultTruncation, std::max(h0.degree(), nu0.degree()));
  const auto nu = nu0.synthesize(M);
  require_elliptic(nu);
  const auto hr = neumann_samples(h0.derivative().synthesize(M), nu);
  return analyze(std::span<const cplx>(hr)).chopped(1e-14);
}

/// Solves a_n + b_n = p_n, n(a_n - b_n) = q_n; c = q_0, d = p_0.
inline AnnularHarmonic extend_harmonic(const FourierSeries& dirichlet, const FourierSeries& neumann) {
  std::map<int, Modes> modes;
  std::map<int, bool> seen;
  for (const auto& [n, c] : dirichlet.coeffs()) seen[n] = true;
  for (const auto& [n, c] : neumann.coeffs()) seen[n] = true;
  for (const auto& [n, unused] : seen) {
    if (n == 0) continue;
    const cplx p = dirichlet.coeff(n), q = neumann.coeff(n) / static_cast<double>(n);
    modes[n] = {0.5 * (p + q), 0.5 * (p - q)};
  }
  return AnnularHarmonic(neumann.coeff(0), dirichlet.coeff(0), std::move(modes));
}

/// Pointwise w_rho = -Re(conj(xi) h_rho) / tau.
inline std::vector<double> w_neumann_samples(const std::vector<cplx>& hrho, const std::vector<GaussVector>& N0) {
  const int M = static_cast<int>(N0.size());
  std::vector<double> out(N0.size());
  for (int j = 0; j < M; ++j) {
    const auto& g = N0[static_cast<std::size_t>(j)];
    if (!(g.tau > 0.0))
      throw Error(ErrorKind::slope, "normal not in the northern hemisphere" + detail::angle_note(j, M), g.tau);
    out[static_cast<std::size_t>(j)] = -std::real(std::conj(g.xi) * hrho[static_cast<std::size_t>(j)]) / g.tau;
  }
  return out;
}

inline FourierSeries w_neumann(const FourierSeries& h_rho, const std::vector<GaussVector>& N0) {
  const int M = static_cast<int>(N0.size());
  if (M < 2) throw Error(ErrorKind::invalid_input, "w_neumann: need at least 2 samples");
  const auto w = w_neumann_samples(h_rho.synthesize(M), N0);
  return detail::real_part(analyze(std::span<const double>(w)).chopped(1e-14));
}

/// Least-squares slope of log max(|a_n|, |b_n|) against |n|, negated.
inline double decay_rate(const AnnularHarmonic& h) {
  std::map<int, double> mag;
  for (const auto& [n, m] : h.modes()) {
    const double v = std::max(std::abs(m.a), std::abs(m.b));
    if (v > 0.0) mag[std::abs(n)] = std::max(mag[std::abs(n)], v);
  }
  if (mag.size() < 2) return 0.0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(mag.size());
  for (const auto& [n, v] : mag) {
    const double x = n, y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return -(k * sxy - sx * sy) / (k * sxx - sx * sx);
}

struct CircleCheck {
  double residual;     // max |phi + w_z^2| / max (|h_z| + |h_zbar|)^2
  double min_jacobian; // min J_h on the circle
};

inline CircleCheck check_circle(const MinimalSurface& F, double rho, int M) {
  double res = 0.0, scale = 0.0, jmin = std::numeric_limits<double>::infinity();
  for (int j = 0; j < M; ++j) {
    const cplx z = std::polar(rho, detail::theta_at(j, M));
    const Derivatives d = F.h.derivatives(z);
    const cplx wz = F.height_z(z);
    res = std::max(res, std::abs(d.hz * std::conj(d.hzbar) + wz * wz));
    scale = std::max(scale, std::pow(std::abs(d.hz) + std::abs(d.hzbar), 2));
    jmin = std::min(jmin, std::norm(d.hz) - std::norm(d.hzbar));
  }
  return {scale > 0.0 ? res / scale : res, jmin};
}

/// Largest grid-tested annulus exp(-i step) .. exp(i step) around T on which the
/// relative conformality residual stays below tol and J_h > 0.
inline std::pair<double, double> validity_annulus(const MinimalSurface& F, const SolveOptions& opts, int M,
                                                  SolveReport& rep) {
  const auto at1 = check_circle(F, 1.0, M);
  rep.profile.push_back({1.0, at1.residual});
  rep.residual_max = at1.residual;
  if (at1.residual > opts.tol)
    throw Error(ErrorKind::inconsistent_data, "conformality residual exceeds tol on the unit circle", at1.residual);
  double bounds[2] = {1.0, 1.0};
  for (int dir : {-1, 1}) {
    for (int i = 1; i <= opts.max_steps; ++i) {
      const int k = dir * i;
      const double rho = std::exp(k * opts.step);
      const auto c = check_circle(F, rho, M);
      if (!(c.residual <= opts.tol) || !(c.min_jacobian > 0.0)) break;
      rep.profile.push_back({rho, c.residual});
      rep.residual_max = std::max(rep.residual_max, c.residual);
      bounds[dir < 0 ? 0 : 1] = rho;
    }
  }
  std::sort(rep.profile.begin(), rep.profile.end(), [](auto& a, auto& b) { return a.rho < b.rho; });
  return {bounds[0], bounds[1]};
}

/// Max over T of |w - lift_w(h)| after matching values at z = 1, minimized over the lift sign.
inline double w_crosscheck(const AnnularHarmonic& h, const AnnularHarmonic& w, int M) {
  double best = std::numeric_limits<double>::infinity();
  const double w1 = std::real(w(1.0));
  for (int s : {1, -1}) {
    AnnularHarmonic lifted;
    try {
      lifted = lift_w(h, 1.0, s, 1e-8);
    } catch (const Error&) {
      try {
        lifted = lift_w(h, std::exp(0.005), s, 1e-8);
      } catch (const Error&) {
        return std::numeric_limits<double>::quiet_NaN();
      }
    }
    const double l1 = std::real(lifted(1.0));
    double err = 0.0;
    for (int j = 0; j < M; ++j) {
      const cplx z = std::polar(1.0, detail::theta_at(j, M));
      err = std::max(err, std::abs((std::real(w(z)) - w1) - (std::real(lifted(z)) - l1)));
    }
    best = std::min(best, err);
  }
  return best;
}

/// Period of the height of h around T; retries slightly off the circle when
/// phi vanishes on it.
inline double boundary_period(const AnnularHarmonic& h) {
  for (double rho : {1.0, std::exp(0.005), std::exp(-0.005)}) {
    try {
      return period_defect(h, rho);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::move_contour) throw;
    }
  }
  throw Error(ErrorKind::move_contour, "zero of h_z conj(h_zbar) near the unit circle");
}

/// Max relative residual over the circles exp(k step) inside the annulus;
/// reproduces SolveReport::residual_max for a solver output.
inline double surface_residual(const MinimalSurface& F, double step) {
  const int Mc = std::max(256, 4 * std::max(F.h.degree(), F.w.degree()) + 4);
  const int kmin = static_cast<int>(std::lround(std::log(F.annulus.r) / step));
  const int kmax = static_cast<int>(std::lround(std::log(F.annulus.R) / step));
  double res = 0.0;
  for (int k = kmin; k <= kmax; ++k) res = std::max(res, check_circle(F, std::exp(k * step), Mc).residual);
  return res;
}

inline SolveResult finish_solve(const AnnularHarmonic& h, const AnnularHarmonic& w, const SolveOptions& opts, int M) {
  SolveResult out;
  out.surface.h = h;
  out.surface.w = w;
  out.surface.tolerance = opts.tol;
  out.surface.annulus = Annulus(0.5, 2.0);
  const int Mc = std::max(256, 4 * std::max(h.degree(), w.degree()) + 4);
  auto [r, R] = validity_annulus(out.surface, opts, Mc, out.report);
  if (!(r < R)) throw Error(ErrorKind::inconsistent_data, "empty validity annulus", out.report.residual_max);
  out.surface.annulus = Annulus(r, R);
  out.surface.residual = out.report.residual_max;
  out.report.r = r;
  out.report.R = R;
  out.report.step = opts.step;
  out.report.decay_rate = decay_rate(h);
  out.report.w_crosscheck = w_crosscheck(h, w, std::min(M, 512));
  return out;
}

inline SolveResult solve(const BjorlingData& data, const SolveOptions& opts = {}) {
  if (opts.truncation < 1) throw Error(ErrorKind::invalid_input, "truncation must be positive");
  if (!(opts.tol > 0.0)) throw Error(ErrorKind::invalid_input, "tol must be positive");
  if (opts.sign != 1 && opts.sign != -1) throw Error(ErrorKind::invalid_input, "sign must be +1 or -1");
  const bool use_gauss = !data.gauss.empty();
  const int data_degree = std::max({data.h0.degree(), data.w0.degree(), use_gauss ? 0 : data.nu0.degree(),
                                    use_gauss ? static_cast<int>(data.gauss.size()) / 2 : 0});
  const int M = working_grid(opts.truncation, data_degree);

  if (!data.w0.is_real(1e-12)) throw Error(ErrorKind::invalid_input, "w0 must be real-valued");
  const auto htheta = data.h0.derivative().synthesize(M);
  const double hscale = std::max(1.0, sup_abs(htheta));
  for (int j = 0; j < M; ++j)
    if (std::abs(htheta[static_cast<std::size_t>(j)]) <= 1e-12 * hscale)
      throw Error(ErrorKind::invalid_input, "boundary curve has a vanishing tangent" + detail::angle_note(j, M));

  // Square root of nu and the normal field on the working grid.
  std::vector<cplx> root;
  if (use_gauss) {
    root = detail::resample(sqrt_nu_from_gauss(data.gauss), M);
  } else {
    const auto nu = data.nu0.synthesize(M);
    require_elliptic(nu);
    root = detail::continuous_sqrt(nu);
    for (auto& s : root) s *= static_cast<double>(opts.sign);
  }
  std::vector<cplx> nu(root.size());
  std::vector<GaussVector> N(root.size());
  for (std::size_t j = 0; j < root.size(); ++j) {
    nu[j] = root[j] * root[j];
    N[j] = gauss_from_sqrt_nu(root[j]);
  }
  require_elliptic(nu);

  const auto hrho_s = neumann_samples(htheta, nu);
  const FourierSeries hrho = analyze(std::span<const cplx>(hrho_s)).chopped(1e-15);
  const AnnularHarmonic h = extend_harmonic(data.h0, hrho);

  const double period = boundary_period(h);
  if (std::abs(period) > std::max(opts.tol, 1e-8) * derivative_scale(h))
    throw Error(ErrorKind::non_liftable, "height function is not single-valued (period defect)", period);

  // Normal must be orthogonal to the boundary tangent (h_theta, w_theta).
  const auto wtheta = data.w0.derivative().synthesize(M);
  double ortho = 0.0, oscale = 1.0;
  int worst = 0;
  for (int j = 0; j < M; ++j) {
    const auto& g = N[static_cast<std::size_t>(j)];
    const double v = std::abs(std::real(std::conj(g.xi) * htheta[static_cast<std::size_t>(j)]) +
                              g.tau * wtheta[static_cast<std::size_t>(j)].real());
    oscale = std::max({oscale, std::abs(htheta[static_cast<std::size_t>(j)]), std::abs(wtheta[static_cast<std::size_t>(j)])});
    if (v > ortho) {
      ortho = v;
      worst = j;
    }
  }
  if (ortho > std::max(opts.tol, 1e-9) * oscale)
    throw Error(ErrorKind::inconsistent_data,
                "normal field is not orthogonal to the boundary curve" + detail::angle_note(worst, M), ortho);

  const auto wr = w_neumann_samples(hrho_s, N);
  const FourierSeries wrho = detail::real_part(analyze(std::span<const double>(wr)).chopped(1e-15));
  AnnularHarmonic w = extend_harmonic(detail::real_part(data.w0), wrho);
  w = AnnularHarmonic(w.log_coeff().real(), w.constant().real(), w.modes());
  return finish_solve(h, w, opts, M);
}

struct SlopeNeumann {
  FourierSeries h_rho;
  FourierSeries w_rho;
};

/// Neumann data from a prescribed slope K(theta):
///   w_rho = sw S / K,  S = sqrt((K^2 - 1)|h_theta|^2 - w_theta^2),
///   h_rho = (a + ib) h_theta,  a = -w_rho w_theta / |h_theta|^2,
///   b = -orientation (1 + w_theta^2 / |h_theta|^2) / K.
/// S is continued through its zeros by smoothness, so a sign change of the
/// root at a double zero of the radicand is followed.
inline SlopeNeumann slope_neumann(const SlopeData& data, int sw = 1, int orientation = 1) {
  const int M = static_cast<int>(data.K.size());
  if (M < 4) throw Error(ErrorKind::invalid_input, "slope data needs at least 4 samples");
  const auto ht = data.h0.derivative().synthesize(M);
  const auto wt = data.w0.derivative().synthesize(M);
  std::vector<double> S(static_cast<std::size_t>(M));
  double worst = std::numeric_limits<double>::infinity(), smax = 0.0;
  int worst_j = 0;
  for (int j = 0; j < M; ++j) {
    const double K = data.K[static_cast<std::size_t>(j)];
    if (!(K >= 1.0)) throw Error(ErrorKind::range, "slope K must be >= 1" + detail::angle_note(j, M), K);
    const double rad = (K * K - 1.0) * std::norm(ht[static_cast<std::size_t>(j)]) -
                       std::pow(wt[static_cast<std::size_t>(j)].real(), 2);
    const double scale = 1.0 + K * K * std::norm(ht[static_cast<std::size_t>(j)]);
    if (rad / scale < worst) {
      worst = rad / scale;
      worst_j = j;
    }
    S[static_cast<std::size_t>(j)] = std::sqrt(std::max(rad, 0.0));
    smax = std::max(smax, S[static_cast<std::size_t>(j)]);
  }
  if (worst < -1e-12)
    throw Error(ErrorKind::compatibility, "compatibility violated" + detail::angle_note(worst_j, M), worst);

  // Signed continuation of S starting from its maximum.
  const int j0 = static_cast<int>(std::max_element(S.begin(), S.end()) - S.begin());
  std::vector<double> signedS(S.size());
  signedS[static_cast<std::size_t>(j0)] = S[static_cast<std::size_t>(j0)];
  double prev2 = S[static_cast<std::size_t>(j0)], prev1 = prev2;
  for (int step = 1; step < M; ++step) {
    const int j = (j0 + step) % M;
    const double s = S[static_cast<std::size_t>(j)];
    const double predicted = 2.0 * prev1 - prev2;
    const double sign_now = prev1 >= 0.0 ? 1.0 : -1.0;
    double pick = sign_now * s;
    if (s < 0.05 * smax && std::abs(-pick - predicted) < std::abs(pick - predicted)) {
      pick = -pick;
    }
    signedS[static_cast<std::size_t>(j)] = pick;
    prev2 = prev1;
    prev1 = pick;
  }
  if (smax > 0.0 && signedS[static_cast<std::size_t>((j0 + M - 1) % M)] < 0.0)
    throw Error(ErrorKind::branch_obstruction, "slope root does not close up around the circle");

  std::vector<cplx> hr(S.size());
  std::vector<double> wr(S.size());
  for (int j = 0; j < M; ++j) {
    const auto u = static_cast<std::size_t>(j);
    const double K = data.K[u];
    const double h2 = std::norm(ht[u]);
    const double wth = wt[u].real();
    wr[u] = sw * signedS[u] / K;
    const double a = -wr[u] * wth / h2;
    const double b = -orientation * (1.0 + wth * wth / h2) / K;
    hr[u] = cplx(a, b) * ht[u];
  }
  return {analyze(std::span<const cplx>(hr)).chopped(1e-14),
          detail::real_part(analyze(std::span<const double>(wr)).chopped(1e-14))};
}

inline SolveResult solve_slope(const SlopeData& data, const SolveOptions& opts = {}, int orientation = 1) {
  const auto nd = slope_neumann(data, opts.sign, orientation);
  const AnnularHarmonic h = extend_harmonic(data.h0, nd.h_rho);
  AnnularHarmonic w = extend_harmonic(detail::real_part(data.w0), nd.w_rho);
  w = AnnularHarmonic(w.log_coeff().real(), w.constant().real(), w.modes());
  return finish_solve(h, w, opts, static_cast<int>(data.K.size()));
}

}  // namespace bjorling
