#pragma once

// Numerical checks of the inequalities behind the annulus modulus bounds:
// boundary speed estimates, the two integral-mean inequalities, the Fourier
// quadratic forms they reduce to, and the Jacobian-energy inequality.

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <tuple>
#include <string>
#include <vector>

#include "bjorling/errors.hpp"
#include "bjorling/harmonic_series.hpp"
#include "bjorling/quadrature.hpp"
#include "bjorling/surface.hpp"

namespace bjorling::verify {

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// ---------------------------------------------------------------------------
// Generators

/// Random harmonic of the given degree: standard normal coefficients times
/// scale; degree 0 gives a constant.
inline AnnularHarmonic random_harmonic(std::uint64_t seed, int degree, double scale = 1.0) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  auto draw = [&] { return scale * cplx(g(gen), g(gen)); };
  const cplx d = draw();
  if (degree <= 0) return AnnularHarmonic(0.0, d);
  const cplx c = draw();
  std::map<int, Modes> modes;
  for (int n = -degree; n <= degree; ++n) {
    if (n == 0) continue;
    const cplx a = draw();
    const cplx b = draw();
    modes[n] = {a, b};
  }
  return AnnularHarmonic(c, d, std::move(modes));
}

/// Trace e^{i phi(theta)} of the circle map phi = theta + sum_{k<=modes} eps_k sin(k theta + phi_k)
/// with sum k|eps_k| <= 1 - margin, so that phi' >= margin.
inline FourierSeries random_circle_homeo(std::uint64_t seed, int modes = 5, double margin = 0.1, int M = 1024) {
  if (!(margin > 0.0 && margin <= 1.0)) throw Error(ErrorKind::precondition, "random_circle_homeo: margin must be in (0, 1]");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0), phase(0.0, 2.0 * std::numbers::pi), amp(0.2, 1.0);
  std::vector<double> eps(static_cast<std::size_t>(modes)), ph(static_cast<std::size_t>(modes));
  double total = 0.0;
  for (int k = 1; k <= modes; ++k) {
    eps[static_cast<std::size_t>(k - 1)] = u(gen) / (k * k);
    ph[static_cast<std::size_t>(k - 1)] = phase(gen);
    total += k * std::abs(eps[static_cast<std::size_t>(k - 1)]);
  }
  const double s = total > 0.0 ? amp(gen) * (1.0 - margin) / total : 0.0;
  std::vector<cplx> samples(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) {
    const double t = 2.0 * std::numbers::pi * j / M;
    double phi = t;
    for (int k = 1; k <= modes; ++k)
      phi += s * eps[static_cast<std::size_t>(k - 1)] * std::sin(k * t + ph[static_cast<std::size_t>(k - 1)]);
    samples[static_cast<std::size_t>(j)] = std::polar(1.0, phi);
  }
  return analyze(std::span<const cplx>(samples)).chopped(1e-15);
}

// ---------------------------------------------------------------------------
// Reports

struct VerifyReport {
  std::string suite;
  std::uint64_t seed = kDefaultSeed;
  int samples = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  double arg_lambda = kNaN;
  double arg_rho = kNaN;
  double arg_n = kNaN;
  double tolerance = 0.0;
  bool strict = false;  // pass requires min_margin > 0 instead of >= -tolerance
  bool pass = false;

  /// Keeps the smaller margin; ties resolve to the lexicographically smaller parameters.
  void observe(double margin, double lambda, double rho, double n) {
    auto key = [](double a, double b, double c) { return std::make_tuple(a, b, c); };
    if (margin < min_margin ||
        (margin == min_margin && key(lambda, rho, n) < key(arg_lambda, arg_rho, arg_n))) {
      min_margin = margin;
      arg_lambda = lambda;
      arg_rho = rho;
      arg_n = n;
    }
  }
  void finish() { pass = strict ? min_margin > 0.0 : min_margin >= -tolerance; }
};

// ---------------------------------------------------------------------------
// Boundary inequalities on the unit circle

struct BoundaryChecks {
  double supK;
  double speed_margin;  // min (|h|_rho - |h_theta| / supK)
  double winding_mean;  // mean of Im(conj(h) h_theta)
};

inline BoundaryChecks boundary_checks(const AnnularHarmonic& h, int M = 0) {
  if (M <= 0) M = default_quadrature_size(h.degree());
  double supK = 0.0;
  std::vector<double> speed(static_cast<std::size_t>(M)), tangent(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) {
    const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * j / M);
    const Derivatives d = h.derivatives(z);
    const double p = std::abs(d.hz), q = std::abs(d.hzbar);
    if (!(p > q)) throw Error(ErrorKind::orientation, "nonpositive Jacobian on the unit circle", p * p - q * q);
    supK = std::max(supK, (p + q) / (p - q));
    const cplx hv = h(z);
    const double mod = std::abs(hv);
    if (mod == 0.0) throw Error(ErrorKind::precondition, "h vanishes on the unit circle");
    speed[static_cast<std::size_t>(j)] = std::real(std::conj(hv) * d.hrho) / mod;
    tangent[static_cast<std::size_t>(j)] = std::abs(d.htheta);
  }
  double margin = std::numeric_limits<double>::infinity();
  for (int j = 0; j < M; ++j)
    margin = std::min(margin, speed[static_cast<std::size_t>(j)] - tangent[static_cast<std::size_t>(j)] / supK);
  return {supK, margin, mean_bilinears(h, 1.0).W};
}

/// Mean over T of the radial speed |h|_rho.
inline double mean_radial_speed(const AnnularHarmonic& h, int M = 0) {
  if (M <= 0) M = default_quadrature_size(h.degree());
  return quadrature_mean(
             [&](cplx z) {
               const Derivatives d = h.derivatives(z);
               const cplx hv = h(z);
               return std::real(std::conj(hv) * d.hrho) / std::abs(hv);
             },
             1.0, M);
}

// ---------------------------------------------------------------------------
// Integral means of h and of its disk extension, in closed form and by quadrature

struct MeanForms {
  double U;           // mean |h|^2 on T_rho
  double half_Udot;   // mean |h| |h|_rho on T
  double W;           // mean Im(conj(h) h_theta) on T
  double Jh;          // mean J_h on T
  double Jf;          // mean J_f on T, f the disk extension of h|_T
  double energy;      // (1/2pi) integral of |Df|^2 over the disk
};

inline MeanForms mean_forms(const AnnularHarmonic& h, double rho) {
  MeanForms m{};
  m.U = mean_sq(h, rho);
  const auto b1 = mean_bilinears(h, 1.0);
  m.half_Udot = 0.5 * b1.Udot;
  m.W = b1.W;
  for (const auto& [n, md] : h.modes()) {
    const double dn = n;
    m.Jh += dn * dn * (std::norm(md.a) - std::norm(md.b));
    const double p2 = std::norm(md.a + md.b);
    m.Jf += dn * std::abs(dn) * p2;
    m.energy += std::abs(dn) * p2;
  }
  return m;
}

inline MeanForms mean_forms_quadrature(const AnnularHarmonic& h, double rho, int M = 0) {
  const int N = h.degree();
  if (M <= 0) M = default_quadrature_size(N);
  MeanForms m{};
  m.U = quadrature_mean([&](cplx z) { return std::norm(h(z)); }, rho, M);
  m.half_Udot = quadrature_mean([&](cplx z) { return std::real(std::conj(h(z)) * h.derivatives(z).hrho); }, 1.0, M);
  m.W = quadrature_mean([&](cplx z) { return std::imag(std::conj(h(z)) * h.derivatives(z).htheta); }, 1.0, M);
  m.Jh = quadrature_mean(
      [&](cplx z) {
        const Derivatives d = h.derivatives(z);
        return std::norm(d.hz) - std::norm(d.hzbar);
      },
      1.0, M);
  const AnnularHarmonic f = disk_extension(h.restrict(1.0));
  m.Jf = quadrature_mean(
      [&](cplx z) {
        const Derivatives d = f.derivatives(z);
        return std::norm(d.hz) - std::norm(d.hzbar);
      },
      1.0, M);
  // |Df|^2 = 2(|f_z|^2 + |f_zbar|^2); polar Gauss-Legendre on (0, 1].
  auto ring = [&](double r) {
    return r * quadrature_mean(
                   [&](cplx z) {
                     const Derivatives d = f.derivatives(z);
                     return 2.0 * (std::norm(d.hz) + std::norm(d.hzbar));
                   },
                   r, M);
  };
  m.energy = radial_integral<64>(ring, 0.0, 1.0, 2);
  return m;
}

// ---------------------------------------------------------------------------
// Integral inequality on A(1, R), R <= 1 + sqrt(3 + 3 lambda)

struct Prop51 {
  double lhs;
  double rhs;
  double gap;
};

inline double prop51_max_R(double lambda) { return 1.0 + std::sqrt(3.0 + 3.0 * lambda); }

inline double prop51_lhs(const AnnularHarmonic& h, double lambda, double R) {
  const double UR = mean_sq(h, R), U1 = mean_sq(h, 1.0);
  const auto b1 = mean_bilinears(h, 1.0);
  const double l1 = 1.0 + lambda;
  return 2.0 * R * R / (R * R + lambda) * UR - 2.0 * (lambda * R * R + 1.0) / (l1 * l1) * U1 -
         2.0 * (R * R - 1.0) / l1 * (0.5 * b1.Udot) -
         2.0 * (R - 1.0) * (R - 1.0) * (2.0 * R + 3.0 * lambda + 1.0) / (3.0 * l1 * l1) * (b1.W - U1);
}

/// (1/pi) times the weighted integral over A(1, R) of
/// |(rho h_rho - i h_theta)/(rho^2 + lambda) - 2 rho^2 h/(rho^2 + lambda)^2|^2.
inline double prop51_rhs(const AnnularHarmonic& h, double lambda, double R, int M = 0) {
  if (M <= 0) M = std::max(64, 4 * h.degree() + 4);
  auto ring = [&](double rho) {
    const double q = rho * rho + lambda;
    const double weight = (R - rho) * (R - rho) * (2.0 * R * rho + rho * rho + 3.0 * lambda) / (3.0 * rho * rho);
    const double mean = quadrature_mean(
        [&](cplx z) {
          const Derivatives d = h.derivatives(z);
          const cplx v = (rho * d.hrho - cplx(0.0, 1.0) * d.htheta) / q - 2.0 * rho * rho * h(z) / (q * q);
          return std::norm(v);
        },
        rho, M);
    return weight * mean * rho;
  };
  // (1/pi) * 2 pi * radial integral of the circle mean
  return 2.0 * radial_integral<96>(ring, 1.0, R, 4);
}

inline Prop51 prop51(const AnnularHarmonic& h, double lambda, double R, int M = 0) {
  if (!(lambda > -1.0)) throw Error(ErrorKind::precondition, "prop51: lambda must exceed -1", lambda);
  if (!(R > 1.0 && R <= prop51_max_R(lambda) * (1.0 + 1e-14)))
    throw Error(ErrorKind::precondition, "prop51: need 1 < R <= 1 + sqrt(3 + 3 lambda)", R);
  const double lhs = prop51_lhs(h, lambda, R);
  const double rhs = prop51_rhs(h, lambda, R, M);
  return {lhs, rhs, lhs - rhs};
}

// ---------------------------------------------------------------------------
// Five-term inequality for rho >= sqrt 7 and its quadratic-form reduction

struct Prop52 {
  double value;
  double terms[5];
};

inline double gamma_factor(double rho, double lambda) {
  return rho * rho - (3.0 + lambda) - lambda / (rho * rho);
}

inline void prop52_check_range(double lambda, double rho) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw Error(ErrorKind::precondition, "lambda must lie in (0, 1]", lambda);
  if (!(rho * rho >= 7.0 * (1.0 - 1e-14))) throw Error(ErrorKind::precondition, "rho must be >= sqrt 7", rho);
}

inline Prop52 prop52_from_means(const MeanForms& m, double hz_mix, double lambda, double rho) {
  const double l1 = 1.0 + lambda;
  const double G = gamma_factor(rho, lambda);
  const double s = (rho * rho + lambda) / (l1 * rho);
  Prop52 out{};
  out.terms[0] = m.U;
  out.terms[1] = -s * s * m.W;
  out.terms[2] = -2.0 * (m.half_Udot - (1.0 - lambda) / l1 * m.W);
  out.terms[3] = -G / (lambda * l1) * hz_mix;
  out.terms[4] = -G / l1 * (m.Jf - m.energy);
  out.value = out.terms[0] + out.terms[1] + out.terms[2] + out.terms[3] + out.terms[4];
  return out;
}

/// Closed-form evaluation from the coefficients.
inline Prop52 prop52_terms(const AnnularHarmonic& h, double lambda, double rho) {
  prop52_check_range(lambda, rho);
  const MeanForms m = mean_forms(h, rho);
  double mix = (lambda * lambda - 1.0) * std::norm(h.log_coeff()) / 4.0;
  for (const auto& [n, md] : h.modes()) {
    const double n2 = static_cast<double>(n) * n;
    mix += n2 * (lambda * lambda * std::norm(md.a) - std::norm(md.b));
  }
  return prop52_from_means(m, mix, lambda, rho);
}

/// Same five terms with every mean evaluated by quadrature.
inline Prop52 prop52_terms_quadrature(const AnnularHarmonic& h, double lambda, double rho, int M = 0) {
  prop52_check_range(lambda, rho);
  if (M <= 0) M = default_quadrature_size(h.degree());
  const MeanForms m = mean_forms_quadrature(h, rho, M);
  const double mix = quadrature_mean(
      [&](cplx z) {
        const Derivatives d = h.derivatives(z);
        return lambda * lambda * std::norm(d.hz) - std::norm(d.hzbar);
      },
      1.0, M);
  return prop52_from_means(m, mix, lambda, rho);
}

inline double prop52_scale(const Prop52& p) {
  double s = 0.0;
  for (double t : p.terms) s = std::max(s, std::abs(t));
  return 1.0 + s;
}

struct QFormCoeffs {
  int n = 0;
  double rho = 0.0;
  double lambda = 0.0;
  double A = 0.0;
  double B = 0.0;
  double C = 0.0;
  double discriminant = 0.0;  // AB - C^2
};

inline double qform_P(double rho, double lambda) {
  const double l1 = 1.0 + lambda;
  const double u = rho + lambda / rho;
  return u * u / (l1 * l1) - 2.0 * (1.0 - lambda) / l1;
}

/// Coefficients of Q_n(xi, zeta) = A|xi|^2 + B|zeta|^2 + 2C Re(xi conj(zeta)).
inline QFormCoeffs qform_coeffs(int n, double rho, double lambda) {
  QFormCoeffs q{n, rho, lambda};
  if (n == 0) {
    const double L = std::log(rho);
    q.A = L * L;
    q.B = 1.0;
    q.C = L - 1.0;
  } else {
    const double dn = n, an = std::abs(dn);
    const double P = qform_P(rho, lambda);
    const double G = gamma_factor(rho, lambda);
    const double l1 = 1.0 + lambda;
    q.A = std::pow(rho, 2 * n) - P * dn - 2.0 * dn - G / (lambda * l1) * (dn * dn * lambda * lambda + lambda * an * (dn - 1.0));
    q.B = std::pow(rho, -2 * n) - P * dn + 2.0 * dn - G / (lambda * l1) * (-dn * dn + lambda * an * (dn - 1.0));
    q.C = 1.0 - P * dn - G / l1 * an * (dn - 1.0);
  }
  q.discriminant = q.A * q.B - q.C * q.C;
  return q;
}

/// Coefficients for n = -m written in terms of m > 0.
inline QFormCoeffs qform_coeffs_negative(int m, double rho, double lambda) {
  const double dm = m;
  const double P = qform_P(rho, lambda);
  const double G = gamma_factor(rho, lambda);
  const double l1 = 1.0 + lambda;
  QFormCoeffs q{-m, rho, lambda};
  q.A = std::pow(rho, -2 * m) + dm * P + 2.0 * dm - G / (lambda * l1) * (dm * dm * lambda * lambda - lambda * dm * (dm + 1.0));
  q.B = std::pow(rho, 2 * m) + dm * P - 2.0 * dm + G / (lambda * l1) * (dm * dm + lambda * dm * (dm + 1.0));
  q.C = 1.0 + dm * P + G / l1 * dm * (dm + 1.0);
  q.discriminant = q.A * q.B - q.C * q.C;
  return q;
}

inline double qform_value(const QFormCoeffs& q, cplx xi, cplx zeta) {
  return q.A * std::norm(xi) + q.B * std::norm(zeta) + 2.0 * q.C * std::real(xi * std::conj(zeta));
}

/// Q_1 in factored form.
inline double q1_closed_form(double rho, double lambda, cplx xi, cplx zeta) {
  const double l1 = 1.0 + lambda;
  return (rho * rho - (3.0 - lambda * lambda) + lambda * lambda / (rho * rho)) / (lambda * l1 * l1) *
         std::norm(lambda * xi - zeta);
}

/// Smallest eigenvalue of the real Gram matrix [[A, C], [C, B]].
inline double min_eigenvalue(const QFormCoeffs& q) {
  const double mean = 0.5 * (q.A + q.B);
  const double dev = std::hypot(0.5 * (q.A - q.B), q.C);
  return mean - dev;
}

/// Sum over n of Q_n(a_n, b_n), with (a_0, b_0) = (c, d). A log term adds the
/// nonnegative contribution G (1 - lambda)|c|^2 / (4 lambda) coming from the
/// z^{-1} part of h_z and h_zbar, which the mode-by-mode forms do not see.
inline double qform_sum(const AnnularHarmonic& h, double lambda, double rho) {
  double s = qform_value(qform_coeffs(0, rho, lambda), h.log_coeff(), h.constant());
  for (const auto& [n, md] : h.modes()) s += qform_value(qform_coeffs(n, rho, lambda), md.a, md.b);
  s += gamma_factor(rho, lambda) * (1.0 - lambda) * std::norm(h.log_coeff()) / (4.0 * lambda);
  return s;
}

inline double qform_assembly_check(const AnnularHarmonic& h, double lambda, double rho) {
  return std::abs(prop52_terms(h, lambda, rho).value - qform_sum(h, lambda, rho));
}

struct SweepReport {
  VerifyReport report;
  double min_A = std::numeric_limits<double>::infinity();
  double min_B = std::numeric_limits<double>::infinity();
  double min_disc = std::numeric_limits<double>::infinity();
  double q1_max_rel_disc = 0.0;  // n = 1, semidefinite
};

inline std::vector<double> default_lambda_grid() {
  std::vector<double> g;
  for (int i = 1; i <= 20; ++i) g.push_back(0.05 * i);
  return g;
}

inline std::vector<double> default_rho_grid(int count = 50, double lo = std::sqrt(7.0), double hi = 20.0) {
  std::vector<double> g;
  for (int i = 0; i < count; ++i) g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
  g.front() = lo;
  g.back() = hi;
  return g;
}

/// A_n, B_n and A_n B_n - C_n^2 over n in {-nmax..-1} and {2..nmax}. The margin
/// recorded per point is disc / (A B) when A, B > 0, which lies in (0, 1] exactly
/// when Q_n is positive definite; otherwise min(A, B) / max(|A|, |B|) <= 0.
inline SweepReport positive_definite_sweep(const std::vector<double>& lambdas, const std::vector<double>& rhos,
                                           int nmax = 64) {
  SweepReport out;
  out.report.suite = "qforms";
  out.report.strict = true;
  for (double lam : lambdas)
    for (double rho : rhos) {
      for (int n = -nmax; n <= nmax; ++n) {
        if (n == 0) continue;
        const QFormCoeffs q = qform_coeffs(n, rho, lam);
        if (n == 1) {
          const double den = std::max(std::abs(q.A * q.B), q.C * q.C);
          out.q1_max_rel_disc = std::max(out.q1_max_rel_disc, std::abs(q.discriminant) / den);
          continue;
        }
        ++out.report.samples;
        out.min_A = std::min(out.min_A, q.A);
        out.min_B = std::min(out.min_B, q.B);
        out.min_disc = std::min(out.min_disc, q.discriminant);
        const double margin = (q.A > 0.0 && q.B > 0.0)
                                  ? q.discriminant / (q.A * q.B)
                                  : std::min(q.A, q.B) / std::max(std::abs(q.A), std::abs(q.B));
        out.report.observe(margin, lam, rho, n);
      }
    }
  out.report.finish();
  return out;
}

// ---------------------------------------------------------------------------
// Jacobian-energy inequality for harmonic self-homeomorphisms of the disk

struct JacobianEnergy {
  double boundary;  // integral over T of det Df
  double energy;    // integral over D of |Df|^2
  double gap;       // boundary - energy
};

/// Circle trace coefficients of a finite harmonic function on the closed disk.
inline FourierSeries disk_trace(const AnnularHarmonic& f) {
  if (std::abs(f.log_coeff()) != 0.0) throw Error(ErrorKind::precondition, "disk map has a log term");
  for (const auto& [n, m] : f.modes())
    if ((n < 0 && std::abs(m.a) != 0.0) || (n > 0 && std::abs(m.b) != 0.0))
      throw Error(ErrorKind::precondition, "disk map is singular at the origin");
  return f.restrict(1.0);
}

/// Checks that f maps T onto T with degree one and has J_f > 0 on a polar grid.
inline void check_disk_homeomorphism(const AnnularHarmonic& f, int M = 0) {
  const FourierSeries p = disk_trace(f);
  if (M <= 0) M = default_quadrature_size(p.degree());
  const auto vals = p.synthesize(M);
  double dev = 0.0;
  for (const auto& v : vals) dev = std::max(dev, std::abs(std::abs(v) - 1.0));
  if (dev > 1e-8) throw Error(ErrorKind::precondition, "boundary trace is not on the unit circle", dev);
  double turn = 0.0;
  for (int j = 0; j < M; ++j)
    turn += std::arg(vals[static_cast<std::size_t>((j + 1) % M)] / vals[static_cast<std::size_t>(j)]);
  const long winding = std::lround(turn / (2.0 * std::numbers::pi));
  if (winding != 1) throw Error(ErrorKind::precondition, "boundary trace does not have degree one", static_cast<double>(winding));
  const int nr = 32;
  for (int i = 1; i <= nr; ++i) {
    const double r = static_cast<double>(i) / nr * (1.0 - 1e-9);
    for (int j = 0; j < M; j += std::max(1, M / 128)) {
      const double J = jacobian(f, std::polar(r, 2.0 * std::numbers::pi * j / M));
      if (!(J > 0.0)) throw Error(ErrorKind::precondition, "Jacobian is not positive inside the disk", J);
    }
  }
}

inline JacobianEnergy jacobian_energy_gap(const AnnularHarmonic& f, bool check = true) {
  if (check) check_disk_homeomorphism(f);
  const FourierSeries p = disk_trace(f);
  double jf = 0.0, en = 0.0;
  for (const auto& [n, c] : p.coeffs()) {
    const double dn = n;
    jf += dn * std::abs(dn) * std::norm(c);
    en += std::abs(dn) * std::norm(c);
  }
  const double tp = 2.0 * std::numbers::pi;
  return {tp * jf, tp * en, tp * (jf - en)};
}

inline JacobianEnergy jacobian_energy_quadrature(const AnnularHarmonic& f, int M = 0) {
  if (M <= 0) M = default_quadrature_size(f.degree());
  const double tp = 2.0 * std::numbers::pi;
  const double jf = quadrature_mean([&](cplx z) { return jacobian(f, z); }, 1.0, M);
  auto ring = [&](double r) {
    return r * quadrature_mean(
                   [&](cplx z) {
                     const Derivatives d = f.derivatives(z);
                     return 2.0 * (std::norm(d.hz) + std::norm(d.hzbar));
                   },
                   r, M);
  };
  const double en = radial_integral<64>(ring, 0.0, 1.0, 2);
  return {tp * jf, tp * en, tp * (jf - en)};
}

// ---------------------------------------------------------------------------
// Randomized suites

/// Random h on A(1, R) with h(T) = T and h_rho = (a - i beta) h_theta on T,
/// beta > 0, so that h is orientation preserving near T.
inline AnnularHarmonic random_boundary_map(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.2, 1.5), phase(0.0, 2.0 * std::numbers::pi);
  const FourierSeries trace = random_circle_homeo(gen(), 3, 0.2, 512);
  const double b0 = pos(gen), b1 = 0.5 * b0 * std::abs(u(gen)), a1 = 0.5 * u(gen);
  const double p1 = phase(gen), p2 = phase(gen);
  const int k1 = 1 + static_cast<int>(gen() % 3), k2 = 1 + static_cast<int>(gen() % 3);
  const int M = 512;
  const auto ht = trace.derivative().synthesize(M);
  std::vector<cplx> hr(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) {
    const double t = 2.0 * std::numbers::pi * j / M;
    const double beta = b0 + b1 * std::cos(k1 * t + p1);
    const double a = a1 * std::sin(k2 * t + p2);
    hr[static_cast<std::size_t>(j)] = cplx(a, -beta) * ht[static_cast<std::size_t>(j)];
  }
  const FourierSeries hrho = analyze(std::span<const cplx>(hr)).chopped(1e-16);
  std::map<int, Modes> modes;
  for (int n = -255; n <= 255; ++n) {
    if (n == 0) continue;
    const cplx p = trace.coeff(n), q = hrho.coeff(n) / static_cast<double>(n);
    if (p == cplx{} && q == cplx{}) continue;
    modes[n] = {0.5 * (p + q), 0.5 * (p - q)};
  }
  return AnnularHarmonic(hrho.coeff(0), trace.coeff(0), std::move(modes));
}

inline VerifyReport boundary_suite(int samples, std::uint64_t seed = kDefaultSeed) {
  VerifyReport rep{"boundary", seed};
  rep.tolerance = 1e-10;
  std::mt19937_64 gen(seed);
  for (int s = 0; s < samples; ++s) {
    const AnnularHarmonic h = random_boundary_map(gen());
    const auto bc = boundary_checks(h);
    const double scale = std::max(1.0, bc.supK);
    double margin = bc.speed_margin / scale;
    if (std::abs(bc.winding_mean - 1.0) > 1e-10) margin = -1.0;
    rep.observe(margin, kNaN, 1.0, s);
    ++rep.samples;
  }
  rep.finish();
  return rep;
}

inline VerifyReport prop51_suite(int samples, std::uint64_t seed = kDefaultSeed, int max_degree = 8) {
  VerifyReport rep{"prop51", seed};
  rep.tolerance = 1e-8;
  std::mt19937_64 gen(seed);
  for (int s = 0; s < samples; ++s) {
    const int deg = 1 + static_cast<int>(gen() % static_cast<std::uint64_t>(max_degree));
    const AnnularHarmonic h = random_harmonic(gen(), deg);
    for (double lam : {-0.5, 0.0, 0.5, 1.0}) {
      const double R = prop51_max_R(lam);
      const auto r = prop51(h, lam, R);
      rep.observe(r.gap / (1.0 + std::abs(r.lhs)), lam, R, s);
      ++rep.samples;
    }
  }
  rep.finish();
  return rep;
}

/// Equality family h = c (z + lambda / zbar); margin is -(|lhs| + |rhs|).
inline VerifyReport prop51_equality_suite(std::uint64_t seed = kDefaultSeed) {
  VerifyReport rep{"prop51", seed};
  rep.tolerance = 1e-10;
  for (cplx c : {cplx(1.0, 0.0), cplx(0.0, 2.0)})
    for (double lam : {-0.5, 0.0, 0.5, 1.0}) {
      const AnnularHarmonic h = c * AnnularHarmonic::mode(1, 1.0, lam);
      const double R = prop51_max_R(lam);
      const auto r = prop51(h, lam, R);
      rep.observe(-(std::abs(r.lhs) + std::abs(r.rhs)) / std::abs(c), lam, R, 1);
      ++rep.samples;
    }
  rep.finish();
  return rep;
}

/// Margin per sample is value / scale; the assembly identity must also hold
/// to 1e-10 relative, otherwise the sample is recorded with margin -1.
inline VerifyReport prop52_suite(int samples, std::uint64_t seed = kDefaultSeed, int max_degree = 8) {
  VerifyReport rep{"prop52", seed};
  rep.tolerance = 1e-8;
  std::mt19937_64 gen(seed);
  for (int s = 0; s < samples; ++s) {
    const int deg = 1 + static_cast<int>(gen() % static_cast<std::uint64_t>(max_degree));
    const AnnularHarmonic h = random_harmonic(gen(), deg);
    for (double lam : {0.25, 0.5, 1.0})
      for (double rho : {std::sqrt(7.0), 3.0, 5.0}) {
        const auto p = prop52_terms(h, lam, rho);
        const double scale = prop52_scale(p);
        double margin = p.value / scale;
        if (qform_assembly_check(h, lam, rho) > 1e-10 * scale) margin = -1.0;
        rep.observe(margin, lam, rho, s);
        ++rep.samples;
      }
  }
  rep.finish();
  return rep;
}

inline VerifyReport prop52_equality_suite(std::uint64_t seed = kDefaultSeed) {
  VerifyReport rep{"prop52", seed};
  rep.tolerance = 1e-10;
  for (double lam : {0.25, 0.5, 1.0})
    for (double rho : {std::sqrt(7.0), 3.0, 5.0}) {
      const auto p = prop52_terms(AnnularHarmonic::mode(1, 1.0, lam), lam, rho);
      rep.observe(-std::abs(p.value), lam, rho, 1);
      ++rep.samples;
    }
  rep.finish();
  return rep;
}

inline VerifyReport qforms_suite(int nmax = 64) {
  return positive_definite_sweep(default_lambda_grid(), default_rho_grid(), nmax).report;
}

inline VerifyReport jacobian_energy_suite(int samples, std::uint64_t seed = kDefaultSeed) {
  VerifyReport rep{"jacobian-energy", seed};
  rep.tolerance = 1e-8;
  std::mt19937_64 gen(seed);
  for (int s = 0; s < samples; ++s) {
    const FourierSeries p = random_circle_homeo(gen(), 5, 0.1);
    const auto je = jacobian_energy_gap(disk_extension(p));
    rep.observe(je.gap, kNaN, kNaN, s);
    ++rep.samples;
  }
  rep.finish();
  return rep;
}

}  // namespace bjorling::verify
