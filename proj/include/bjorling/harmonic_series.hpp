#pragma once

// Spectral representation of complex harmonic functions on annuli.
//
//   h(z) = c log|z| + d + sum_{n != 0} (a_n z^n + b_n zbar^{-n})
//
// On the circle T_rho the e^{in theta} coefficient of h is
//   A_n(rho) = a_n rho^n + b_n rho^{-n}  (n != 0),   A_0(rho) = c log rho + d,
// so every circle average used downstream is a finite Parseval sum.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <span>
#include <vector>

#include "bjorling/errors.hpp"
#include "bjorling/quadrature.hpp"

namespace bjorling {

using cplx = std::complex<double>;

inline constexpr int kDefaultTruncation = 32;

namespace detail {

/// e^{-2 pi i k / M} for k in [0, M); index arithmetic keeps the twiddles exact.
inline std::vector<cplx> roots_of_unity(int M, int sign) {
  std::vector<cplx> w(static_cast<std::size_t>(M));
  for (int k = 0; k < M; ++k)
    w[static_cast<std::size_t>(k)] = std::polar(1.0, sign * 2.0 * std::numbers::pi * k / M);
  return w;
}

inline std::size_t wrap(long long k, int M) {
  long long r = k % M;
  return static_cast<std::size_t>(r < 0 ? r + M : r);
}

}  // namespace detail

/// Finite trigonometric series sum_n c_n e^{in theta} on a circle.
class FourierSeries {
 public:
  FourierSeries() = default;
  explicit FourierSeries(std::map<int, cplx> coeffs) : coeffs_(std::move(coeffs)) {}

  static FourierSeries monomial(int n, cplx c) { return FourierSeries({{n, c}}); }
  static FourierSeries constant(cplx c) { return monomial(0, c); }

  const std::map<int, cplx>& coeffs() const { return coeffs_; }

  cplx coeff(int n) const {
    auto it = coeffs_.find(n);
    return it == coeffs_.end() ? cplx{} : it->second;
  }

  /// Truncation degree: max |n| over stored indices (0 for the empty series).
  int degree() const {
    int d = 0;
    for (const auto& [n, c] : coeffs_) d = std::max(d, std::abs(n));
    return d;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& [n, c] : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  cplx operator()(double theta) const {
    cplx s{};
    for (const auto& [n, c] : coeffs_) s += c * std::polar(1.0, n * theta);
    return s;
  }

  /// d/dtheta.
  FourierSeries derivative() const {
    std::map<int, cplx> out;
    for (const auto& [n, c] : coeffs_)
      if (n != 0) out[n] = cplx(0.0, n) * c;
    return FourierSeries(std::move(out));
  }

  /// Series of the pointwise complex conjugate: c_n -> conj(c_{-n}).
  FourierSeries conj() const {
    std::map<int, cplx> out;
    for (const auto& [n, c] : coeffs_) out[-n] = std::conj(c);
    return FourierSeries(std::move(out));
  }

  /// Real-valued iff c_{-n} = conj(c_n) for all n.
  bool is_real(double tol = 1e-12) const {
    const double scale = std::max(1.0, max_abs());
    for (const auto& [n, c] : coeffs_)
      if (std::abs(coeff(-n) - std::conj(c)) > tol * scale) return false;
    return true;
  }

  /// Values on the uniform grid theta_j = 2 pi j / M.
  std::vector<cplx> synthesize(int M) const {
    if (M < 1) throw Error(ErrorKind::precondition, "synthesize: M must be positive");
    const auto w = detail::roots_of_unity(M, +1);
    std::vector<cplx> out(static_cast<std::size_t>(M));
    for (int j = 0; j < M; ++j) {
      cplx s{};
      for (const auto& [n, c] : coeffs_) s += c * w[detail::wrap(static_cast<long long>(n) * j, M)];
      out[static_cast<std::size_t>(j)] = s;
    }
    return out;
  }

  /// Drops coefficients with |c_n| <= rel_tol * max|c|.
  FourierSeries chopped(double rel_tol = 1e-15) const {
    const double cut = rel_tol * max_abs();
    std::map<int, cplx> out;
    for (const auto& [n, c] : coeffs_)
      if (std::abs(c) > cut) out[n] = c;
    return FourierSeries(std::move(out));
  }

  FourierSeries truncated(int N) const {
    std::map<int, cplx> out;
    for (const auto& [n, c] : coeffs_)
      if (std::abs(n) <= N) out[n] = c;
    return FourierSeries(std::move(out));
  }

  FourierSeries& operator+=(const FourierSeries& o) {
    for (const auto& [n, c] : o.coeffs_) coeffs_[n] += c;
    return *this;
  }
  FourierSeries& operator*=(cplx s) {
    for (auto& [n, c] : coeffs_) c *= s;
    return *this;
  }
  friend FourierSeries operator+(FourierSeries a, const FourierSeries& b) { return a += b; }
  friend FourierSeries operator-(FourierSeries a, FourierSeries b) { return a += (b *= -1.0); }
  friend FourierSeries operator*(cplx s, FourierSeries a) { return a *= s; }

 private:
  std::map<int, cplx> coeffs_;
};

/// Trigonometric interpolant of uniform samples theta_j = 2 pi j / M.
/// Keeps |n| <= max_degree (default: the largest alias-free degree (M-1)/2).
inline FourierSeries analyze(std::span<const cplx> samples, int max_degree = -1) {
  const int M = static_cast<int>(samples.size());
  if (M < 2) throw Error(ErrorKind::invalid_input, "analyze: need at least 2 samples");
  const int top = (M - 1) / 2;
  const int N = max_degree < 0 ? top : std::min(max_degree, top);
  const auto w = detail::roots_of_unity(M, -1);
  std::map<int, cplx> out;
  for (int n = -N; n <= N; ++n) {
    cplx s{};
    for (int j = 0; j < M; ++j)
      s += samples[static_cast<std::size_t>(j)] * w[detail::wrap(static_cast<long long>(n) * j, M)];
    out[n] = s / static_cast<double>(M);
  }
  return FourierSeries(std::move(out));
}

inline FourierSeries analyze(std::span<const double> samples, int max_degree = -1) {
  std::vector<cplx> z(samples.begin(), samples.end());
  return analyze(std::span<const cplx>(z), max_degree);
}

struct Annulus {
  double r = 1.0;
  double R = 2.0;

  Annulus() = default;
  Annulus(double inner, double outer) : r(inner), R(outer) {
    if (!(r > 0.0 && r < R && std::isfinite(R)))
      throw Error(ErrorKind::invalid_input, "annulus requires 0 < r < R < inf");
  }
  double modulus() const { return std::log(R / r); }
  bool contains(double rho) const { return rho >= r && rho <= R; }
};

struct Modes {
  cplx a;  // coefficient of z^n
  cplx b;  // coefficient of zbar^{-n}
};

struct Derivatives {
  cplx hz;
  cplx hzbar;
  cplx hrho;
  cplx htheta;
};

class AnnularHarmonic {
 public:
  AnnularHarmonic() = default;
  AnnularHarmonic(cplx log_coeff, cplx constant, std::map<int, Modes> modes = {})
      : c_(log_coeff), d_(constant), modes_(std::move(modes)) {
    if (modes_.count(0))
      throw Error(ErrorKind::invalid_input, "AnnularHarmonic: index 0 belongs to c and d");
  }

  /// h = a z^n + b zbar^{-n}.
  static AnnularHarmonic mode(int n, cplx a, cplx b) { return AnnularHarmonic(0.0, 0.0, {{n, {a, b}}}); }
  static AnnularHarmonic z() { return mode(1, 1.0, 0.0); }
  static AnnularHarmonic zbar() { return mode(-1, 0.0, 1.0); }

  cplx log_coeff() const { return c_; }
  cplx constant() const { return d_; }
  const std::map<int, Modes>& modes() const { return modes_; }

  Modes mode_at(int n) const {
    auto it = modes_.find(n);
    return it == modes_.end() ? Modes{} : it->second;
  }

  int degree() const {
    int d = 0;
    for (const auto& [n, m] : modes_) d = std::max(d, std::abs(n));
    return d;
  }

  /// Largest coefficient magnitude; used to scale tolerances.
  double coeff_scale() const {
    double s = std::max(std::abs(c_), std::abs(d_));
    for (const auto& [n, m] : modes_) s = std::max({s, std::abs(m.a), std::abs(m.b)});
    return s;
  }

  /// Real-valued iff c, d real and b_{-n} = conj(a_n).
  bool is_real(double tol = 1e-12) const {
    const double scale = std::max(1.0, coeff_scale());
    if (std::abs(c_.imag()) > tol * scale || std::abs(d_.imag()) > tol * scale) return false;
    for (const auto& [n, m] : modes_)
      if (std::abs(mode_at(-n).b - std::conj(m.a)) > tol * scale) return false;
    return true;
  }

  /// e^{in theta} coefficient on T_rho.
  cplx circle_coeff(int n, double rho) const {
    if (n == 0) return c_ * std::log(rho) + d_;
    const Modes m = mode_at(n);
    return m.a * std::pow(rho, n) + m.b * std::pow(rho, -n);
  }

  /// d/drho of circle_coeff.
  cplx circle_coeff_rho(int n, double rho) const {
    if (n == 0) return c_ / rho;
    const Modes m = mode_at(n);
    return static_cast<double>(n) * (m.a * std::pow(rho, n - 1) - m.b * std::pow(rho, -n - 1));
  }

  cplx operator()(cplx z) const {
    const double rho = std::abs(z);
    if (!(rho > 0.0)) throw Error(ErrorKind::domain, "AnnularHarmonic: evaluation at z = 0");
    const double theta = std::arg(z);
    cplx s = c_ * std::log(rho) + d_;
    for (const auto& [n, m] : modes_)
      s += (m.a * std::pow(rho, n) + m.b * std::pow(rho, -n)) * std::polar(1.0, n * theta);
    return s;
  }

  Derivatives derivatives(cplx z) const {
    const double rho = std::abs(z);
    if (!(rho > 0.0)) throw Error(ErrorKind::domain, "AnnularHarmonic: derivative at z = 0");
    const double theta = std::arg(z);
    cplx hz = c_ / (2.0 * z);
    cplx hzbar = c_ / (2.0 * std::conj(z));
    for (const auto& [n, m] : modes_) {
      const double dn = n;
      hz += dn * m.a * std::pow(rho, n - 1) * std::polar(1.0, (n - 1) * theta);
      hzbar -= dn * m.b * std::pow(rho, -n - 1) * std::polar(1.0, (n + 1) * theta);
    }
    const cplx zh = z * hz;
    const cplx zbh = std::conj(z) * hzbar;
    return {hz, hzbar, (zh + zbh) / rho, cplx(0.0, 1.0) * (zh - zbh)};
  }

  /// Circle trace on T_rho.
  FourierSeries restrict(double rho) const {
    if (!(rho > 0.0)) throw Error(ErrorKind::domain, "restrict: rho must be positive");
    std::map<int, cplx> out{{0, circle_coeff(0, rho)}};
    for (const auto& [n, m] : modes_) out[n] = circle_coeff(n, rho);
    return FourierSeries(std::move(out));
  }

  /// Trace of the radial derivative h_rho on T_rho.
  FourierSeries radial_trace(double rho) const {
    if (!(rho > 0.0)) throw Error(ErrorKind::domain, "radial_trace: rho must be positive");
    std::map<int, cplx> out{{0, circle_coeff_rho(0, rho)}};
    for (const auto& [n, m] : modes_) out[n] = circle_coeff_rho(n, rho);
    return FourierSeries(std::move(out));
  }

  AnnularHarmonic& operator+=(const AnnularHarmonic& o) {
    c_ += o.c_;
    d_ += o.d_;
    for (const auto& [n, m] : o.modes_) {
      auto& t = modes_[n];
      t.a += m.a;
      t.b += m.b;
    }
    return *this;
  }
  AnnularHarmonic& operator*=(cplx s) {
    c_ *= s;
    d_ *= s;
    for (auto& [n, m] : modes_) {
      m.a *= s;
      m.b *= s;
    }
    return *this;
  }
  friend AnnularHarmonic operator+(AnnularHarmonic a, const AnnularHarmonic& b) { return a += b; }
  friend AnnularHarmonic operator-(AnnularHarmonic a, AnnularHarmonic b) { return a += (b *= -1.0); }
  friend AnnularHarmonic operator*(cplx s, AnnularHarmonic a) { return a *= s; }

 private:
  cplx c_{};
  cplx d_{};
  std::map<int, Modes> modes_;
};

inline cplx eval(const AnnularHarmonic& h, cplx z) { return h(z); }
inline Derivatives derivatives(const AnnularHarmonic& h, cplx z) { return h.derivatives(z); }
inline FourierSeries restrict(const AnnularHarmonic& h, double rho) { return h.restrict(rho); }

/// U(rho): average of |h|^2 over T_rho.
inline double mean_sq(const AnnularHarmonic& h, double rho) {
  if (!(rho > 0.0)) throw Error(ErrorKind::domain, "mean_sq: rho must be positive");
  double u = std::norm(h.circle_coeff(0, rho));
  for (const auto& [n, m] : h.modes()) u += std::norm(h.circle_coeff(n, rho));
  return u;
}

struct MeanBilinears {
  double Udot;  // dU/drho
  double W;     // mean of Im(conj(h) h_theta)
  double S;     // mean of |h_z|^2 + |h_zbar|^2
};

inline MeanBilinears mean_bilinears(const AnnularHarmonic& h, double rho) {
  if (!(rho > 0.0)) throw Error(ErrorKind::domain, "mean_bilinears: rho must be positive");
  MeanBilinears out{};
  out.Udot = 2.0 * std::real(std::conj(h.circle_coeff(0, rho)) * h.circle_coeff_rho(0, rho));
  const double c2 = std::norm(h.log_coeff()) / (4.0 * rho * rho);
  out.S = 2.0 * c2;
  for (const auto& [n, m] : h.modes()) {
    const cplx A = h.circle_coeff(n, rho);
    out.Udot += 2.0 * std::real(std::conj(A) * h.circle_coeff_rho(n, rho));
    out.W += n * std::norm(A);
    const double dn2 = static_cast<double>(n) * n;
    out.S += dn2 * (std::norm(m.a) * std::pow(rho, 2 * n - 2) + std::norm(m.b) * std::pow(rho, -2 * n - 2));
  }
  return out;
}

/// Bounded harmonic extension to the unit disk of a circle trace:
/// positive frequencies become z^n, negative ones zbar^{|n|}.
inline AnnularHarmonic disk_extension(const FourierSeries& p) {
  std::map<int, Modes> modes;
  for (const auto& [n, c] : p.coeffs()) {
    if (n > 0) modes[n].a = c;
    if (n < 0) modes[n].b = c;
  }
  return AnnularHarmonic(0.0, p.coeff(0), std::move(modes));
}

/// Samples of h on T_rho at theta_j = 2 pi j / M.
inline std::vector<cplx> sample_circle(const AnnularHarmonic& h, double rho, int M) {
  std::vector<cplx> out(static_cast<std::size_t>(M));
  for (int j = 0; j < M; ++j) out[static_cast<std::size_t>(j)] = h(std::polar(rho, 2.0 * std::numbers::pi * j / M));
  return out;
}

}  // namespace bjorling
