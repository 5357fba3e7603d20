#pragma once

// JSON / CSV / OBJ serialization. Every top-level document carries "format": 1.

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>

#include "bjorling/bjorling.hpp"
#include "bjorling/errors.hpp"
#include "bjorling/harmonic_series.hpp"
#include "bjorling/surface.hpp"

namespace bjorling::io {

using nlohmann::json;

inline constexpr int kFormat = 1;

inline json pair_to_json(cplx v) { return json::array({v.real(), v.imag()}); }

inline cplx pair_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::invalid_input, "expected [re, im]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

inline json to_json(const FourierSeries& s) {
  json arr = json::array();
  for (const auto& [n, c] : s.coeffs()) arr.push_back({{"n", n}, {"re", c.real()}, {"im", c.imag()}});
  return arr;
}

inline FourierSeries fourier_from_json(const json& j) {
  if (!j.is_array()) throw Error(ErrorKind::invalid_input, "Fourier series must be an array of {n, re, im}");
  std::map<int, cplx> out;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("n")) throw Error(ErrorKind::invalid_input, "Fourier entry needs n, re, im");
    out[e.at("n").get<int>()] += cplx(e.value("re", 0.0), e.value("im", 0.0));
  }
  return FourierSeries(std::move(out));
}

inline json to_json(const AnnularHarmonic& h) {
  json pairs = json::array();
  for (const auto& [n, m] : h.modes()) pairs.push_back({{"n", n}, {"a", pair_to_json(m.a)}, {"b", pair_to_json(m.b)}});
  return {{"c", pair_to_json(h.log_coeff())}, {"d", pair_to_json(h.constant())}, {"pairs", pairs}};
}

inline AnnularHarmonic harmonic_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::invalid_input, "harmonic must be an object");
  std::map<int, Modes> modes;
  for (const auto& p : j.value("pairs", json::array())) {
    const int n = p.at("n").get<int>();
    if (n == 0) throw Error(ErrorKind::invalid_input, "pair index 0 is reserved for c and d");
    modes[n] = {pair_from_json(p.at("a")), pair_from_json(p.at("b"))};
  }
  return AnnularHarmonic(pair_from_json(j.value("c", json::array({0.0, 0.0}))),
                         pair_from_json(j.value("d", json::array({0.0, 0.0}))), std::move(modes));
}

inline json to_json(const MinimalSurface& F) {
  return {{"format", kFormat},
          {"h", to_json(F.h)},
          {"w", to_json(F.w)},
          {"angular", F.angular},
          {"annulus", json::array({F.annulus.r, F.annulus.R})},
          {"tolerance", F.tolerance},
          {"residual_max", F.residual}};
}

inline MinimalSurface surface_from_json(const json& j) {
  MinimalSurface F;
  F.h = harmonic_from_json(j.at("h"));
  F.w = harmonic_from_json(j.at("w"));
  F.angular = j.value("angular", 0.0);
  const auto& a = j.at("annulus");
  F.annulus = Annulus(a.at(0).get<double>(), a.at(1).get<double>());
  F.tolerance = j.value("tolerance", 1e-10);
  F.residual = j.value("residual_max", 0.0);
  return F;
}

inline json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json to_json(const SolveReport& r) {
  json prof = json::array();
  for (const auto& p : r.profile) prof.push_back(json::array({p.rho, p.residual}));
  return {{"format", kFormat},
          {"annulus", json::array({r.r, r.R})},
          {"residual_max", r.residual_max},
          {"w_crosscheck", number_or_null(r.w_crosscheck)},
          {"decay_rate", r.decay_rate},
          {"step", r.step},
          {"profile", prof}};
}

/// Bjorling data in coefficient form {"h0", "w0", "nu0"} or sampled form
/// {"samples", "h0", "w0", "gauss"}; exactly one of "nu0" / "gauss".
inline BjorlingData bjorling_data_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::invalid_input, "data file must hold a JSON object");
  const bool has_nu = j.contains("nu0"), has_gauss = j.contains("gauss");
  if (has_nu == has_gauss) throw Error(ErrorKind::invalid_input, "exactly one of \"nu0\" and \"gauss\" must be present");
  if (!j.contains("h0") || !j.contains("w0")) throw Error(ErrorKind::invalid_input, "data needs \"h0\" and \"w0\"");
  BjorlingData d;
  if (has_nu) {
    d.h0 = fourier_from_json(j.at("h0"));
    d.w0 = fourier_from_json(j.at("w0"));
    d.nu0 = fourier_from_json(j.at("nu0"));
    return d;
  }
  const int M = j.at("samples").get<int>();
  const auto& h0 = j.at("h0");
  const auto& w0 = j.at("w0");
  const auto& g = j.at("gauss");
  if (M < 4 || h0.size() != static_cast<std::size_t>(M) || w0.size() != static_cast<std::size_t>(M) ||
      g.size() != static_cast<std::size_t>(M))
    throw Error(ErrorKind::invalid_input, "sampled data: h0, w0, gauss must each hold \"samples\" entries");
  std::vector<cplx> hs, ws;
  for (const auto& e : h0) hs.push_back(pair_from_json(e));
  for (const auto& e : w0) ws.push_back(pair_from_json(e));
  for (const auto& e : g) {
    if (!e.is_array() || e.size() != 3) throw Error(ErrorKind::invalid_input, "gauss entries are [xi_re, xi_im, tau]");
    d.gauss.push_back({cplx(e.at(0).get<double>(), e.at(1).get<double>()), e.at(2).get<double>()});
  }
  d.h0 = analyze(std::span<const cplx>(hs)).chopped(1e-14);
  d.w0 = analyze(std::span<const cplx>(ws)).chopped(1e-14);
  return d;
}

inline json to_json(const BjorlingData& d) {
  json j{{"format", kFormat}, {"h0", to_json(d.h0)}, {"w0", to_json(d.w0)}};
  if (d.gauss.empty()) {
    j["nu0"] = to_json(d.nu0);
  } else {
    const int M = static_cast<int>(d.gauss.size());
    j["samples"] = M;
    json h = json::array(), w = json::array(), g = json::array();
    const auto hs = d.h0.synthesize(M), ws = d.w0.synthesize(M);
    for (int k = 0; k < M; ++k) {
      h.push_back(pair_to_json(hs[static_cast<std::size_t>(k)]));
      w.push_back(ws[static_cast<std::size_t>(k)].real());
      const auto& v = d.gauss[static_cast<std::size_t>(k)];
      g.push_back(json::array({v.xi.real(), v.xi.imag(), v.tau}));
    }
    j["h0"] = h;
    j["w0"] = w;
    j["gauss"] = g;
  }
  return j;
}

inline json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::invalid_input, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::invalid_input, "malformed JSON in " + path + ": " + e.what());
  }
}

/// Writes to a sibling temporary and renames it over the target.
inline void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::invalid_input, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::invalid_input, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::invalid_input, "cannot rename onto " + path);
  }
}

inline std::string obj_string(const Mesh& m) {
  std::ostringstream os;
  write_obj(m, os);
  return os.str();
}

inline std::string radius_profile_csv(const AnnularHarmonic& h, const Annulus& A, int count) {
  std::ostringstream os;
  os << "rho,min,max,rms\n";
  char buf[160];
  for (int i = 0; i < count; ++i) {
    const double rho = count == 1 ? A.r : A.r * std::pow(A.R / A.r, static_cast<double>(i) / (count - 1));
    const auto ir = image_radii(h, rho);
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g\n", rho, ir.min, ir.max, ir.rms);
    os << buf;
  }
  return os.str();
}

}  // namespace bjorling::io
