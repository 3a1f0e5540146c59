// SPDX-License-Identifier: Apache-2.0
#pragma once

// JSON and CSV plumbing; needs nlohmann/json on the include path as "json.hpp".

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "geometry_sampling.hpp"

#ifndef WEYLSG_VERSION
#define WEYLSG_VERSION "0.1.0"
#endif

namespace weylsg::io {

using json = nlohmann::ordered_json;

inline const char* version() { return WEYLSG_VERSION; }

inline json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw InvalidInput("complex entry must be a number or [re, im]");
}

inline json complex_vector_to_json(const std::vector<cplx>& v) {
  json a = json::array();
  for (auto z : v) a.push_back(complex_to_json(z));
  return a;
}

inline json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(complex_to_json(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

inline json matrix_to_json(const RealMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(r);
  }
  return rows;
}

inline ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidInput("matrix must be a non-empty array of rows");
  const std::size_t r = j.size(), c = j[0].size();
  ComplexMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (!j[i].is_array() || j[i].size() != c) throw InvalidInput("matrix rows have unequal length");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  return m;
}

inline RealMatrix real_matrix_from_json(const json& j, double tol = 1e-12) {
  const auto m = matrix_from_json(j);
  RealMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.data().size(); ++i) {
    if (std::abs(m.data()[i].imag()) > tol) throw InvalidInput("expected a real matrix");
    r.data()[i] = m.data()[i].real();
  }
  return r;
}

inline json channel_to_json(const WeylChannel& ch) { return json{{"n", ch.dim.n()}, {"p", ch.p}}; }

inline WeylChannel channel_from_json(const json& j, const ToleranceConfig& tol = {}) {
  if (!j.contains("p")) throw InvalidInput("channel needs a field p");
  auto p = j.at("p").get<std::vector<double>>();
  // n defaults to the square root of the length of p
  const std::size_t n = j.contains("n") ? j.at("n").get<std::size_t>() : isqrt_exact(p.size());
  return {Dimension(n), std::move(p), tol.simplex};
}

inline json circulant_to_json(const CirculantBistochastic& t) { return json{{"n", t.dim.n()}, {"q", t.q}}; }

inline CirculantBistochastic circulant_from_json(const json& j, const ToleranceConfig& tol = {}) {
  if (j.contains("q")) {
    auto q = j.at("q").get<std::vector<double>>();
    const std::size_t n = j.contains("n") ? j.at("n").get<std::size_t>() : q.size();
    return {Dimension(n), q, tol.simplex};
  }
  if (j.contains("matrix")) return as_circulant(real_matrix_from_json(j.at("matrix")), tol);
  throw InvalidInput("circulant needs q or matrix");
}

inline Bistochastic3 bistochastic_from_json(const json& j, const ToleranceConfig& tol = {}) {
  if (j.contains("b")) {
    const auto b = j.at("b").get<std::vector<double>>();
    if (b.size() != 4) throw InvalidInput("b needs four entries");
    Bistochastic3 out{b[0], b[1], b[2], b[3]};
    out.validate(tol.simplex);
    return out;
  }
  if (j.contains("matrix")) return Bistochastic3::from_matrix(real_matrix_from_json(j.at("matrix")), tol.simplex);
  throw InvalidInput("bistochastic matrix needs b or matrix");
}

inline json verdict_to_json(const AccessibilityVerdict& v) {
  json j;
  j["accessible"] = v.accessible;
  j["reason"] = to_string(v.reason);
  j["t"] = v.times ? json(*v.times) : json::array();
  j["M"] = v.branch ? json(*v.branch) : json::array();
  j["residual"] = v.residual;
  return j;
}

inline json sidecar(std::uint64_t seed, std::size_t samples, std::size_t n, const json& extra = json::object()) {
  json j{{"seed", seed}, {"samples", samples}, {"N", n}, {"version", version()}};
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  return j;
}

inline json volume_to_json(const VolumeEstimate& v, std::size_t n) {
  return json{{"n", n}, {"fraction", v.fraction}, {"stderr", v.stderr_}, {"samples", v.samples}, {"seed", v.seed}, {"hits", v.hits}};
}

inline void write_scan_csv(std::ostream& os, const ScanGrid& g) {
  os.precision(17);
  os << "x,y,w0,w1,w2,accessible,hypocycloid,star,embeddable\n";
  for (const auto& c : g.cells)
    os << c.x << ',' << c.y << ',' << c.w[0] << ',' << c.w[1] << ',' << c.w[2] << ',' << ((c.flags & ScanAccessible) ? 1 : 0) << ','
       << ((c.flags & ScanHypocycloid) ? 1 : 0) << ',' << ((c.flags & ScanStar) ? 1 : 0) << ',' << ((c.flags & ScanEmbeddable) ? 1 : 0)
       << '\n';
}

inline void write_scatter_csv(std::ostream& os, const std::vector<cplx>& pts) {
  os.precision(17);
  os << "re,im\n";
  for (auto z : pts) os << z.real() << ',' << z.imag() << '\n';
}

// upper branch then lower branch, each in increasing t
inline void write_spiral_csv(std::ostream& os, const std::vector<SpiralPoint>& pts) {
  os.precision(17);
  os << "t,re,im\n";
  for (const auto& p : pts) os << p.t << ',' << p.upper.real() << ',' << p.upper.imag() << '\n';
  for (const auto& p : pts) os << -p.t << ',' << p.lower.real() << ',' << p.lower.imag() << '\n';
}

inline void write_matrix_csv(std::ostream& os, const RealMatrix& m) {
  os.precision(17);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
    os << '\n';
  }
}

}  // namespace weylsg::io
