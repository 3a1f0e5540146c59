// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "branch_search.hpp"
#include "weyl_algebra.hpp"

namespace weylsg {

// T = sum_k q_k X^k, so T_ij = q_{i-j}
struct CirculantBistochastic {
  Dimension dim;
  std::vector<double> q;

  CirculantBistochastic(Dimension d, std::vector<double> weights, double tol = ToleranceConfig{}.simplex)
      : dim(d), q(checked_probabilities(std::move(weights), d.n(), tol)) {}

  RealMatrix matrix() const {
    const std::size_t n = dim;
    RealMatrix t(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) t(i, j) = q[wrap(static_cast<long long>(i) - static_cast<long long>(j), n)];
    return t;
  }
};

inline CirculantBistochastic hyperdecohere_channel(const WeylChannel& ch) {
  const std::size_t n = ch.dim;
  std::vector<double> q(n, 0.0);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) q[k] += ch.p[weyl_index(k, l, n)];
  return {ch.dim, q};
}

// K_ij = L_{(ii),(jj)}
inline RealMatrix hyperdecohere_generator(const ComplexMatrix& l, const ToleranceConfig& tol = {}) {
  if (!l.square()) throw ShapeMismatch("generator must be square");
  const std::size_t n = isqrt_exact(l.rows());
  RealMatrix k(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cplx x = l(i * n + i, j * n + j);
      if (std::abs(x.imag()) > tol.residual * std::max(1.0, std::abs(x))) throw NonReal("classical block is not real");
      k(i, j) = x.real();
    }
  return k;
}

// xi_n = sum_k omega^{-nk} q_k
inline std::vector<cplx> circulant_spectrum(const CirculantBistochastic& t) {
  const std::size_t n = t.dim;
  std::vector<cplx> xi(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t k = 0; k < n; ++k) xi[a] += omega_pow(-static_cast<long long>(a * k), n) * t.q[k];
  return xi;
}

inline CirculantBistochastic circulant_from_spectrum(const std::vector<cplx>& xi, Dimension dim, const ToleranceConfig& tol = {}) {
  const std::size_t n = dim;
  if (xi.size() != n) throw ShapeMismatch("spectrum has wrong length");
  std::vector<double> q(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc = 0;
    for (std::size_t a = 0; a < n; ++a) acc += omega_pow(static_cast<long long>(a * k), n) * xi[a];
    acc /= static_cast<double>(n);
    if (std::abs(acc.imag()) > tol.residual) throw NonPhysicalSpectrum("weights are not real");
    if (acc.real() < -tol.simplex) throw NonPhysicalSpectrum("spectrum maps to a negative weight");
    q[k] = acc.real();
  }
  return {dim, q};
}

inline const detail::LogProblem& classical_log_problem(std::size_t n) {
  thread_local std::map<std::size_t, detail::LogProblem> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  detail::LogProblem pb;
  pb.size = n;
  pb.scale = 1.0 / static_cast<double>(n);
  pb.partner.resize(n);
  pb.a.resize(n * n);
  for (std::size_t m = 0; m < n; ++m) {
    pb.partner[m] = (n - m) % n;
    for (std::size_t a = 0; a < n; ++a) pb.a[m * n + a] = omega_pow(static_cast<long long>(m * a), n);
  }
  return cache.emplace(n, std::move(pb)).first->second;
}

inline std::vector<double> classical_accessibility_times(const std::vector<cplx>& xi, const std::vector<long long>& branch,
                                                         const ToleranceConfig& tol = {}) {
  const auto& pb = classical_log_problem(xi.size());
  pb.check_branch(branch);
  return pb.times(pb.logs(xi, tol), branch, tol);
}

// q_k = (1/N) sum_j omega^{kj} exp(sum_m (omega^{-jm} - 1) t_m)
inline CirculantBistochastic classical_semigroup_matrix(const std::vector<double>& t, Dimension dim) {
  const std::size_t n = dim;
  if (t.size() != n) throw ShapeMismatch("time vector has wrong length");
  for (std::size_t m = 1; m < n; ++m)
    if (!(t[m] >= 0)) throw InvalidInput("interaction times must be non-negative");
  std::vector<cplx> xi(n);
  for (std::size_t j = 0; j < n; ++j) {
    cplx e = 0;
    for (std::size_t m = 1; m < n; ++m) e += (omega_pow(-static_cast<long long>(j * m), n) - 1.0) * t[m];
    xi[j] = std::exp(e);
  }
  std::vector<double> q(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += omega_pow(static_cast<long long>(k * j), n) * xi[j];
    q[k] = acc.real() / static_cast<double>(n);
  }
  return {dim, q};
}

inline RealMatrix kolmogorov_from_times(const std::vector<double>& t, Dimension dim) {
  const std::size_t n = dim;
  if (t.size() != n) throw ShapeMismatch("time vector has wrong length");
  RealMatrix k(n, n);
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t j = 0; j < n; ++j) {
      k((j + m) % n, j) += t[m];
      k(j, j) -= t[m];
    }
  return k;
}

inline AccessibilityVerdict decide_embeddability(const CirculantBistochastic& t, const SearchConfig& cfg = {}) {
  auto res = detail::search_branches(classical_log_problem(t.dim), circulant_spectrum(t), cfg);
  AccessibilityVerdict v;
  v.reason = res.reason;
  if (res.reason != Reason::OK) return v;
  for (auto& x : res.t) x = std::max(0.0, x);
  v.accessible = true;
  const auto back = classical_semigroup_matrix(res.t, t.dim);
  for (std::size_t k = 0; k < t.q.size(); ++k) v.residual = std::max(v.residual, std::abs(back.q[k] - t.q[k]));
  v.times = std::move(res.t);
  v.branch = std::move(res.m);
  return v;
}

// only circulant stochastic matrices are in scope
inline CirculantBistochastic as_circulant(const RealMatrix& t, const ToleranceConfig& tol = {}) {
  if (!t.square() || t.rows() < 2) throw UnsupportedShape("transition matrix must be square of order at least 2");
  const std::size_t n = t.rows();
  std::vector<double> q(n);
  for (std::size_t k = 0; k < n; ++k) q[k] = t(k, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(t(i, j) - q[wrap(static_cast<long long>(i) - static_cast<long long>(j), n)]) > tol.simplex)
        throw UnsupportedShape("embeddability is decided only for circulant matrices");
  return {Dimension(n), q, tol.simplex};
}

inline AccessibilityVerdict decide_embeddability(const RealMatrix& t, const SearchConfig& cfg = {}) {
  return decide_embeddability(as_circulant(t, cfg.tol), cfg);
}

// log T on the chosen branch, as a real matrix
inline RealMatrix circulant_logarithm(const std::vector<cplx>& xi, const std::vector<long long>& branch, const ToleranceConfig& tol = {}) {
  const std::size_t n = xi.size();
  const auto& pb = classical_log_problem(n);
  pb.check_branch(branch);
  const auto logs = pb.logs(xi, tol);
  RealMatrix k(n, n);
  for (std::size_t d = 0; d < n; ++d) {
    cplx c = 0;
    for (std::size_t a = 0; a < n; ++a)
      c += omega_pow(static_cast<long long>(d * a), n) * (logs[a] + cplx(0, 2 * std::numbers::pi * static_cast<double>(branch[a])));
    c /= static_cast<double>(n);
    if (std::abs(c.imag()) > tol.imag) throw NonReal("logarithm is not real on this branch");
    for (std::size_t j = 0; j < n; ++j) k((j + d) % n, j) = c.real();
  }
  return k;
}

inline bool validate_kolmogorov(const RealMatrix& k, const ToleranceConfig& tol = {}) {
  if (!k.square()) throw ShapeMismatch("generator must be square");
  const std::size_t n = k.rows();
  const double eps = tol.slack * std::max(1.0, k.max_abs());
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i != j && k(i, j) < -eps) return false;
      s += k(i, j);
    }
    if (std::abs(s) > eps) return false;
  }
  return true;
}

}  // namespace weylsg
