// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "branch_search.hpp"
#include "jacobi.hpp"
#include "weyl_algebra.hpp"

namespace weylsg {

inline const detail::LogProblem& quantum_log_problem(std::size_t n) {
  thread_local std::map<std::size_t, detail::LogProblem> cache;
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  detail::LogProblem pb;
  pb.size = n * n;
  pb.scale = 1.0 / static_cast<double>(n * n);
  pb.partner.resize(pb.size);
  pb.a.resize(pb.size * pb.size);
  for (std::size_t mu = 0; mu < pb.size; ++mu) {
    pb.partner[mu] = conjugate_index(mu, n);
    for (std::size_t nu = 0; nu < pb.size; ++nu) pb.a[mu * pb.size + nu] = hadamard_entry(mu, nu, n);
  }
  return cache.emplace(n, std::move(pb)).first->second;
}

// U_mu (x) conj(U_mu) - I, zero for mu = 0
inline ComplexMatrix lindblad_generator(Dimension dim, std::size_t mu) {
  if (mu >= dim.sq()) throw IndexOutOfRange("generator index out of range");
  const auto u = weyl_matrix(dim, mu);
  return kron(u, u.conj()) - ComplexMatrix::identity(dim.sq());
}

inline ComplexMatrix generator_from_times(const std::vector<double>& t, Dimension dim) {
  if (t.size() != dim.sq()) throw ShapeMismatch("time vector has wrong length");
  ComplexMatrix l(dim.sq(), dim.sq());
  for (std::size_t mu = 1; mu < t.size(); ++mu)
    if (t[mu] != 0.0) l += lindblad_generator(dim, mu) * cplx(t[mu]);
  return l;
}

inline void check_times(const std::vector<double>& t, std::size_t expected) {
  if (t.size() != expected) throw ShapeMismatch("time vector has wrong length");
  for (std::size_t mu = 1; mu < t.size(); ++mu)
    if (!(t[mu] >= 0.0)) throw InvalidInput("interaction times must be non-negative");
}

// p = H exp(H' t) / N^2 with H' = H - ones; t_0 never contributes
inline WeylChannel channel_from_times(const std::vector<double>& t, Dimension dim) {
  const std::size_t n = dim, s = dim.sq();
  check_times(t, s);
  std::vector<cplx> lam(s);
  for (std::size_t nu = 0; nu < s; ++nu) {
    cplx e = 0;
    for (std::size_t eta = 1; eta < s; ++eta) e += (hadamard_entry(nu, eta, n) - 1.0) * t[eta];
    lam[nu] = std::exp(e);
  }
  std::vector<double> p(s);
  for (std::size_t mu = 0; mu < s; ++mu) {
    cplx acc = 0;
    for (std::size_t nu = 0; nu < s; ++nu) acc += hadamard_entry(mu, nu, n) * lam[nu];
    p[mu] = acc.real() / static_cast<double>(s);
  }
  return {dim, p};
}

inline std::vector<double> accessibility_times(const ChannelSpectrum& sp, const std::vector<long long>& branch,
                                               const ToleranceConfig& tol = {}) {
  const auto& pb = quantum_log_problem(sp.dim);
  pb.check_branch(branch);
  return pb.times(pb.logs(sp.lambda, tol), branch, tol);
}

inline double reconstruction_error(const WeylChannel& a, const WeylChannel& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.p.size(); ++i) m = std::max(m, std::abs(a.p[i] - b.p[i]));
  return m;
}

inline AccessibilityVerdict decide_accessibility(const WeylChannel& ch, const SearchConfig& cfg = {}) {
  const auto sp = spectrum_from_probabilities(ch);
  auto res = detail::search_branches(quantum_log_problem(ch.dim), sp.lambda, cfg);
  AccessibilityVerdict v;
  v.reason = res.reason;
  if (res.reason != Reason::OK) return v;
  for (auto& x : res.t) x = std::max(0.0, x);
  v.accessible = true;
  v.residual = reconstruction_error(channel_from_times(res.t, ch.dim), ch);
  v.times = std::move(res.t);
  v.branch = std::move(res.m);
  return v;
}

// sum_nu H_{mu nu} log|lambda_nu| >= 0 for every mu >= 1
inline bool necessary_modulus_condition(const ChannelSpectrum& sp, const ToleranceConfig& tol = {}) {
  const std::size_t n = sp.dim, s = sp.dim.sq();
  std::vector<double> lr(s);
  for (std::size_t nu = 0; nu < s; ++nu) {
    if (std::abs(sp.lambda[nu]) <= tol.zero) throw SingularSpectrum("eigenvalue with vanishing modulus");
    lr[nu] = std::log(std::abs(sp.lambda[nu]));
  }
  for (std::size_t mu = 1; mu < s; ++mu) {
    double acc = 0;
    for (std::size_t nu = 0; nu < s; ++nu) acc += hadamard_entry(mu, nu, n).real() * lr[nu];
    if (acc < -tol.slack * static_cast<double>(s)) return false;
  }
  return true;
}

// (1/N) sum_nu L_nu |U_nu>><<U_nu| for the chosen branch
inline ComplexMatrix channel_logarithm(const ChannelSpectrum& sp, const std::vector<long long>& branch,
                                       const ToleranceConfig& tol = {}) {
  const auto& pb = quantum_log_problem(sp.dim);
  pb.check_branch(branch);
  const auto logs = pb.logs(sp.lambda, tol);
  const std::size_t s = sp.dim.sq();
  ComplexMatrix l(s, s);
  for (std::size_t nu = 0; nu < s; ++nu) {
    const auto v = vec(weyl_matrix(sp.dim, nu));
    const cplx c = (logs[nu] + cplx(0, 2 * std::numbers::pi * static_cast<double>(branch[nu]))) / static_cast<double>(sp.dim.n());
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) l(i, j) += c * v[i] * std::conj(v[j]);
  }
  return l;
}

struct LindbladReport {
  bool hermiticity = false;
  bool trace = false;
  bool ccp = false;
  bool weyl_diagonal = false;  // which CCP route was taken
  bool ok() const { return hermiticity && trace && ccp; }
};

inline LindbladReport lindblad_report(const ComplexMatrix& l, const ToleranceConfig& tol = {}) {
  if (!l.square()) throw ShapeMismatch("generator must be square");
  const std::size_t n = isqrt_exact(l.rows()), s = l.rows();
  const double scale = std::max(1.0, l.max_abs());
  const double eps = tol.residual * scale;
  LindbladReport r;

  r.hermiticity = true;
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t mu = 0; mu < n; ++mu)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t nu = 0; nu < n; ++nu)
          if (std::abs(l(m * n + mu, a * n + nu) - std::conj(l(mu * n + m, nu * n + a))) > eps) r.hermiticity = false;

  r.trace = true;
  for (std::size_t col = 0; col < s; ++col) {
    cplx acc = 0;
    for (std::size_t m = 0; m < n; ++m) acc += l(m * n + m, col);
    if (std::abs(acc) > eps) r.trace = false;
  }

  // diagonal in the Weyl basis: read off c_nu and use the analytic C_mu
  const Dimension dim(n);
  std::vector<cplx> c(s);
  ComplexMatrix rebuilt(s, s);
  for (std::size_t nu = 0; nu < s; ++nu) {
    const auto v = vec(weyl_matrix(dim, nu));
    const auto lv = l.apply(v);
    cplx acc = 0;
    for (std::size_t i = 0; i < s; ++i) acc += std::conj(v[i]) * lv[i];
    c[nu] = acc / static_cast<double>(n);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) rebuilt(i, j) += c[nu] * v[i] * std::conj(v[j]) / static_cast<double>(n);
  }
  r.weyl_diagonal = max_abs_diff(rebuilt, l) <= eps;
  if (r.weyl_diagonal) {
    r.ccp = true;
    for (std::size_t mu = 1; mu < s; ++mu) {
      cplx acc = 0;
      for (std::size_t nu = 0; nu < s; ++nu) acc += hadamard_entry(mu, nu, n) * c[nu];
      acc /= static_cast<double>(s);
      if (acc.real() < -tol.slack * scale || std::abs(acc.imag()) > eps) r.ccp = false;
    }
    return r;
  }

  // general route: (1-P) L^R (1-P) >= 0 with P the projector on |I>>/sqrt(N)
  const auto lr = reshuffle(l);
  ComplexMatrix q = ComplexMatrix::identity(s);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i * n + i, j * n + j) -= 1.0 / static_cast<double>(n);
  const auto proj = q * lr * q;
  if (!is_hermitian(proj, eps)) {
    r.ccp = false;
    return r;
  }
  r.ccp = hermitian_eigenvalues(proj).front() >= -tol.slack * scale;
  return r;
}

inline bool validate_lindblad(const ComplexMatrix& l, const ToleranceConfig& tol = {}) { return lindblad_report(l, tol).ok(); }

// the (f1, f2, f3) weights of exp(t_x L_x + t_y L_y) on (I, U_x, U_x^2)
inline std::array<double, 3> pair_weights(double tx, double ty) {
  const double e = std::exp(-1.5 * (tx + ty)), ph = std::sqrt(3.0) / 2 * (tx - ty);
  const double c = e * std::cos(ph), sn = std::sqrt(3.0) * e * std::sin(ph);
  return {(1 + 2 * c) / 3, (1 - c + sn) / 3, (1 - c - sn) / 3};
}

struct GeneratorPairs {
  std::size_t a, b, alpha, beta;
};

// qutrit boundary channel from two conjugate generator pairs, all other times zero
inline WeylChannel product_face_vector(const GeneratorPairs& g, double ta, double tb, double talpha, double tbeta) {
  constexpr std::size_t n = 3;
  for (std::size_t x : {g.a, g.b, g.alpha, g.beta})
    if (x == 0 || x >= n * n) throw InvalidInput("generator index out of range");
  if (conjugate_index(g.a, n) != g.b || conjugate_index(g.alpha, n) != g.beta || g.alpha == g.a || g.alpha == g.b)
    throw InvalidInput("indices are not two distinct conjugate pairs");
  for (double t : {ta, tb, talpha, tbeta})
    if (!(t >= 0)) throw InvalidInput("interaction times must be non-negative");
  const auto w = pair_weights(ta, tb), v = pair_weights(talpha, tbeta);
  std::vector<double> p(n * n, 0.0);
  const std::size_t ka = g.a / n, la = g.a % n, kb = g.alpha / n, lb = g.alpha % n;
  // U_a^i U_alpha^j is proportional to U_{i a + j alpha}
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p[weyl_index((i * ka + j * kb) % n, (i * la + j * lb) % n, n)] += w[i] * v[j];
  return {Dimension(n), p};
}

}  // namespace weylsg
