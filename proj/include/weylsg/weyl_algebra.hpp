// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <numeric>
#include <vector>

#include "jacobi.hpp"
#include "matrix.hpp"

namespace weylsg {

// mu = N k + l
inline std::size_t weyl_index(std::size_t k, std::size_t l, std::size_t n) { return n * k + l; }

// index of U_mu^dagger up to phase, i.e. (-k, -l)
inline std::size_t conjugate_index(std::size_t mu, std::size_t n) {
  const std::size_t k = mu / n, l = mu % n;
  return weyl_index((n - k) % n, (n - l) % n, n);
}

inline std::vector<double> checked_probabilities(std::vector<double> p, std::size_t expected, double tol) {
  if (p.size() != expected) throw ShapeMismatch("probability vector has wrong length");
  double s = 0;
  for (double x : p) {
    if (!std::isfinite(x) || x < -tol) throw InvalidInput("probability entry is negative or not finite");
    s += x;
  }
  if (std::abs(s - 1.0) > tol) throw InvalidInput("probabilities do not sum to one");
  return p;
}

struct WeylChannel {
  Dimension dim;
  std::vector<double> p;

  WeylChannel(Dimension d, std::vector<double> probs, double tol = ToleranceConfig{}.simplex)
      : dim(d), p(checked_probabilities(std::move(probs), d.sq(), tol)) {}

  static WeylChannel identity(Dimension d) {
    std::vector<double> p(d.sq(), 0.0);
    p[0] = 1;
    return {d, p};
  }
  static WeylChannel depolarizing(Dimension d) {
    return {d, std::vector<double>(d.sq(), 1.0 / static_cast<double>(d.sq()))};
  }
};

struct ChannelSpectrum {
  Dimension dim;
  std::vector<cplx> lambda;
};

inline ComplexMatrix weyl_matrix(Dimension dim, std::size_t k, std::size_t l) {
  const std::size_t n = dim;
  if (k >= n || l >= n) throw IndexOutOfRange("weyl index out of range");
  // (X^k Z^l)_{a b} = delta_{a, b+k} omega^{l b}
  ComplexMatrix u(n, n);
  for (std::size_t b = 0; b < n; ++b) u((b + k) % n, b) = omega_pow(static_cast<long long>(l * b), n);
  return u;
}

inline ComplexMatrix weyl_matrix(Dimension dim, std::size_t mu) {
  if (mu >= dim.sq()) throw IndexOutOfRange("weyl index out of range");
  return weyl_matrix(dim, mu / dim.n(), mu % dim.n());
}

// H_{(mn),(kl)} = omega^{ml - kn}
inline cplx hadamard_entry(std::size_t row, std::size_t col, std::size_t n) {
  const long long m = row / n, nn = row % n, k = col / n, l = col % n;
  return omega_pow(m * l - k * nn, n);
}

inline ComplexMatrix hadamard_H(Dimension dim) {
  const std::size_t n = dim, s = dim.sq();
  ComplexMatrix h(s, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) h(i, j) = hadamard_entry(i, j, n);
  return h;
}

inline ChannelSpectrum spectrum_from_probabilities(const WeylChannel& ch) {
  const std::size_t n = ch.dim, s = ch.dim.sq();
  std::vector<cplx> lam(s);
  for (std::size_t mu = 0; mu < s; ++mu) {
    cplx acc = 0;
    for (std::size_t nu = 0; nu < s; ++nu) acc += hadamard_entry(mu, nu, n) * ch.p[nu];
    lam[mu] = acc;
  }
  return {ch.dim, lam};
}

// p = H lambda / N^2
inline std::vector<double> probabilities_from_spectrum(const ChannelSpectrum& sp, const ToleranceConfig& tol = {}) {
  const std::size_t n = sp.dim, s = sp.dim.sq();
  if (sp.lambda.size() != s) throw ShapeMismatch("spectrum has wrong length");
  for (std::size_t mu = 0; mu < s; ++mu)
    if (std::abs(sp.lambda[conjugate_index(mu, n)] - std::conj(sp.lambda[mu])) > tol.residual)
      throw NonPhysicalSpectrum("spectrum is not conjugation symmetric");
  std::vector<double> p(s);
  for (std::size_t mu = 0; mu < s; ++mu) {
    cplx acc = 0;
    for (std::size_t nu = 0; nu < s; ++nu) acc += hadamard_entry(mu, nu, n) * sp.lambda[nu];
    acc /= static_cast<double>(s);
    if (std::abs(acc.imag()) > tol.residual) throw NonPhysicalSpectrum("probabilities are not real");
    if (acc.real() < -tol.simplex) throw NonPhysicalSpectrum("spectrum maps to a negative probability");
    p[mu] = acc.real();
  }
  return p;
}

inline ComplexMatrix superoperator_of(const WeylChannel& ch) {
  const std::size_t s = ch.dim.sq();
  ComplexMatrix phi(s, s);
  for (std::size_t mu = 0; mu < s; ++mu) {
    if (ch.p[mu] == 0.0) continue;
    const auto u = weyl_matrix(ch.dim, mu);
    phi += kron(u, u.conj()) * cplx(ch.p[mu]);
  }
  return phi;
}

inline ComplexMatrix choi_of(const WeylChannel& ch) { return reshuffle(superoperator_of(ch)); }

inline std::vector<ComplexMatrix> kraus_operators(const WeylChannel& ch) {
  std::vector<ComplexMatrix> ks;
  for (std::size_t mu = 0; mu < ch.dim.sq(); ++mu) ks.push_back(weyl_matrix(ch.dim, mu) * cplx(std::sqrt(std::max(0.0, ch.p[mu]))));
  return ks;
}

inline void check_density(const ComplexMatrix& rho, std::size_t n, const ToleranceConfig& tol) {
  if (rho.rows() != n || rho.cols() != n) throw ShapeMismatch("density matrix has wrong order");
  if (!is_hermitian(rho, tol.residual)) throw InvalidInput("density matrix is not hermitian");
  if (std::abs(rho.trace() - 1.0) > tol.residual) throw InvalidInput("density matrix trace is not one");
  if (hermitian_eigenvalues(rho).front() < -tol.simplex) throw InvalidInput("density matrix is not positive");
}

inline ComplexMatrix kraus_apply(const WeylChannel& ch, const ComplexMatrix& rho, const ToleranceConfig& tol = {}) {
  check_density(rho, ch.dim, tol);
  ComplexMatrix out(ch.dim, ch.dim);
  for (const auto& k : kraus_operators(ch)) out += k * rho * k.adjoint();
  return out;
}

// blocks in the basis |j+k, j>; block k is sum_l p_{j-j', l} omega^{k l}
inline std::vector<ComplexMatrix> block_diagonalize(const WeylChannel& ch) {
  const std::size_t n = ch.dim;
  std::vector<ComplexMatrix> blocks;
  for (std::size_t k = 0; k < n; ++k) {
    ComplexMatrix b(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t jp = 0; jp < n; ++jp) {
        const std::size_t m = wrap(static_cast<long long>(j) - static_cast<long long>(jp), n);
        cplx acc = 0;
        for (std::size_t l = 0; l < n; ++l) acc += ch.p[weyl_index(m, l, n)] * omega_pow(static_cast<long long>(k * l), n);
        b(j, jp) = acc;
      }
    blocks.push_back(std::move(b));
  }
  return blocks;
}

// closed regular N-gon with vertices omega^j
inline bool in_regular_polygon(cplx z, std::size_t n, double tol = 1e-10) {
  for (std::size_t j = 0; j < n; ++j) {
    const cplx a = omega_pow(static_cast<long long>(j), n), b = omega_pow(static_cast<long long>(j + 1), n);
    const cplx e = b - a, w = z - a;
    if (e.real() * w.imag() - e.imag() * w.real() < -tol) return false;
  }
  return true;
}

}  // namespace weylsg
