// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "matrix.hpp"

namespace weylsg {

// cyclic Jacobi on a real symmetric matrix, returns eigenvalues ascending
inline std::vector<double> symmetric_eigenvalues(RealMatrix a, double off_tol = 1e-12, int max_sweeps = 100) {
  if (!a.square()) throw ShapeMismatch("eigenvalues need a square matrix");
  const std::size_t n = a.rows();
  auto off = [&] {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };
  for (int sweep = 0; sweep < max_sweeps && off() > off_tol; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

// Hermitian A = B + iC maps to the real symmetric [[B,-C],[C,B]] whose spectrum
// is that of A with every eigenvalue doubled
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a, double off_tol = 1e-12) {
  if (!a.square()) throw ShapeMismatch("eigenvalues need a square matrix");
  const std::size_t n = a.rows();
  RealMatrix r(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // symmetrize so tiny hermiticity errors do not leak in
      const cplx h = 0.5 * (a(i, j) + std::conj(a(j, i)));
      r(i, j) = r(n + i, n + j) = h.real();
      r(n + i, j) = h.imag();
      r(i, n + j) = -h.imag();
    }
  auto both = symmetric_eigenvalues(std::move(r), off_tol);
  std::vector<double> ev;
  for (std::size_t i = 0; i < both.size(); i += 2) ev.push_back(0.5 * (both[i] + both[i + 1]));
  return ev;
}

}  // namespace weylsg
