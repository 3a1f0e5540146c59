// SPDX-License-Identifier: Apache-2.0
#pragma once

// Needs GSL (link GSL::gsl).

#include <gsl/gsl_multimin.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "unistochasticity.hpp"

namespace weylsg {

// W = diag(e^{i a0}, e^{i a1}, e^{i a2}) R01 R02 R12, each R a complex Givens rotation (theta, phi)
inline ComplexMatrix unitary3_from_angles(const double* x) {
  ComplexMatrix w(3, 3);
  for (std::size_t i = 0; i < 3; ++i) w(i, i) = std::polar(1.0, x[i]);
  const std::array<std::array<std::size_t, 2>, 3> planes{{{0, 1}, {0, 2}, {1, 2}}};
  for (std::size_t r = 0; r < 3; ++r) {
    ComplexMatrix g = ComplexMatrix::identity(3);
    const double th = x[3 + 2 * r], ph = x[4 + 2 * r];
    const auto [i, j] = planes[r];
    g(i, i) = std::cos(th);
    g(j, j) = std::cos(th);
    g(i, j) = -std::polar(std::sin(th), ph);
    g(j, i) = std::polar(std::sin(th), -ph);
    w = w * g;
  }
  return w;
}

struct DilationSearchResult {
  bool found = false;
  double residual = 0;  // best max |overlap - target| seen
  int restarts = 0;
  std::array<ComplexMatrix, 3> w;  // blocks, W_0 = I gauge
  DilationUnitary u{ComplexMatrix(), 3};
};

struct DilationSearchConfig {
  int restarts = 256;
  int iterations = 4000;
  double target = 1e-6;
  unsigned long long seed = 1;
};

namespace detail {

struct OverlapTarget {
  cplx s;
};

// targets (1/3) tr(W_j^dagger W_i) = c(i - j); with W_0 = I that is
// tr W_1 / 3 = s, tr W_2 / 3 = conj(s), tr(W_1^dagger W_2) / 3 = s
inline std::array<double, 3> overlap_errors(const ComplexMatrix& w1, const ComplexMatrix& w2, cplx s) {
  return {std::abs(w1.trace() / 3.0 - s), std::abs(w2.trace() / 3.0 - std::conj(s)),
          std::abs((w1.adjoint() * w2).trace() / 3.0 - s)};
}

inline double overlap_objective(const gsl_vector* v, void* params) {
  const auto* t = static_cast<const OverlapTarget*>(params);
  const auto w1 = unitary3_from_angles(v->data), w2 = unitary3_from_angles(v->data + 9);
  const auto e = overlap_errors(w1, w2, t->s);
  return e[0] * e[0] + e[1] * e[1] + e[2] * e[2];
}

}  // namespace detail

// Bounded random-restart search for a block dilation of the Z-face channel p.
// Not finding one is not a proof that none exists.
inline DilationSearchResult dilation_search_z_face(const FacePoint& p, const DilationSearchConfig& cfg = {}) {
  detail::OverlapTarget target{z_face_overlap(p)};
  DilationSearchResult best;
  best.residual = INFINITY;
  constexpr std::size_t dim = 18;
  gsl_multimin_function fn{&detail::overlap_objective, dim, &target};
  gsl_vector* x = gsl_vector_alloc(dim);
  gsl_vector* step = gsl_vector_alloc(dim);
  gsl_vector_set_all(step, 0.6);
  gsl_multimin_fminimizer* mm = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);

  for (int r = 0; r < cfg.restarts && !best.found; ++r) {
    for (std::size_t i = 0; i < dim; ++i) gsl_vector_set(x, i, angle(rng));
    gsl_multimin_fminimizer_set(mm, &fn, x, step);
    for (int it = 0; it < cfg.iterations; ++it) {
      if (gsl_multimin_fminimizer_iterate(mm)) break;
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(mm), 1e-11) == GSL_SUCCESS) break;
    }
    const gsl_vector* xm = gsl_multimin_fminimizer_x(mm);
    const auto w1 = unitary3_from_angles(xm->data), w2 = unitary3_from_angles(xm->data + 9);
    const auto e = detail::overlap_errors(w1, w2, target.s);
    const double res = std::max({e[0], e[1], e[2]});
    best.restarts = r + 1;
    if (res < best.residual) {
      best.residual = res;
      best.w = {ComplexMatrix::identity(3), w1, w2};
    }
    best.found = res <= cfg.target;
  }
  gsl_multimin_fminimizer_free(mm);
  gsl_vector_free(step);
  gsl_vector_free(x);
  if (best.found) best.u = {direct_sum(std::vector<ComplexMatrix>(best.w.begin(), best.w.end())), 3};
  return best;
}

}  // namespace weylsg
