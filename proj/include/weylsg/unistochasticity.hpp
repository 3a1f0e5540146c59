// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "weyl_algebra.hpp"

namespace weylsg {

// 3x3 bistochastic matrix from its top-left 2x2 block
struct Bistochastic3 {
  double b1, b2, b3, b4;  // B00, B01, B10, B11

  RealMatrix matrix() const {
    RealMatrix m(3, 3);
    m(0, 0) = b1, m(0, 1) = b2, m(0, 2) = 1 - b1 - b2;
    m(1, 0) = b3, m(1, 1) = b4, m(1, 2) = 1 - b3 - b4;
    m(2, 0) = 1 - b1 - b3, m(2, 1) = 1 - b2 - b4, m(2, 2) = b1 + b2 + b3 + b4 - 1;
    return m;
  }

  void validate(double tol = ToleranceConfig{}.simplex) const {
    const auto m = matrix();
    for (double x : m.data())
      if (!std::isfinite(x) || x < -tol || x > 1 + tol) throw InvalidInput("not a bistochastic matrix");
  }

  static Bistochastic3 from_matrix(const RealMatrix& m, double tol = ToleranceConfig{}.simplex) {
    if (m.rows() != 3 || m.cols() != 3) throw ShapeMismatch("expected a 3x3 matrix");
    for (std::size_t i = 0; i < 3; ++i) {
      double r = 0, c = 0;
      for (std::size_t j = 0; j < 3; ++j) r += m(i, j), c += m(j, i);
      if (std::abs(r - 1) > tol || std::abs(c - 1) > tol) throw InvalidInput("not a bistochastic matrix");
    }
    Bistochastic3 b{m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
    b.validate(tol);
    return b;
  }
};

inline double jarlskog_Q(const Bistochastic3& b) {
  b.validate();
  const double lin = b.b1 + b.b2 + b.b3 + b.b4 - 1 - b.b1 * b.b4 - b.b2 * b.b3;
  return 4 * b.b1 * b.b2 * b.b3 * b.b4 - lin * lin;
}

namespace detail {

// phases (0, phi2, phi3) with la + lb e^{i phi2} + lc e^{i phi3} = 0
inline std::array<double, 3> close_triangle(double la, double lb, double lc, double tol) {
  const double big = std::max({la, lb, lc});
  if (big <= tol) return {0, 0, 0};
  if (la + lb < lc - tol || lb + lc < la - tol || lc + la < lb - tol) throw TriangleViolation("triangle inequality fails");
  if (la <= tol) return {0, 0, std::numbers::pi};
  if (lb <= tol) return {0, 0, std::numbers::pi};
  const double c = std::clamp((lc * lc - la * la - lb * lb) / (2 * la * lb), -1.0, 1.0);
  const double phi2 = std::acos(c);
  const cplx ab = la + std::polar(lb, phi2);
  return {0, phi2, std::arg(-ab)};
}

}  // namespace detail

// V with |V_ij|^2 = B_ij, columns closed by the unitarity triangle
inline ComplexMatrix unitary_from_bistochastic3(const Bistochastic3& b, const ToleranceConfig& tol = {}) {
  if (jarlskog_Q(b) < -tol.triangle) throw NotUnistochastic("Jarlskog invariant is negative");
  const auto m = b.matrix();
  ComplexMatrix v(3, 3);
  std::array<double, 3> sides;
  for (std::size_t i = 0; i < 3; ++i) sides[i] = std::sqrt(std::max(0.0, m(i, 0)) * std::max(0.0, m(i, 1)));
  std::array<double, 3> ph;
  try {
    ph = detail::close_triangle(sides[0], sides[1], sides[2], 1e-7);
  } catch (const TriangleViolation&) {
    throw NotUnistochastic("unitarity triangle does not close");
  }
  for (std::size_t i = 0; i < 3; ++i) {
    v(i, 0) = std::sqrt(std::max(0.0, m(i, 0)));
    v(i, 1) = std::polar(std::sqrt(std::max(0.0, m(i, 1))), ph[i]);
  }
  // third column: conjugated cross product of the first two
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
    v(i, 2) = std::conj(v(j, 0) * v(k, 1) - v(k, 0) * v(j, 1));
  }
  return v;
}

struct FacePoint {
  double p1, p2, p3;

  std::array<double, 2> planar() const { return {p2 + 0.5 * p3, std::sqrt(3.0) / 2 * p3}; }

  void validate(double tol = ToleranceConfig{}.simplex) const {
    for (double x : {p1, p2, p3})
      if (!std::isfinite(x) || x < -tol) throw InvalidInput("face weights must be non-negative");
    if (std::abs(p1 + p2 + p3 - 1) > tol) throw InvalidInput("face weights must sum to one");
  }
};

// the hypocycloid quartic, i.e. Q of the circulant matrix built from p
inline double hypocycloid_value(const FacePoint& p) {
  p.validate();
  const double p3 = 1 - p.p1 - p.p2;
  const double lin = p.p1 - p.p1 * p.p1 - p3 * p.p2;
  return 4 * p.p1 * p.p1 * p3 * p.p2 - lin * lin;
}

inline bool hypocycloid_test(const FacePoint& p, double tol = ToleranceConfig{}.triangle) { return hypocycloid_value(p) >= -tol; }

using Triangle = std::array<std::array<double, 2>, 3>;

inline std::array<Triangle, 2> star_triangles() {
  const double r3 = std::sqrt(3.0);
  return {Triangle{{{1.0 / 3, 0}, {1.0 / 3, 1 / r3}, {5.0 / 6, 1 / (2 * r3)}}},
          Triangle{{{2.0 / 3, 1 / r3}, {2.0 / 3, 0}, {1.0 / 6, 1 / (2 * r3)}}}};
}

inline bool in_triangle(const std::array<double, 2>& x, const Triangle& t, double tol) {
  auto cross = [](const std::array<double, 2>& a, const std::array<double, 2>& b, const std::array<double, 2>& c) {
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
  };
  const double d1 = cross(t[0], t[1], x), d2 = cross(t[1], t[2], x), d3 = cross(t[2], t[0], x);
  const bool neg = d1 < -tol || d2 < -tol || d3 < -tol;
  const bool pos = d1 > tol || d2 > tol || d3 > tol;
  return !(neg && pos);
}

// conjectured region, see README
inline bool david_star_test(const FacePoint& p, double tol = ToleranceConfig{}.triangle) {
  p.validate();
  const auto x = p.planar();
  for (const auto& t : star_triangles())
    if (in_triangle(x, t, tol)) return true;
  return false;
}

struct DilationUnitary {
  ComplexMatrix u;
  std::size_t d;  // environment dimension
};

inline void check_dilation(const DilationUnitary& w, const ToleranceConfig& tol = {}) {
  if (!w.u.square() || w.d == 0 || w.u.rows() % w.d != 0) throw ShapeMismatch("dilation order must be N*d");
  if (!is_unitary(w.u, tol.residual)) throw InvalidInput("dilation is not unitary");
}

// U = sum_j c_j X^j (x) X^j with |c_j|^2 = p_j
inline DilationUnitary face_channel_dilation(const FacePoint& p, const ToleranceConfig& tol = {}) {
  p.validate(tol.simplex);
  if (!hypocycloid_test(p, tol.triangle)) throw TriangleViolation("point lies outside the hypocycloid");
  const std::array<double, 3> w{std::max(0.0, p.p1), std::max(0.0, p.p2), std::max(0.0, p.p3)};
  // unitarity: conj(c0) c1 + conj(c1) c2 + conj(c2) c0 = 0
  const double la = std::sqrt(w[0] * w[1]), lb = std::sqrt(w[1] * w[2]), lc = std::sqrt(w[2] * w[0]);
  auto ph = detail::close_triangle(la, lb, lc, 1e-7);
  // rotating a closed triangle keeps it closed; pick the rotation with zero phase sum
  const double shift = -(ph[0] + ph[1] + ph[2]) / 3;
  for (auto& x : ph) x += shift;
  const std::array<double, 3> phase{0, ph[0], ph[0] + ph[1]};
  const Dimension three(3);
  const auto x = weyl_matrix(three, 1, 0);
  ComplexMatrix u(9, 9), xj = ComplexMatrix::identity(3);
  for (std::size_t j = 0; j < 3; ++j) {
    u += kron(xj, xj) * std::polar(std::sqrt(w[j]), phase[j]);
    xj = x * xj;
  }
  return {u, 3};
}

struct GeneralChannel {
  Dimension dim;
  ComplexMatrix choi;
  std::vector<double> weyl_p;  // <<U_mu|D|U_mu>> / N^2
  double weyl_residual;        // distance of D from the Weyl-diagonal part
};

inline GeneralChannel channel_from_choi(const ComplexMatrix& d) {
  const std::size_t n = isqrt_exact(d.rows());
  const Dimension dim(n);
  std::vector<double> p(n * n);
  ComplexMatrix rebuilt(n * n, n * n);
  for (std::size_t mu = 0; mu < n * n; ++mu) {
    const auto v = vec(weyl_matrix(dim, mu));
    const auto dv = d.apply(v);
    cplx acc = 0;
    for (std::size_t i = 0; i < v.size(); ++i) acc += std::conj(v[i]) * dv[i];
    p[mu] = acc.real() / static_cast<double>(n * n);
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) rebuilt(i, j) += p[mu] * v[i] * std::conj(v[j]);
  }
  return {dim, d, p, max_abs_diff(rebuilt, d)};
}

// D = (U^R)^dagger U^R / N, taken literally; U has order N^2 (d = N)
inline GeneralChannel channel_from_dilation(const DilationUnitary& w, const ToleranceConfig& tol = {}) {
  check_dilation(w, tol);
  const std::size_t n = w.u.rows() / w.d;
  if (n != w.d) throw ShapeMismatch("channel formula needs environment dimension equal to N");
  const auto ur = reshuffle(w.u);
  return channel_from_choi(ur.adjoint() * ur * cplx(1.0 / static_cast<double>(n)));
}

// system first, environment maximally mixed: rho -> Tr_E U (rho (x) I/d) U^dagger, as a superoperator
inline ComplexMatrix dilation_superoperator(const DilationUnitary& w, const ToleranceConfig& tol = {}) {
  check_dilation(w, tol);
  const std::size_t d = w.d, n = w.u.rows() / d;
  ComplexMatrix s(n * n, n * n);
  // output (a,b) from input (i,j): (1/d) sum_{e,f} U_{(a e),(i f)} conj(U_{(b e),(j f)})
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          cplx acc = 0;
          for (std::size_t e = 0; e < d; ++e)
            for (std::size_t f = 0; f < d; ++f) acc += w.u(a * d + e, i * d + f) * std::conj(w.u(b * d + e, j * d + f));
          s(a * n + b, i * n + j) = acc / static_cast<double>(d);
        }
  return s;
}

inline GeneralChannel physical_channel_from_dilation(const DilationUnitary& w, const ToleranceConfig& tol = {}) {
  return channel_from_choi(reshuffle(dilation_superoperator(w, tol)));
}

// T_ij = (1/N) sum_{b,c} |U_{(i b),(j c)}|^2
inline RealMatrix transition_from_dilation(const DilationUnitary& w, const ToleranceConfig& tol = {}) {
  check_dilation(w, tol);
  const std::size_t d = w.d, n = w.u.rows() / d;
  if (n != d) throw ShapeMismatch("transition formula needs environment dimension equal to N");
  RealMatrix t(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0;
      for (std::size_t b = 0; b < d; ++b)
        for (std::size_t c = 0; c < d; ++c) acc += std::norm(w.u(i * d + b, j * d + c));
      t(i, j) = acc / static_cast<double>(n);
    }
  return t;
}

// B = L^T (U o conj U) L with L = I_N (x) |phi_k>, i.e. block averages
inline RealMatrix k_unistochastic_coarse_grain(const ComplexMatrix& u, std::size_t n, std::size_t k, const ToleranceConfig& tol = {}) {
  if (n == 0 || k == 0 || !u.square() || u.rows() != n * k) throw ShapeMismatch("unitary must have order k*N");
  if (!is_unitary(u, tol.residual)) throw InvalidInput("matrix is not unitary");
  RealMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0;
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t c = 0; c < k; ++c) acc += std::norm(u(i * k + a, j * k + c));
      b(i, j) = acc / static_cast<double>(k);
    }
  return b;
}

// F_3 (x) F_3 with (F_3)_{mn} = omega^{mn} / sqrt 3
inline ComplexMatrix fourier_9() {
  ComplexMatrix f(3, 3);
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t n = 0; n < 3; ++n) f(m, n) = omega_pow(static_cast<long long>(m * n), 3) / std::sqrt(3.0);
  return kron(f, f);
}

inline DilationUnitary fourier_conjugate_dilation(const DilationUnitary& w) {
  if (w.u.rows() != 9 || w.u.cols() != 9) throw ShapeMismatch("fourier conjugation needs a 9x9 unitary");
  const auto f = fourier_9();
  return {f * w.u * f.conj(), w.d};
}

struct StarCorner {
  std::string label;
  DilationUnitary u;
  FacePoint expected;  // weights on (I, X, X^2)
};

inline std::vector<StarCorner> star_corner_unitaries() {
  const Dimension three(3);
  ComplexMatrix uc = ComplexMatrix::identity(9);
  uc(6, 6) = omega_pow(1, 3);
  uc(8, 8) = omega_pow(2, 3);
  const auto f = fourier_9();
  const auto z = weyl_matrix(three, 0, 1);
  const double a = 1.0 / 3, b = 2.0 / 3;
  const std::array<FacePoint, 6> claims{FacePoint{b, a, 0}, FacePoint{b, 0, a}, FacePoint{a, 0, b},
                                        FacePoint{0, a, b}, FacePoint{0, b, a}, FacePoint{a, b, 0}};
  std::vector<StarCorner> out;
  ComplexMatrix za = ComplexMatrix::identity(3);
  for (int power = 0; power < 3; ++power) {
    const auto zz = kron(za, za);
    for (int bar = 0; bar < 2; ++bar) {
      const auto core = bar ? uc.conj() : uc;
      std::string label = "F (Z^" + std::to_string(power) + " x Z^" + std::to_string(power) + ") " + (bar ? "conj(Uc)" : "Uc") + " conj(F)";
      out.push_back({label, {f * zz * core * f.conj(), 3}, claims[static_cast<std::size_t>(2 * power + bar)]});
    }
    za = z * za;
  }
  return out;
}

// s = (1/2)(3 p1 - 1) + i (sqrt3/2)(p1 + 2 p2 - 1)
inline cplx z_face_overlap(const FacePoint& p) {
  p.validate();
  return {0.5 * (3 * p.p1 - 1), std::sqrt(3.0) / 2 * (p.p1 + 2 * p.p2 - 1)};
}

}  // namespace weylsg
