// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "core.hpp"

namespace weylsg {

template <class T>
inline T conj_of(const T& x) {
  if constexpr (std::is_same_v<T, cplx>) return std::conj(x);
  else return x;
}

// dense row-major, sized for N^2 x N^2 with N small
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, T fill = T{}) : r_(r), c_(c), a_(r * c, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  bool square() const { return r_ == c_; }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
  std::vector<T>& data() { return a_; }
  const std::vector<T>& data() const { return a_; }

  Matrix& operator+=(const Matrix& o) {
    same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    same_shape(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Matrix& operator*=(T s) {
    for (auto& x : a_) x *= s;
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, T s) { return a *= s; }
  friend Matrix operator*(T s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw ShapeMismatch("matrix product shape mismatch");
    Matrix m(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const T x = a(i, k);
        if (x == T{}) continue;
        for (std::size_t j = 0; j < b.c_; ++j) m(i, j) += x * b(k, j);
      }
    return m;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != c_) throw ShapeMismatch("matrix-vector shape mismatch");
    std::vector<T> out(r_, T{});
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  Matrix transpose() const {
    Matrix m(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }
  Matrix conj() const {
    Matrix m = *this;
    for (auto& x : m.a_) x = conj_of(x);
    return m;
  }
  Matrix adjoint() const { return transpose().conj(); }

  T trace() const {
    T s{};
    for (std::size_t i = 0; i < std::min(r_, c_); ++i) s += (*this)(i, i);
    return s;
  }

  double max_abs() const {
    double m = 0;
    for (const auto& x : a_) m = std::max(m, std::abs(x));
    return m;
  }

 private:
  void same_shape(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw ShapeMismatch("matrix shape mismatch");
  }
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using ComplexMatrix = Matrix<cplx>;
using RealMatrix = Matrix<double>;

template <class T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("shape mismatch");
  double m = 0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

// (A (x) B)_{(i,j),(k,l)} = A_ik B_jl
template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      for (std::size_t j = 0; j < b.rows(); ++j)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m(i * b.rows() + j, k * b.cols() + l) = a(i, k) * b(j, l);
  return m;
}

template <class T>
Matrix<T> hadamard_product(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeMismatch("shape mismatch");
  Matrix<T> m = a;
  for (std::size_t i = 0; i < m.data().size(); ++i) m.data()[i] *= b.data()[i];
  return m;
}

template <class T>
Matrix<T> direct_sum(const std::vector<Matrix<T>>& blocks) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) r += b.rows(), c += b.cols();
  Matrix<T> m(r, c);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) m(r0 + i, c0 + j) = b(i, j);
    r0 += b.rows();
    c0 += b.cols();
  }
  return m;
}

// row-major |A>> and its inverse
inline std::vector<cplx> vec(const ComplexMatrix& a) { return a.data(); }

inline ComplexMatrix unvec(const std::vector<cplx>& v, std::size_t n) {
  if (v.size() != n * n) throw ShapeMismatch("unvec length is not n^2");
  ComplexMatrix m(n, n);
  m.data() = v;
  return m;
}

inline std::size_t isqrt_exact(std::size_t k) {
  auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(k))));
  if (n * n != k) throw ShapeMismatch("order is not a perfect square");
  return n;
}

// X^R_{(m mu),(n nu)} = X_{(m n),(mu nu)}
inline ComplexMatrix reshuffle(const ComplexMatrix& x) {
  if (!x.square()) throw ShapeMismatch("reshuffle needs a square matrix");
  const std::size_t n = isqrt_exact(x.rows());
  ComplexMatrix r(x.rows(), x.cols());
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t mu = 0; mu < n; ++mu)
      for (std::size_t nn = 0; nn < n; ++nn)
        for (std::size_t nu = 0; nu < n; ++nu) r(m * n + mu, nn * n + nu) = x(m * n + nn, mu * n + nu);
  return r;
}

inline bool is_unitary(const ComplexMatrix& u, double tol) {
  if (!u.square()) return false;
  return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.rows())) <= tol;
}

inline bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (!a.square()) return false;
  return max_abs_diff(a, a.adjoint()) <= tol;
}

inline ComplexMatrix to_complex(const RealMatrix& a) {
  ComplexMatrix m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.data().size(); ++i) m.data()[i] = a.data()[i];
  return m;
}

}  // namespace weylsg
