// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace weylsg {

using cplx = std::complex<double>;

// every numerical threshold in one place
struct ToleranceConfig {
  double simplex = 1e-9;      // probability vectors
  double residual = 1e-10;    // hermiticity, unitarity
  double slack = 1e-9;        // t >= -slack counts as accessible
  double zero = 1e-12;        // |lambda| below this is singular
  double imag = 1e-9;         // allowed imaginary residual of times
  double triangle = 1e-9;     // region and triangle tests
};

struct SearchConfig {
  ToleranceConfig tol{};
  int m_max = 3;
  // node cap for the branch enumeration, only bites for large N
  long long max_nodes = 2'000'000;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class InvalidInput : public Error {
 public:
  using Error::Error;
};
class IndexOutOfRange : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};
class ShapeMismatch : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};
class UnsupportedShape : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};
class NotUnistochastic : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};
class TriangleViolation : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};
class NonPhysicalSpectrum : public Error {
 public:
  using Error::Error;
};
class SingularSpectrum : public Error {
 public:
  using Error::Error;
};
class NonReal : public Error {
 public:
  using Error::Error;
};

class Dimension {
 public:
  explicit Dimension(std::size_t n) : n_(n) {
    if (n < 2) throw InvalidInput("dimension must be at least 2");
  }
  std::size_t n() const { return n_; }
  std::size_t sq() const { return n_ * n_; }
  operator std::size_t() const { return n_; }
  bool operator==(const Dimension&) const = default;

 private:
  std::size_t n_;
};

inline std::size_t wrap(long long a, std::size_t n) {
  long long r = a % static_cast<long long>(n);
  return static_cast<std::size_t>(r < 0 ? r + static_cast<long long>(n) : r);
}

// omega^e with omega = exp(2 pi i / n), from a per-thread table of the n roots
inline cplx omega_pow(long long e, std::size_t n) {
  thread_local std::vector<cplx> roots;
  thread_local std::size_t cached = 0;
  if (cached != n) {
    roots.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
      roots[j] = {std::cos(a), std::sin(a)};
    }
    cached = n;
  }
  return roots[wrap(e, n)];
}

}  // namespace weylsg
