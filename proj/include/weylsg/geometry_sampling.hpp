// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <thread>
#include <vector>

#include "classical_maps.hpp"
#include "quantum_accessibility.hpp"
#include "unistochasticity.hpp"

namespace weylsg {

inline double spiral_decay(std::size_t n) { return std::tan(std::numbers::pi / static_cast<double>(Dimension(n).n())); }

struct SpiralPoint {
  double t;
  cplx upper, lower;
};

// e^{+-it - t tan(pi/N)}
inline std::vector<SpiralPoint> spiral_boundary(std::size_t n, const std::vector<double>& t_grid) {
  const double k = spiral_decay(n);
  std::vector<SpiralPoint> out;
  for (double t : t_grid) {
    if (!(t >= 0 && t <= std::numbers::pi)) throw InvalidInput("spiral parameter must lie in [0, pi]");
    const double r = std::exp(-t * k);
    out.push_back({t, std::polar(r, t), std::polar(r, -t)});
  }
  return out;
}

inline double x_min(std::size_t n) { return -std::exp(-std::numbers::pi * spiral_decay(n)); }

inline bool spectral_support_contains(cplx z, std::size_t n, double tol = ToleranceConfig{}.triangle) {
  const double r = std::abs(z);
  if (r == 0) return true;
  return r <= std::exp(-std::abs(std::arg(z)) * spiral_decay(n)) + tol;
}

inline double spectral_support_area(std::size_t n) {
  const double k = spiral_decay(n);
  return 0.5 * (1 - std::exp(-2 * std::numbers::pi * k)) / k;
}

// ---- sampling -------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// per-sample stream keyed by (seed, index), so workers never share state
class CounterStream {
 public:
  using result_type = std::uint64_t;
  CounterStream(std::uint64_t seed, std::uint64_t index) : state_(splitmix64(seed ^ splitmix64(index + 0x632be59bd9b4e019ULL))) {}
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// flat Dirichlet point with `components` weights via sorted uniform spacings
inline std::vector<double> sample_simplex_point(std::size_t components, std::uint64_t seed, std::uint64_t index) {
  if (components == 0) throw InvalidInput("simplex needs at least one component");
  CounterStream rng(seed, index);
  std::vector<double> cut(components + 1);
  cut[0] = 0;
  cut[components] = 1;
  for (std::size_t i = 1; i < components; ++i) cut[i] = rng.uniform();
  std::sort(cut.begin() + 1, cut.end() - 1);
  std::vector<double> p(components);
  for (std::size_t i = 0; i < components; ++i) p[i] = cut[i + 1] - cut[i];
  return p;
}

inline std::vector<std::vector<double>> sample_simplex(std::size_t components, std::size_t count, std::uint64_t seed) {
  if (count < 1) throw InvalidInput("count must be positive");
  std::vector<std::vector<double>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample_simplex_point(components, seed, i));
  return out;
}

struct VolumeEstimate {
  double fraction = 0;
  double stderr_ = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::size_t hits = 0;
};

// counts hits over indices [0, samples); chunks are summed in index order
inline VolumeEstimate monte_carlo_fraction(std::size_t samples, std::uint64_t seed, unsigned threads,
                                           const std::function<bool(std::uint64_t)>& hit) {
  threads = std::max(1u, threads);
  std::vector<std::size_t> counts(threads, 0);
  auto work = [&](unsigned w) {
    const std::size_t lo = samples * w / threads, hi = samples * (w + 1) / threads;
    std::size_t c = 0;
    for (std::size_t i = lo; i < hi; ++i) c += hit(i) ? 1 : 0;
    counts[w] = c;
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  VolumeEstimate v;
  for (auto c : counts) v.hits += c;
  v.samples = samples;
  v.seed = seed;
  v.fraction = static_cast<double>(v.hits) / static_cast<double>(samples);
  v.stderr_ = std::sqrt(v.fraction * (1 - v.fraction) / static_cast<double>(samples));
  return v;
}

inline VolumeEstimate accessible_volume_fraction(std::size_t n, std::size_t samples, std::uint64_t seed, unsigned threads = 1,
                                                 const SearchConfig& cfg = {}) {
  const Dimension dim(n);
  if (samples < 10000) throw InvalidInput("volume estimates need at least 10^4 samples");
  return monte_carlo_fraction(samples, seed, threads, [&](std::uint64_t i) {
    return decide_accessibility(WeylChannel(dim, sample_simplex_point(dim.sq(), seed, i)), cfg).accessible;
  });
}

// p = [p0, (1 - p0) phi] with phi flat on the remaining N^2 - 1 weights
inline VolumeEstimate fixed_p0_fraction(std::size_t n, double p0, std::size_t samples, std::uint64_t seed, unsigned threads = 1,
                                        const SearchConfig& cfg = {}) {
  const Dimension dim(n);
  if (!(p0 >= 0 && p0 <= 1)) throw InvalidInput("p0 must lie in [0, 1]");
  if (samples < 1) throw InvalidInput("samples must be positive");
  return monte_carlo_fraction(samples, seed, threads, [&](std::uint64_t i) {
    auto phi = sample_simplex_point(dim.sq() - 1, seed, i);
    std::vector<double> p{p0};
    for (double x : phi) p.push_back((1 - p0) * x);
    return decide_accessibility(WeylChannel(dim, p), cfg).accessible;
  });
}

// ---- cross sections -------------------------------------------------------

enum ScanTest : unsigned { ScanAccessible = 1, ScanHypocycloid = 2, ScanStar = 4, ScanEmbeddable = 8 };

struct ScanCell {
  std::array<double, 3> w;  // barycentric weights of the cell center
  double x, y;              // planar position
  unsigned flags;           // bits of ScanTest that passed
};

struct ScanGrid {
  std::array<WeylChannel, 3> face;
  std::size_t resolution;
  unsigned tests;
  std::vector<ScanCell> cells;
};

inline WeylChannel face_mix(const std::array<WeylChannel, 3>& face, const std::array<double, 3>& w) {
  std::vector<double> p(face[0].p.size(), 0.0);
  for (std::size_t v = 0; v < 3; ++v)
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += w[v] * face[v].p[i];
  return {face[0].dim, p};
}

// resolution^2 sub-triangles, each judged at its centroid
inline ScanGrid cross_section_scan(const std::array<WeylChannel, 3>& face, std::size_t resolution, unsigned tests,
                                   const SearchConfig& cfg = {}) {
  if (!(face[0].dim == face[1].dim && face[1].dim == face[2].dim)) throw ShapeMismatch("face vertices have mixed dimensions");
  if (resolution < 1) throw InvalidInput("resolution must be positive");
  ScanGrid g{face, resolution, tests, {}};
  const double r = static_cast<double>(resolution);
  auto add = [&](double u, double v) {
    ScanCell c;
    c.w = {std::max(0.0, 1 - u - v), u, v};
    const FacePoint fp{c.w[0], c.w[1], c.w[2]};
    const auto xy = fp.planar();
    c.x = xy[0];
    c.y = xy[1];
    c.flags = 0;
    const auto ch = face_mix(face, c.w);
    if ((tests & ScanAccessible) && decide_accessibility(ch, cfg).accessible) c.flags |= ScanAccessible;
    if ((tests & ScanHypocycloid) && hypocycloid_test(fp)) c.flags |= ScanHypocycloid;
    if ((tests & ScanStar) && david_star_test(fp)) c.flags |= ScanStar;
    if ((tests & ScanEmbeddable) && decide_embeddability(hyperdecohere_channel(ch), cfg).accessible) c.flags |= ScanEmbeddable;
    g.cells.push_back(c);
  };
  for (std::size_t i = 0; i < resolution; ++i)
    for (std::size_t j = 0; i + j < resolution; ++j) {
      add((i + 1.0 / 3) / r, (j + 1.0 / 3) / r);
      if (i + j + 2 <= resolution) add((i + 2.0 / 3) / r, (j + 2.0 / 3) / r);
    }
  return g;
}

// ---- spectra scatter ------------------------------------------------------

enum class Ensemble { Simplex, Face, Semigroup, Accessible };

struct EnsembleSpec {
  Ensemble kind = Ensemble::Simplex;
  std::size_t n = 3;
  std::array<std::vector<double>, 3> face{};  // vertices for Ensemble::Face
  double time_scale = 1.0;                    // mean time for Ensemble::Semigroup
  std::size_t max_draws = 100'000'000;        // rejection cap for Ensemble::Accessible
};

inline WeylChannel ensemble_channel(const EnsembleSpec& e, std::uint64_t seed, std::uint64_t index) {
  const Dimension dim(e.n);
  switch (e.kind) {
    case Ensemble::Simplex:
      return {dim, sample_simplex_point(dim.sq(), seed, index)};
    case Ensemble::Face: {
      const auto w = sample_simplex_point(3, seed, index);
      std::array<WeylChannel, 3> f{WeylChannel(dim, e.face[0]), WeylChannel(dim, e.face[1]), WeylChannel(dim, e.face[2])};
      return face_mix(f, {w[0], w[1], w[2]});
    }
    case Ensemble::Semigroup: {
      CounterStream rng(seed, index);
      std::vector<double> t(dim.sq(), 0.0);
      for (std::size_t mu = 1; mu < t.size(); ++mu) t[mu] = -e.time_scale * std::log1p(-rng.uniform());
      return channel_from_times(t, dim);
    }
    case Ensemble::Accessible:
      break;
  }
  throw InvalidInput("ensemble needs rejection sampling");
}

// all N^2 eigenvalues of each sampled channel, channels in index order
inline std::vector<cplx> spectra_scatter(const EnsembleSpec& e, std::size_t count, std::uint64_t seed, const SearchConfig& cfg = {}) {
  std::vector<cplx> out;
  auto emit = [&](const WeylChannel& ch) {
    const auto sp = spectrum_from_probabilities(ch);
    out.insert(out.end(), sp.lambda.begin(), sp.lambda.end());
  };
  if (e.kind != Ensemble::Accessible) {
    for (std::size_t i = 0; i < count; ++i) emit(ensemble_channel(e, seed, i));
    return out;
  }
  EnsembleSpec flat = e;
  flat.kind = Ensemble::Simplex;
  std::size_t got = 0;
  for (std::uint64_t i = 0; got < count; ++i) {
    if (i >= e.max_draws) throw Error("rejection sampling exceeded its draw cap");
    auto ch = ensemble_channel(flat, seed, i);
    if (decide_accessibility(ch, cfg).accessible) emit(ch), ++got;
  }
  return out;
}

}  // namespace weylsg
