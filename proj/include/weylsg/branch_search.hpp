// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"

namespace weylsg {

enum class Reason { OK, NegativeTime, SingularSpectrum, NonReal, BudgetExhausted };

inline std::string to_string(Reason r) {
  switch (r) {
    case Reason::OK: return "OK";
    case Reason::NegativeTime: return "NegativeTime";
    case Reason::SingularSpectrum: return "SingularSpectrum";
    case Reason::NonReal: return "NonReal";
    case Reason::BudgetExhausted: return "BudgetExhausted";
  }
  return "?";
}

struct AccessibilityVerdict {
  bool accessible = false;
  Reason reason = Reason::NegativeTime;
  std::optional<std::vector<double>> times;
  std::optional<std::vector<long long>> branch;
  double residual = 0;  // reconstruction error of the witness, 0 when absent
};

namespace detail {

// Shared machinery for the quantum (H, 1/N^2) and classical (F^dagger, 1/N) problems.
// t_mu = scale * sum_{nu>=1} A(mu,nu) (L_nu + 2 pi i M_nu), for mu >= 1.
// A(mu, partner(nu)) = conj A(mu, nu) is assumed, which is what makes
// conjugate-symmetric branch choices produce real times.
struct LogProblem {
  std::size_t size = 0;
  std::vector<std::size_t> partner;
  std::vector<cplx> a;  // size x size, row-major
  double scale = 1;

  cplx at(std::size_t mu, std::size_t nu) const { return a[mu * size + nu]; }

  // principal logs with conjugate pairing; the smaller index of a pair owns the phase
  std::vector<cplx> logs(const std::vector<cplx>& lam, const ToleranceConfig& tol) const {
    if (lam.size() != size) throw ShapeMismatch("spectrum has wrong length");
    std::vector<cplx> out(size);
    for (std::size_t nu = 0; nu < size; ++nu)
      if (std::abs(lam[nu]) <= tol.zero) throw SingularSpectrum("eigenvalue with vanishing modulus");
    for (std::size_t nu = 0; nu < size; ++nu) {
      const std::size_t pn = partner[nu];
      if (pn < nu) continue;
      const cplx z = lam[nu];
      if (std::abs(lam[pn] - std::conj(z)) > 1e-8 * std::max(1.0, std::abs(z)))
        throw NonPhysicalSpectrum("spectrum is not conjugation symmetric");
      double theta = std::arg(z);
      if (z.real() < 0 && std::abs(z.imag()) <= 1e-14) theta = std::numbers::pi;
      out[nu] = {std::log(std::abs(z)), theta};
      if (pn != nu) out[pn] = std::conj(out[nu]);
    }
    return out;
  }

  std::vector<double> times(const std::vector<cplx>& logs, const std::vector<long long>& m, const ToleranceConfig& tol) const {
    if (m.size() != size) throw ShapeMismatch("branch vector has wrong length");
    std::vector<double> t(size, 0.0);
    for (std::size_t mu = 1; mu < size; ++mu) {
      cplx acc = 0;
      for (std::size_t nu = 1; nu < size; ++nu)
        acc += at(mu, nu) * (logs[nu] + cplx(0, 2 * std::numbers::pi * static_cast<double>(m[nu])));
      acc *= scale;
      if (std::abs(acc.imag()) > tol.imag) throw NonReal("interaction time has an imaginary part");
      t[mu] = acc.real();
    }
    return t;
  }

  void check_branch(const std::vector<long long>& m) const {
    if (m.size() != size) throw ShapeMismatch("branch vector has wrong length");
    if (m[0] != 0) throw InvalidInput("branch at the identity index must be zero");
    for (std::size_t nu = 0; nu < size; ++nu)
      if (m[partner[nu]] != -m[nu]) throw InvalidInput("branch is not antisymmetric under conjugation");
  }
};

struct SearchOutcome {
  Reason reason = Reason::NegativeTime;
  std::vector<double> t;
  std::vector<long long> m;
};

// values tried per pair: 0, 1, -1, 2, -2, ...
inline std::vector<long long> branch_values(int m_max) {
  std::vector<long long> v{0};
  for (long long k = 1; k <= m_max; ++k) v.push_back(k), v.push_back(-k);
  return v;
}

inline SearchOutcome search_branches(const LogProblem& pb, const std::vector<cplx>& lam, const SearchConfig& cfg) {
  SearchOutcome out;
  std::vector<cplx> logs;
  try {
    logs = pb.logs(lam, cfg.tol);
  } catch (const SingularSpectrum&) {
    out.reason = Reason::SingularSpectrum;
    return out;
  }
  const std::size_t k = pb.size;
  // a negative eigenvalue on a self-conjugate index has no conjugate partner to cancel i*pi
  for (std::size_t nu = 1; nu < k; ++nu)
    if (pb.partner[nu] == nu && lam[nu].real() < 0) {
      out.reason = Reason::NonReal;
      return out;
    }
  std::vector<long long> m(k, 0);
  std::vector<double> t0;
  try {
    t0 = pb.times(logs, m, cfg.tol);
  } catch (const NonReal&) {
    out.reason = Reason::NonReal;
    return out;
  }
  const double eps = cfg.tol.slack;
  auto feasible = [&](const std::vector<double>& t) {
    for (std::size_t mu = 1; mu < k; ++mu)
      if (t[mu] < -eps) return false;
    return true;
  };
  if (feasible(t0)) {
    out.reason = Reason::OK;
    out.t = t0;
    out.m = m;
    return out;
  }
  // t_mu + t_partner does not depend on the branch
  for (std::size_t mu = 1; mu < k; ++mu)
    if (t0[mu] + t0[pb.partner[mu]] < -2 * eps) return out;

  std::vector<std::size_t> pairs;
  for (std::size_t nu = 1; nu < k; ++nu)
    if (pb.partner[nu] > nu) pairs.push_back(nu);
  const std::size_t np = pairs.size();
  // per unit of M on pair j, t_mu moves by g[j][mu]
  std::vector<std::vector<double>> g(np, std::vector<double>(k, 0.0));
  for (std::size_t j = 0; j < np; ++j)
    for (std::size_t mu = 1; mu < k; ++mu) g[j][mu] = -4 * std::numbers::pi * pb.scale * pb.at(mu, pairs[j]).imag();
  // largest possible gain from pairs j.. onwards
  std::vector<std::vector<double>> reach(np + 1, std::vector<double>(k, 0.0));
  for (std::size_t j = np; j-- > 0;)
    for (std::size_t mu = 1; mu < k; ++mu) reach[j][mu] = reach[j + 1][mu] + cfg.m_max * std::abs(g[j][mu]);

  const auto values = branch_values(cfg.m_max);
  std::vector<long long> choice(np, 0);
  long long nodes = 0;
  bool exhausted = false, found = false;
  std::vector<double> cur = t0;

  auto dfs = [&](auto&& self, std::size_t j) -> void {
    if (found || exhausted) return;
    if (++nodes > cfg.max_nodes) {
      exhausted = true;
      return;
    }
    for (std::size_t mu = 1; mu < k; ++mu)
      if (cur[mu] + reach[j][mu] < -eps) return;
    if (j == np) {
      found = feasible(cur);
      return;
    }
    for (long long v : values) {
      for (std::size_t mu = 1; mu < k; ++mu) cur[mu] += static_cast<double>(v) * g[j][mu];
      choice[j] = v;
      self(self, j + 1);
      for (std::size_t mu = 1; mu < k; ++mu) cur[mu] -= static_cast<double>(v) * g[j][mu];
      if (found || exhausted) return;
    }
    choice[j] = 0;
  };
  dfs(dfs, 0);

  if (found) {
    for (std::size_t j = 0; j < np; ++j) {
      m[pairs[j]] = choice[j];
      m[pb.partner[pairs[j]]] = -choice[j];
    }
    out.reason = Reason::OK;
    out.m = m;
    out.t = pb.times(logs, m, cfg.tol);
    return out;
  }
  out.reason = exhausted ? Reason::BudgetExhausted : Reason::NegativeTime;
  return out;
}

}  // namespace detail
}  // namespace weylsg
