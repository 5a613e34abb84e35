#pragma once

// Instantaneous eigenanalysis of the driven chain: spectra, the
// ground/first-excited gap and its minimum over the protocol, closed-form
// bound states of a single deep end well, and the adiabaticity ratio
// |<d/dt psi_g | psi_1>| / |eps_1 - eps_g|.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

#include "adiabatic_chain/chain_model.hpp"
#include "adiabatic_chain/state.hpp"
#include "adiabatic_chain/tridiagonal_eigensolver.hpp"

namespace adiabatic_chain {

struct SpectrumSample
{
  double t = 0.0;
  std::vector<double> eigenvalues;               ///< ascending
  std::vector<std::vector<double>> eigenvectors; ///< eigenvectors[k] pairs with eigenvalues[k]
  double gap = 0.0;                              ///< eigenvalues[1] - eigenvalues[0]

  const std::vector<double>& ground() const { return eigenvectors.at(0); }
  const std::vector<double>& first_excited() const { return eigenvectors.at(1); }
};

inline SpectrumSample eigensystem(const Tridiagonal& h, double t = 0.0)
{
  if (h.size() < 2)
    throw std::invalid_argument("eigensystem: matrix must be at least 2x2");
  TridiagonalEigensolver<double> solver;
  solver.compute(h.diagonal, h.off_diagonal, true);

  SpectrumSample out;
  out.t = t;
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors.reserve(h.size());
  for (std::size_t k = 0; k < h.size(); ++k)
    out.eigenvectors.push_back(solver.eigenvector(k));
  out.gap = out.eigenvalues[1] - out.eigenvalues[0];
  return out;
}

inline std::vector<double> eigenvalues_of(const Tridiagonal& h)
{
  TridiagonalEigensolver<double> solver;
  solver.compute(h.diagonal, h.off_diagonal, false);
  return solver.eigenvalues();
}

/// Open uniform chain without on-site terms: E_k = -2J cos(k pi / (N + 1)).
inline std::vector<double> uniform_chain_spectrum(int n_sites, double coupling)
{
  std::vector<double> e(static_cast<std::size_t>(n_sites));
  for (int k = 1; k <= n_sites; ++k)
    e[static_cast<std::size_t>(k - 1)] = -2.0 * coupling * std::cos(k * std::numbers::pi / (n_sites + 1));
  return e;
}

inline double uniform_chain_gap(int n_sites, double coupling)
{
  const double q = std::numbers::pi / (n_sites + 1);
  return 2.0 * coupling * (std::cos(q) - std::cos(2.0 * q));
}

inline double instantaneous_gap(const ChainSpec& spec, const PulseSchedule& schedule, double t)
{
  TridiagonalEigensolver<double> solver;
  const Tridiagonal h = hamiltonian_at(spec, schedule, t);
  solver.compute(h.diagonal, h.off_diagonal, false);
  const auto& ev = solver.eigenvalues();
  return ev[1] - ev[0];
}

struct GapMinimum
{
  double t_star = 0.0;
  double delta_min = 0.0;
};

/// Minimum of the gap over [0, tau]: a uniform grid scan followed by
/// golden-section refinement between the grid neighbours of the best point,
/// down to a bracket width of 1e-6 tau.
inline GapMinimum min_gap(const ChainSpec& spec, const PulseSchedule& schedule, int n_grid = 2001)
{
  schedule.validate();
  if (n_grid < 3)
    throw std::invalid_argument("min_gap: n_grid must be >= 3");

  TridiagonalEigensolver<double> solver;
  Tridiagonal h;
  auto gap = [&](double t) {
    hamiltonian_at(spec, schedule, t, h);
    solver.compute(h.diagonal, h.off_diagonal, false);
    const auto& ev = solver.eigenvalues();
    return ev[1] - ev[0];
  };

  const double tau = schedule.tau;
  const double step = tau / (n_grid - 1);
  int best = 0;
  double best_gap = gap(0.0);
  for (int i = 1; i < n_grid; ++i) {
    const double g = gap(i == n_grid - 1 ? tau : i * step);
    if (g < best_gap) {
      best_gap = g;
      best = i;
    }
  }

  double a = std::max(0, best - 1) * step;
  double b = std::min(n_grid - 1, best + 1) * step;
  GapMinimum result{best == n_grid - 1 ? tau : best * step, best_gap};

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = gap(c);
  double gd = gap(d);
  while (b - a > 1e-6 * tau) {
    if (gc < gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = gap(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = gap(d);
    }
  }
  const double t_mid = 0.5 * (a + b);
  const double g_mid = gap(t_mid);
  if (g_mid <= result.delta_min)
    result = {t_mid, g_mid};
  return result;
}

/// Ground state of a single deep well -mu0 on the first site (or, mirrored,
/// on the last): amplitudes sqrt(1 - z^2) z^(j-1) with z = J / mu0, the
/// semi-infinite-chain bound state. Renormalized over the N sites, which
/// changes the amplitudes at order z^(2N).
inline StateVector bound_state_ground(const ChainSpec& spec, double mu0, bool mirrored)
{
  const double j_coupling = spec.coupling_nominal();
  if (!(std::isfinite(mu0) && mu0 > j_coupling))
    throw std::invalid_argument("bound_state_ground: requires mu0 > J");
  const double zeta = j_coupling / mu0;
  const double head = std::sqrt(1.0 - zeta * zeta);

  const auto n = static_cast<std::size_t>(spec.n_sites());
  std::vector<double> amp(n);
  double power = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    amp[mirrored ? n - 1 - j : j] = head * power;
    power *= zeta;
  }
  StateVector psi = StateVector::from_real(amp);
  psi.normalize();
  return psi;
}

/// |<d/dt psi_g(t) | psi_1(t)>| / |eps_g(t) - eps_1(t)| with the derivative
/// taken by central differences. The ground vectors at t +- fd_step are
/// sign-aligned with the one at t before differencing.
inline double adiabaticity_ratio(const ChainSpec& spec, const PulseSchedule& schedule, double t, double fd_step)
{
  schedule.validate();
  if (!(fd_step > 0.0))
    throw std::invalid_argument("adiabaticity_ratio: fd_step must be > 0");

  const SpectrumSample centre = eigensystem(hamiltonian_at(spec, schedule, t), t);
  if (centre.gap < 1e-12)
    throw std::domain_error("adiabaticity_ratio: gap below 1e-12, ratio undefined");

  const auto& g0 = centre.ground();
  auto aligned_ground = [&](double ts) {
    std::vector<double> g = eigensystem(hamiltonian_at(spec, schedule, ts), ts).ground();
    double overlap = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      overlap += g[i] * g0[i];
    if (overlap < 0.0)
      for (double& x : g)
        x = -x;
    return g;
  };
  const std::vector<double> plus = aligned_ground(t + fd_step);
  const std::vector<double> minus = aligned_ground(t - fd_step);

  const auto& e1 = centre.first_excited();
  double coupling = 0.0;
  for (std::size_t i = 0; i < e1.size(); ++i)
    coupling += (plus[i] - minus[i]) / (2.0 * fd_step) * e1[i];
  return std::abs(coupling) / centre.gap;
}

inline double adiabaticity_ratio(const ChainSpec& spec, const PulseSchedule& schedule, double t)
{
  return adiabaticity_ratio(spec, schedule, t, schedule.tau / 1e5);
}

/// Largest adiabaticity ratio over `n_points` interior points of (0, tau).
inline double max_adiabaticity_ratio(const ChainSpec& spec, const PulseSchedule& schedule, int n_points = 401)
{
  double worst = 0.0;
  for (int i = 1; i <= n_points; ++i) {
    const double t = schedule.tau * i / (n_points + 1);
    worst = std::max(worst, adiabaticity_ratio(spec, schedule, t));
  }
  return worst;
}

} // namespace adiabatic_chain
