#pragma once

// Time-dependent Schrodinger equation i d/dt |psi> = H(t) |psi> (hbar = 1),
// stepped with the exponential midpoint rule
//
//   psi(t + dt) = exp(-i H(t + dt/2) dt) psi(t),
//
// where each exponential is applied exactly through the eigendecomposition
// of the tridiagonal H. Every step is unitary to rounding; the global error
// in the time dependence is O(dt^2).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "adiabatic_chain/chain_model.hpp"
#include "adiabatic_chain/state.hpp"
#include "adiabatic_chain/tridiagonal_eigensolver.hpp"

namespace adiabatic_chain {

struct Trajectory
{
  std::vector<double> times;
  std::vector<std::vector<double>> populations; ///< populations[row][site]
  StateVector final_state;
  double fidelity = 0.0;       ///< |c_N(tau)|^2
  double max_norm_error = 0.0; ///< max over every step of | ||psi||^2 - 1 |
  int n_steps = 0;
};

/// max(20000, ceil(50 tau mu_peak)): keeps dt * ||H|| at or below 1/50.
inline int default_step_count(const PulseSchedule& schedule)
{
  const double by_scale = std::ceil(50.0 * schedule.tau * schedule.peak());
  return static_cast<int>(std::max(20000.0, std::min(by_scale, 2.0e9)));
}

/// Step stride that records about 1000 rows.
inline int default_record_every(int n_steps) { return std::max(1, n_steps / 1000); }

namespace detail {

class MidpointStepper
{
public:
  explicit MidpointStepper(std::size_t n)
    : n_(n)
    , rotated_(n)
  {
  }

  void apply(const Tridiagonal& h, double dt, std::vector<Complex>& psi)
  {
    solver_.compute(h.diagonal, h.off_diagonal, true);
    const auto& w = solver_.eigenvalues();
    const auto& v = solver_.vectors();
    for (std::size_t k = 0; k < n_; ++k) {
      Complex acc(0.0, 0.0);
      for (std::size_t i = 0; i < n_; ++i)
        acc += v[i * n_ + k] * psi[i];
      rotated_[k] = acc * std::polar(1.0, -w[k] * dt);
    }
    for (std::size_t i = 0; i < n_; ++i) {
      Complex acc(0.0, 0.0);
      const double* row = &v[i * n_];
      for (std::size_t k = 0; k < n_; ++k)
        acc += row[k] * rotated_[k];
      psi[i] = acc;
    }
  }

private:
  std::size_t n_;
  TridiagonalEigensolver<double> solver_;
  std::vector<Complex> rotated_;
};

inline double norm_squared(const std::vector<Complex>& psi)
{
  double s = 0.0;
  for (const auto& c : psi)
    s += std::norm(c);
  return s;
}

} // namespace detail

/// Generic driver. `fill_hamiltonian(t, Tridiagonal&)` must write H(t) for
/// an n_sites chain. Rows are recorded at step 0, every `record_every`
/// steps, and always at the final step.
template <typename HamiltonianFn>
Trajectory evolve_with(HamiltonianFn&& fill_hamiltonian, double tau, StateVector initial, int n_steps, int record_every)
{
  if (n_steps < 1)
    throw std::invalid_argument("evolve: n_steps must be >= 1");
  if (record_every < 1)
    throw std::invalid_argument("evolve: record_every must be >= 1");
  if (!(std::isfinite(tau) && tau > 0.0))
    throw std::invalid_argument("evolve: tau must be finite and > 0");
  if (initial.size() < 2)
    throw std::invalid_argument("evolve: state must have at least two sites");
  if (std::abs(initial.norm_squared() - 1.0) > 1e-6)
    throw std::invalid_argument("evolve: initial state is not normalized");

  const std::size_t n = initial.size();
  std::vector<Complex> psi = std::move(initial.amplitudes());
  const double dt = tau / n_steps;

  Trajectory out;
  out.n_steps = n_steps;
  const std::size_t rows = static_cast<std::size_t>(n_steps / record_every) + 2;
  out.times.reserve(rows);
  out.populations.reserve(rows);
  auto record = [&](double t) {
    out.times.push_back(t);
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i)
      p[i] = std::norm(psi[i]);
    out.populations.push_back(std::move(p));
  };
  record(0.0);
  out.max_norm_error = std::abs(detail::norm_squared(psi) - 1.0);

  detail::MidpointStepper stepper(n);
  Tridiagonal h;
  for (int step = 0; step < n_steps; ++step) {
    fill_hamiltonian((step + 0.5) * dt, h);
    if (h.size() != n)
      throw std::logic_error("evolve: Hamiltonian dimension does not match the state");
    stepper.apply(h, dt, psi);
    out.max_norm_error = std::max(out.max_norm_error, std::abs(detail::norm_squared(psi) - 1.0));
    const int done = step + 1;
    if (done == n_steps)
      record(tau);
    else if (done % record_every == 0)
      record(done * dt);
  }

  out.final_state = StateVector(std::move(psi));
  out.fidelity = out.populations.back().back();
  return out;
}

inline Trajectory
evolve(const ChainSpec& spec, const PulseSchedule& schedule, const StateVector& initial, int n_steps, int record_every)
{
  schedule.validate();
  if (initial.size() != static_cast<std::size_t>(spec.n_sites()))
    throw std::invalid_argument("evolve: initial state dimension differs from n_sites");
  return evolve_with([&](double t, Tridiagonal& h) { hamiltonian_at(spec, schedule, t, h); },
                     schedule.tau,
                     initial,
                     n_steps,
                     record_every);
}

/// Defaults: n_steps from default_step_count, ~1000 recorded rows.
inline Trajectory evolve(const ChainSpec& spec, const PulseSchedule& schedule, const StateVector& initial)
{
  const int n_steps = default_step_count(schedule);
  return evolve(spec, schedule, initial, n_steps, default_record_every(n_steps));
}

/// Transfer fidelity |c_N(tau)|^2 from the start site |1>, recording only
/// the endpoints.
inline double transfer_fidelity(const ChainSpec& spec, const PulseSchedule& schedule, int n_steps)
{
  return evolve(spec, schedule, StateVector::site(spec.n_sites(), 0), n_steps, n_steps).fidelity;
}

inline double fidelity_of(const Trajectory& trajectory)
{
  if (trajectory.final_state.size() == 0)
    throw std::invalid_argument("fidelity_of: empty trajectory");
  return trajectory.final_state.population(trajectory.final_state.size() - 1);
}

/// |F(n_steps) - F(2 n_steps)|.
inline double
convergence_check(const ChainSpec& spec, const PulseSchedule& schedule, const StateVector& initial, int n_steps)
{
  const double coarse = evolve(spec, schedule, initial, n_steps, n_steps).fidelity;
  const double fine = evolve(spec, schedule, initial, 2 * n_steps, 2 * n_steps).fidelity;
  return std::abs(coarse - fine);
}

} // namespace adiabatic_chain
