#pragma once

// Sweep harnesses over the chain model: gap scaling with chain length and
// pulse width, fidelity sweeps, minimum transfer time, peak-voltage grids
// and quenched-disorder ensembles. Every harness returns SweepResult tables
// whose rows follow the input grid order regardless of thread scheduling.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "adiabatic_chain/chain_model.hpp"
#include "adiabatic_chain/fitting.hpp"
#include "adiabatic_chain/parallel.hpp"
#include "adiabatic_chain/propagator.hpp"
#include "adiabatic_chain/spectral.hpp"
#include "adiabatic_chain/sweep_result.hpp"

namespace adiabatic_chain {

namespace detail {

inline void require(bool ok, const char* message)
{
  if (!ok)
    throw std::invalid_argument(message);
}

inline int steps_or_default(int n_steps, const PulseSchedule& schedule)
{
  return n_steps > 0 ? n_steps : default_step_count(schedule);
}

inline std::vector<double> to_row(std::initializer_list<double> values) { return std::vector<double>(values); }

} // namespace detail

/// Instantaneous levels through the protocol: t, pulses, ground and first
/// excited energies, gap.
inline SweepResult spectrum_trace(const ChainSpec& spec, const PulseSchedule& schedule, int n_points = 501)
{
  schedule.validate();
  detail::require(n_points >= 2, "spectrum_trace: n_points must be >= 2");

  SweepResult out;
  out.name = "spectrum_trace";
  out.columns = {"t", "t_over_tau", "mu_a", "mu_b", "eps_g", "eps_1", "gap"};
  out.meta("n_sites", spec.n_sites());
  out.meta("coupling", spec.coupling_nominal());
  out.meta("mu_a_max", schedule.mu_a_max);
  out.meta("mu_b_max", schedule.mu_b_max);
  out.meta("alpha_over_tau", schedule.alpha_over_tau());
  out.meta("tau", schedule.tau);
  out.meta("n_points", n_points);

  out.rows.resize(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    const double t = i == n_points - 1 ? schedule.tau : schedule.tau * i / (n_points - 1);
    const auto ev = eigenvalues_of(hamiltonian_at(spec, schedule, t));
    out.rows[static_cast<std::size_t>(i)] = detail::to_row(
      {t, t / schedule.tau, pulse_a(schedule, t), pulse_b(schedule, t), ev[0], ev[1], ev[1] - ev[0]});
  }
  return out;
}

struct GapScaling
{
  SweepResult table; ///< mu0, n_sites, inv_n_squared, t_star, delta_min
  SweepResult fits;  ///< per mu0: OLS line and proportional fit of delta_min vs 1/N^2
};

inline GapScaling gap_vs_n(const std::vector<double>& mu0_list,
                           const std::vector<int>& n_list,
                           double alpha_over_tau,
                           double tau,
                           double coupling = 1.0,
                           int n_grid = 2001)
{
  detail::require(!mu0_list.empty() && !n_list.empty(), "gap_vs_n: empty grid");
  for (int n : n_list)
    detail::require(n >= 3, "gap_vs_n: every N must be >= 3");
  for (double mu0 : mu0_list)
    detail::require(mu0 > coupling, "gap_vs_n: every mu0 must exceed J");

  GapScaling out;
  out.table.name = "gap_vs_n";
  out.table.columns = {"mu0", "n_sites", "inv_n_squared", "t_star", "delta_min"};
  for (auto* r : {&out.table, &out.fits}) {
    r->meta("mu0_list", format_list(mu0_list));
    r->meta("n_list", format_list(n_list));
    r->meta("alpha_over_tau", alpha_over_tau);
    r->meta("tau", tau);
    r->meta("coupling", coupling);
    r->meta("n_grid", n_grid);
  }

  const std::size_t cells = mu0_list.size() * n_list.size();
  out.table.rows.resize(cells);
  parallel_for(cells, [&](std::size_t cell) {
    const double mu0 = mu0_list[cell / n_list.size()];
    const int n = n_list[cell % n_list.size()];
    const auto g = min_gap(ChainSpec::uniform(n, coupling), PulseSchedule::symmetric(mu0, alpha_over_tau, tau), n_grid);
    out.table.rows[cell] = detail::to_row({mu0, double(n), 1.0 / (double(n) * n), g.t_star, g.delta_min});
  });

  out.fits.name = "gap_vs_n_fits";
  out.fits.columns = {"mu0", "slope", "intercept", "r_squared", "proportional_slope", "proportional_r_squared"};
  for (std::size_t m = 0; m < mu0_list.size(); ++m) {
    std::vector<Point> pts;
    for (std::size_t k = 0; k < n_list.size(); ++k) {
      const auto& row = out.table.rows[m * n_list.size() + k];
      pts.push_back({row[2], row[4]});
    }
    LinearFit line{};
    if (detail::distinct_x(pts) >= 2)
      line = fit_line(pts);
    const LinearFit prop = fit_proportional(pts);
    out.fits.rows.push_back(
      detail::to_row({mu0_list[m], line.slope, line.intercept, line.r_squared, prop.slope, prop.r_squared}));
  }
  return out;
}

/// Minimum gap per pulse width, plus the gap of H(tau/2). The two agree
/// while the pulses overlap; once they separate (alpha * tau >~ 6 at N=5)
/// the global minimum moves to a single-pulse dip away from tau/2. The
/// alpha * tau grid must reach down to 2 and up to 10.
inline SweepResult gap_vs_alpha(const ChainSpec& spec,
                                double mu0,
                                const std::vector<double>& alpha_over_tau_list,
                                double tau,
                                int n_grid = 2001)
{
  detail::require(!alpha_over_tau_list.empty(), "gap_vs_alpha: empty grid");
  const auto [lo, hi] = std::minmax_element(alpha_over_tau_list.begin(), alpha_over_tau_list.end());
  detail::require(*lo <= 2.0 && *hi >= 10.0, "gap_vs_alpha: alpha*tau grid must span at least [2, 10]");

  SweepResult out;
  out.name = "gap_vs_alpha";
  out.columns = {"alpha_over_tau", "alpha", "t_star", "delta_min", "delta_mid", "uniform_chain_gap"};
  out.meta("n_sites", spec.n_sites());
  out.meta("coupling", spec.coupling_nominal());
  out.meta("mu0", mu0);
  out.meta("tau", tau);
  out.meta("alpha_over_tau_list", format_list(alpha_over_tau_list));
  out.meta("n_grid", n_grid);

  const double plateau = uniform_chain_gap(spec.n_sites(), spec.coupling_nominal());
  out.rows.resize(alpha_over_tau_list.size());
  parallel_for(alpha_over_tau_list.size(), [&](std::size_t i) {
    const double k = alpha_over_tau_list[i];
    const auto schedule = PulseSchedule::symmetric(mu0, k, tau);
    const auto g = min_gap(spec, schedule, n_grid);
    const double mid = instantaneous_gap(spec, schedule, 0.5 * tau);
    out.rows[i] = detail::to_row({k, k / tau, g.t_star, g.delta_min, mid, plateau});
  });
  return out;
}

/// Evolution from |1> with rows recorded for plotting.
inline Trajectory population_trace(const ChainSpec& spec, const PulseSchedule& schedule, int n_steps = 0)
{
  const int steps = detail::steps_or_default(n_steps, schedule);
  return evolve(spec, schedule, StateVector::site(spec.n_sites(), 0), steps, default_record_every(steps));
}

/// Transfer fidelity per alpha * tau; the grid must cover [3, 7].
inline SweepResult fidelity_vs_alpha(const ChainSpec& spec,
                                     double mu0,
                                     double tau,
                                     const std::vector<double>& alpha_over_tau_list,
                                     int n_steps = 0)
{
  detail::require(!alpha_over_tau_list.empty(), "fidelity_vs_alpha: empty grid");
  const auto [lo, hi] = std::minmax_element(alpha_over_tau_list.begin(), alpha_over_tau_list.end());
  detail::require(*lo <= 3.0 && *hi >= 7.0, "fidelity_vs_alpha: alpha*tau grid must span at least [3, 7]");

  SweepResult out;
  out.name = "fidelity_vs_alpha";
  out.columns = {"alpha_over_tau", "fidelity", "max_norm_error", "n_steps"};
  out.meta("n_sites", spec.n_sites());
  out.meta("coupling", spec.coupling_nominal());
  out.meta("mu0", mu0);
  out.meta("tau", tau);
  out.meta("alpha_over_tau_list", format_list(alpha_over_tau_list));
  out.meta("n_steps", n_steps > 0 ? std::to_string(n_steps) : std::string("default"));

  out.rows.resize(alpha_over_tau_list.size());
  parallel_for(alpha_over_tau_list.size(), [&](std::size_t i) {
    const auto schedule = PulseSchedule::symmetric(mu0, alpha_over_tau_list[i], tau);
    const int steps = detail::steps_or_default(n_steps, schedule);
    const auto tr = evolve(spec, schedule, StateVector::site(spec.n_sites(), 0), steps, steps);
    out.rows[i] = detail::to_row({alpha_over_tau_list[i], tr.fidelity, tr.max_norm_error, double(steps)});
  });
  return out;
}

class TargetUnreachable : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct TimeSearchOptions
{
  double target = 0.995;
  double coupling = 1.0;
  double tau_start = 10.0;
  /// Bracket growth factor. F(tau) ripples around its adiabatic limit, so
  /// a coarse factor (e.g. 2) can jump past the first crossing.
  double growth = 1.05;
  double rel_tol = 0.01;
  double tau_cap = 1e6;
  /// Search runs use n = max(min_steps, ceil(steps_per_unit_time * tau)).
  double steps_per_unit_time = 20.0;
  int min_steps = 2000;
};

struct MinTimeResult
{
  SweepResult table; ///< n_sites, tau_min, bracket_low, fidelity, convergence_delta, n_steps
  QuadraticFit fit;  ///< tau_min against N
};

namespace detail {

inline int search_steps(const TimeSearchOptions& opt, double tau)
{
  return std::max(opt.min_steps, static_cast<int>(std::ceil(opt.steps_per_unit_time * tau)));
}

struct TimeSearchCell
{
  double tau_min;
  double bracket_low;
  double fidelity;
  double convergence_delta;
  int n_steps;
};

inline TimeSearchCell find_min_time(const ChainSpec& spec, double mu0, double alpha_over_tau, const TimeSearchOptions& opt)
{
  auto fidelity = [&](double tau) {
    return transfer_fidelity(spec, PulseSchedule::symmetric(mu0, alpha_over_tau, tau), search_steps(opt, tau));
  };

  double lo = 0.0;
  double hi = opt.tau_start;
  double f_hi = fidelity(hi);
  while (f_hi < opt.target) {
    lo = hi;
    hi *= opt.growth;
    if (hi > opt.tau_cap)
      throw TargetUnreachable("min_time_for_fidelity: no tau <= " + format_number(opt.tau_cap) + " reaches F >= "
                              + format_number(opt.target) + " at N=" + std::to_string(spec.n_sites()));
    f_hi = fidelity(hi);
  }
  while (hi - lo > opt.rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = fidelity(mid);
    if (f_mid >= opt.target) {
      hi = mid;
      f_hi = f_mid;
    } else {
      lo = mid;
    }
  }

  const int steps = search_steps(opt, hi);
  const auto schedule = PulseSchedule::symmetric(mu0, alpha_over_tau, hi);
  const double delta = convergence_check(spec, schedule, StateVector::site(spec.n_sites(), 0), steps);
  return {hi, lo, f_hi, delta, steps};
}

} // namespace detail

/// Smallest tau reaching the target fidelity for each N (growth bracket,
/// then bisection to rel_tol), and a quadratic fit of tau_min(N). Because
/// F(tau) is not monotone, the result is the first crossing seen by the
/// bracket and so an upper bound on the true minimum at that resolution.
inline MinTimeResult min_time_for_fidelity(const std::vector<int>& n_list,
                                           double mu0,
                                           double alpha_over_tau,
                                           const TimeSearchOptions& opt = {})
{
  detail::require(!n_list.empty(), "min_time_for_fidelity: empty N list");
  detail::require(opt.target > 0.0 && opt.target < 1.0, "min_time_for_fidelity: target must lie in (0, 1)");
  detail::require(opt.growth > 1.0 && opt.tau_start > 0.0 && opt.rel_tol > 0.0,
                  "min_time_for_fidelity: invalid search options");
  for (int n : n_list)
    detail::require(n >= 2, "min_time_for_fidelity: every N must be >= 2");

  MinTimeResult out;
  out.table.name = "min_time_for_fidelity";
  out.table.columns = {"n_sites", "tau_min", "bracket_low", "fidelity", "convergence_delta", "n_steps"};
  out.table.meta("n_list", format_list(n_list));
  out.table.meta("mu0", mu0);
  out.table.meta("alpha_over_tau", alpha_over_tau);
  out.table.meta("coupling", opt.coupling);
  out.table.meta("target", opt.target);
  out.table.meta("tau_start", opt.tau_start);
  out.table.meta("growth", opt.growth);
  out.table.meta("rel_tol", opt.rel_tol);
  out.table.meta("tau_cap", opt.tau_cap);
  out.table.meta("steps_per_unit_time", opt.steps_per_unit_time);
  out.table.meta("min_steps", opt.min_steps);

  out.table.rows.resize(n_list.size());
  parallel_for(n_list.size(), [&](std::size_t i) {
    const auto cell = detail::find_min_time(ChainSpec::uniform(n_list[i], opt.coupling), mu0, alpha_over_tau, opt);
    out.table.rows[i] = detail::to_row(
      {double(n_list[i]), cell.tau_min, cell.bracket_low, cell.fidelity, cell.convergence_delta, double(cell.n_steps)});
  });

  std::vector<Point> pts;
  for (const auto& r : out.table.rows)
    pts.push_back({r[0], r[1]});
  if (detail::distinct_x(pts) >= 3)
    out.fit = fit_quadratic(pts);
  return out;
}

/// Fidelity over the (mu_A,max, mu_B,max) grid, mu_a outer and mu_b inner.
inline SweepResult fidelity_grid(const ChainSpec& spec,
                                 const std::vector<double>& mu_a_list,
                                 const std::vector<double>& mu_b_list,
                                 double tau,
                                 double alpha_over_tau,
                                 int n_steps = 0)
{
  detail::require(!mu_a_list.empty() && !mu_b_list.empty(), "fidelity_grid: empty grid");
  const double j = spec.coupling_nominal();
  for (const auto* list : {&mu_a_list, &mu_b_list})
    for (double mu : *list)
      detail::require(mu >= 10.0 * j && mu <= 25.0 * j, "fidelity_grid: peaks must lie within [10 J, 25 J]");

  SweepResult out;
  out.name = "fidelity_grid";
  out.columns = {"mu_a_max", "mu_b_max", "fidelity", "max_norm_error", "n_steps"};
  out.meta("n_sites", spec.n_sites());
  out.meta("coupling", j);
  out.meta("mu_a_list", format_list(mu_a_list));
  out.meta("mu_b_list", format_list(mu_b_list));
  out.meta("tau", tau);
  out.meta("alpha_over_tau", alpha_over_tau);
  out.meta("n_steps", n_steps > 0 ? std::to_string(n_steps) : std::string("default"));

  const std::size_t cells = mu_a_list.size() * mu_b_list.size();
  out.rows.resize(cells);
  parallel_for(cells, [&](std::size_t cell) {
    const double ma = mu_a_list[cell / mu_b_list.size()];
    const double mb = mu_b_list[cell % mu_b_list.size()];
    const PulseSchedule schedule{ma, mb, alpha_over_tau / tau, tau};
    const int steps = detail::steps_or_default(n_steps, schedule);
    const auto tr = evolve(spec, schedule, StateVector::site(spec.n_sites(), 0), steps, steps);
    out.rows[cell] = detail::to_row({ma, mb, tr.fidelity, tr.max_norm_error, double(steps)});
  });
  return out;
}

struct DisorderEnsemble
{
  SweepResult samples; ///< delta, sample, fidelity, min_bond, max_bond, max_norm_error
  SweepResult summary; ///< delta, n_samples, min_fidelity, mean_fidelity, max_fidelity
};

/// Fidelity ensembles under quenched bond disorder. Sample k draws the same
/// eps_j for every delta (stream keyed by (seed, k) only), so the deltas
/// are compared on common random numbers.
inline DisorderEnsemble disorder_ensemble(const ChainSpec& spec,
                                          const PulseSchedule& schedule,
                                          const std::vector<double>& delta_list,
                                          int n_samples,
                                          std::uint64_t seed,
                                          int n_steps = 0)
{
  schedule.validate();
  detail::require(!delta_list.empty(), "disorder_ensemble: empty delta list");
  detail::require(n_samples >= 1, "disorder_ensemble: n_samples must be >= 1");
  for (double d : delta_list)
    DisorderSpec{d, seed, n_samples}.validate();

  const int steps = detail::steps_or_default(n_steps, schedule);
  DisorderEnsemble out;
  out.samples.name = "disorder_ensemble";
  out.samples.columns = {"delta", "sample", "fidelity", "min_bond", "max_bond", "max_norm_error"};
  out.summary.name = "disorder_summary";
  out.summary.columns = {"delta", "n_samples", "min_fidelity", "mean_fidelity", "max_fidelity"};
  for (auto* r : {&out.samples, &out.summary}) {
    r->meta("n_sites", spec.n_sites());
    r->meta("coupling", spec.coupling_nominal());
    r->meta("mu_a_max", schedule.mu_a_max);
    r->meta("mu_b_max", schedule.mu_b_max);
    r->meta("alpha_over_tau", schedule.alpha_over_tau());
    r->meta("tau", schedule.tau);
    r->meta("delta_list", format_list(delta_list));
    r->meta("n_samples", n_samples);
    r->meta("seed", seed);
    r->meta("n_steps", steps);
  }

  const auto per_delta = static_cast<std::size_t>(n_samples);
  const std::size_t cells = delta_list.size() * per_delta;
  out.samples.rows.resize(cells);
  parallel_for(cells, [&](std::size_t cell) {
    const double delta = delta_list[cell / per_delta];
    const int sample = static_cast<int>(cell % per_delta);
    const auto bonds = sample_disordered_couplings(spec, DisorderSpec{delta, seed, n_samples}, sample);
    const auto chain = ChainSpec::with_bonds(spec.coupling_nominal(), bonds);
    const auto tr = evolve(chain, schedule, StateVector::site(chain.n_sites(), 0), steps, steps);
    out.samples.rows[cell] = detail::to_row({delta,
                                             double(sample),
                                             tr.fidelity,
                                             *std::min_element(bonds.begin(), bonds.end()),
                                             *std::max_element(bonds.begin(), bonds.end()),
                                             tr.max_norm_error});
  });

  for (std::size_t d = 0; d < delta_list.size(); ++d) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
    for (std::size_t k = 0; k < per_delta; ++k) {
      const double f = out.samples.rows[d * per_delta + k][2];
      lo = std::min(lo, f);
      hi = std::max(hi, f);
      sum += f;
    }
    out.summary.rows.push_back(detail::to_row({delta_list[d], double(n_samples), lo, sum / n_samples, hi}));
  }
  return out;
}

} // namespace adiabatic_chain
