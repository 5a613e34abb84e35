#pragma once

// Tight-binding chain with Gaussian gate pulses on the two end sites.
//
//   H(t) = -sum_j J_j (|j><j+1| + h.c.) + mu_A(t)|1><1| + mu_B(t)|N><N|
//   mu_A(t) = -mu_A,max exp(-alpha^2 t^2 / 2)
//   mu_B(t) = -mu_B,max exp(-alpha^2 (t - tau)^2 / 2)
//
// Units: energies in J, times in 1/J (hbar = 1).

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "adiabatic_chain/random.hpp"

namespace adiabatic_chain {

/// Real symmetric tridiagonal matrix stored as its diagonal and first
/// off-diagonal.
struct Tridiagonal
{
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;

  std::size_t size() const noexcept { return diagonal.size(); }

  /// Dense element access, zero outside the band.
  double operator()(std::size_t i, std::size_t j) const noexcept
  {
    if (i == j)
      return diagonal[i];
    if (i + 1 == j)
      return off_diagonal[i];
    if (j + 1 == i)
      return off_diagonal[j];
    return 0.0;
  }
};

class ChainSpec
{
public:
  /// All bonds equal to `coupling`.
  static ChainSpec uniform(int n_sites, double coupling = 1.0)
  {
    if (n_sites < 2)
      throw std::invalid_argument("ChainSpec: n_sites must be >= 2, got " + std::to_string(n_sites));
    return ChainSpec(coupling, std::vector<double>(static_cast<std::size_t>(n_sites - 1), coupling));
  }

  /// Explicit per-bond couplings; n_sites = bonds.size() + 1.
  static ChainSpec with_bonds(double coupling_nominal, std::vector<double> bonds)
  {
    if (bonds.empty())
      throw std::invalid_argument("ChainSpec: need at least one bond (n_sites >= 2)");
    return ChainSpec(coupling_nominal, std::move(bonds));
  }

  int n_sites() const noexcept { return static_cast<int>(bonds_.size()) + 1; }
  double coupling_nominal() const noexcept { return nominal_; }
  const std::vector<double>& bond_couplings() const noexcept { return bonds_; }

  bool is_uniform() const noexcept
  {
    for (double b : bonds_)
      if (b != nominal_)
        return false;
    return true;
  }

private:
  ChainSpec(double nominal, std::vector<double> bonds)
    : nominal_(nominal)
    , bonds_(std::move(bonds))
  {
    if (!(std::isfinite(nominal_) && nominal_ > 0.0))
      throw std::invalid_argument("ChainSpec: coupling must be finite and > 0");
    for (double b : bonds_)
      if (!(std::isfinite(b) && b > 0.0))
        throw std::invalid_argument("ChainSpec: every bond coupling must be finite and > 0");
  }

  double nominal_;
  std::vector<double> bonds_;
};

struct PulseSchedule
{
  double mu_a_max = 20.0;
  double mu_b_max = 20.0;
  double alpha = 5.0 / 500.0; ///< absolute, 1/time
  double tau = 500.0;

  /// Equal peaks, alpha given in the dimensionless form alpha * tau.
  static PulseSchedule symmetric(double mu0, double alpha_over_tau, double tau)
  {
    return PulseSchedule{mu0, mu0, alpha_over_tau / tau, tau};
  }

  double alpha_over_tau() const noexcept { return alpha * tau; }
  double peak() const noexcept { return mu_a_max > mu_b_max ? mu_a_max : mu_b_max; }
  bool is_symmetric() const noexcept { return mu_a_max == mu_b_max; }

  void validate() const
  {
    if (!(std::isfinite(mu_a_max) && mu_a_max >= 0.0) || !(std::isfinite(mu_b_max) && mu_b_max >= 0.0))
      throw std::invalid_argument("PulseSchedule: peak values must be finite and >= 0");
    if (!(std::isfinite(alpha) && alpha > 0.0))
      throw std::invalid_argument("PulseSchedule: alpha must be finite and > 0");
    if (!(std::isfinite(tau) && tau > 0.0))
      throw std::invalid_argument("PulseSchedule: tau must be finite and > 0");
  }
};

inline double pulse_a(const PulseSchedule& s, double t) noexcept
{
  const double x = s.alpha * t;
  return -s.mu_a_max * std::exp(-0.5 * x * x);
}

inline double pulse_b(const PulseSchedule& s, double t) noexcept
{
  const double x = s.alpha * (t - s.tau);
  return -s.mu_b_max * std::exp(-0.5 * x * x);
}

/// Fills `out` in place; reuses its storage when the size already matches.
inline void hamiltonian_at(const ChainSpec& spec, const PulseSchedule& schedule, double t, Tridiagonal& out)
{
  const auto n = static_cast<std::size_t>(spec.n_sites());
  out.diagonal.assign(n, 0.0);
  out.off_diagonal.resize(n - 1);
  const auto& bonds = spec.bond_couplings();
  for (std::size_t j = 0; j + 1 < n; ++j)
    out.off_diagonal[j] = -bonds[j];
  out.diagonal.front() = pulse_a(schedule, t);
  out.diagonal.back() += pulse_b(schedule, t);
}

inline Tridiagonal hamiltonian_at(const ChainSpec& spec, const PulseSchedule& schedule, double t)
{
  Tridiagonal h;
  hamiltonian_at(spec, schedule, t, h);
  return h;
}

struct DisorderSpec
{
  double delta = 0.0; ///< maximum fractional bond offset, in [0, 1)
  std::uint64_t seed = 1;
  int n_samples = 20;

  void validate() const
  {
    if (!(std::isfinite(delta) && delta >= 0.0 && delta < 1.0))
      throw std::invalid_argument("DisorderSpec: delta must lie in [0, 1)");
    if (n_samples < 1)
      throw std::invalid_argument("DisorderSpec: n_samples must be >= 1");
  }
};

/// Quenched bond disorder J_j = J (1 - delta * eps_j), eps_j uniform on (0, 1).
/// The stream depends only on (seed, sample_index); the j-th draw feeds bond j.
inline std::vector<double>
sample_disordered_couplings(const ChainSpec& spec, const DisorderSpec& disorder, int sample_index)
{
  disorder.validate();
  if (sample_index < 0 || sample_index >= disorder.n_samples)
    throw std::out_of_range("sample_disordered_couplings: sample_index outside [0, n_samples)");

  const double j_nominal = spec.coupling_nominal();
  std::vector<double> bonds(static_cast<std::size_t>(spec.n_sites() - 1));
  std::mt19937_64 engine(derive_stream_seed(disorder.seed, static_cast<std::uint64_t>(sample_index)));
  for (double& b : bonds)
    b = j_nominal * (1.0 - disorder.delta * open_unit_uniform(engine));
  return bonds;
}

inline ChainSpec disordered_chain(const ChainSpec& spec, const DisorderSpec& disorder, int sample_index)
{
  return ChainSpec::with_bonds(spec.coupling_nominal(), sample_disordered_couplings(spec, disorder, sample_index));
}

} // namespace adiabatic_chain
