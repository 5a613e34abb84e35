#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace adiabatic_chain {

using Complex = std::complex<double>;

/// Single-particle amplitudes c_j over the chain sites (0-based storage;
/// site 1 of the physical chain is index 0).
class StateVector
{
public:
  StateVector() = default;
  explicit StateVector(std::vector<Complex> amplitudes)
    : amplitudes_(std::move(amplitudes))
  {
  }

  /// Basis state |site + 1>.
  static StateVector site(int n_sites, int site_index)
  {
    if (n_sites < 1 || site_index < 0 || site_index >= n_sites)
      throw std::out_of_range("StateVector::site: index outside the chain");
    std::vector<Complex> a(static_cast<std::size_t>(n_sites), Complex(0.0, 0.0));
    a[static_cast<std::size_t>(site_index)] = Complex(1.0, 0.0);
    return StateVector(std::move(a));
  }

  static StateVector from_real(const std::vector<double>& values)
  {
    std::vector<Complex> a(values.begin(), values.end());
    return StateVector(std::move(a));
  }

  std::size_t size() const noexcept { return amplitudes_.size(); }
  const std::vector<Complex>& amplitudes() const noexcept { return amplitudes_; }
  std::vector<Complex>& amplitudes() noexcept { return amplitudes_; }
  const Complex& operator[](std::size_t i) const noexcept { return amplitudes_[i]; }
  Complex& operator[](std::size_t i) noexcept { return amplitudes_[i]; }

  double norm_squared() const noexcept
  {
    double s = 0.0;
    for (const auto& c : amplitudes_)
      s += std::norm(c);
    return s;
  }

  double population(std::size_t i) const noexcept { return std::norm(amplitudes_[i]); }

  std::vector<double> populations() const
  {
    std::vector<double> p(amplitudes_.size());
    for (std::size_t i = 0; i < p.size(); ++i)
      p[i] = std::norm(amplitudes_[i]);
    return p;
  }

  void normalize()
  {
    const double n = std::sqrt(norm_squared());
    if (!(n > 0.0))
      throw std::domain_error("StateVector::normalize: zero vector");
    for (auto& c : amplitudes_)
      c /= n;
  }

private:
  std::vector<Complex> amplitudes_;
};

/// <a|b>, conjugate-linear in the first argument.
inline Complex inner_product(const StateVector& a, const StateVector& b)
{
  if (a.size() != b.size())
    throw std::invalid_argument("inner_product: dimension mismatch");
  Complex s(0.0, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    s += std::conj(a[i]) * b[i];
  return s;
}

} // namespace adiabatic_chain
