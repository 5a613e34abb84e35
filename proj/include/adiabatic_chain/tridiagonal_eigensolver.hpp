#pragma once

// Symmetric tridiagonal eigensolver: implicit QL with Wilkinson-type shifts
// (the EISPACK tql2 recurrence), followed by an ascending sort and a
// deterministic sign convention on each eigenvector.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace adiabatic_chain {

template <typename Real>
class TridiagonalEigensolver
{
public:
  /// Computes all eigenvalues (ascending) and, if requested, the matching
  /// orthonormal eigenvectors. Eigenvector k is column k of vectors(),
  /// stored row-major: vectors()[i * n + k] is component i of vector k.
  void compute(std::span<const Real> diagonal, std::span<const Real> off_diagonal, bool want_vectors = true)
  {
    const std::size_t n = diagonal.size();
    if (n == 0 || off_diagonal.size() + 1 != n)
      throw std::invalid_argument("TridiagonalEigensolver: off-diagonal must have n - 1 entries");
    for (Real x : diagonal)
      if (!std::isfinite(x))
        throw std::domain_error("TridiagonalEigensolver: non-finite diagonal entry");
    for (Real x : off_diagonal)
      if (!std::isfinite(x))
        throw std::domain_error("TridiagonalEigensolver: non-finite off-diagonal entry");

    n_ = n;
    has_vectors_ = want_vectors;
    d_.assign(diagonal.begin(), diagonal.end());
    e_.assign(n, Real(0));
    std::copy(off_diagonal.begin(), off_diagonal.end(), e_.begin());
    if (want_vectors) {
      v_.assign(n * n, Real(0));
      for (std::size_t i = 0; i < n; ++i)
        v_[i * n + i] = Real(1);
    }

    ql_implicit(want_vectors);
    sort_ascending(want_vectors);
    if (want_vectors)
      fix_gauge();
  }

  std::size_t size() const noexcept { return n_; }
  const std::vector<Real>& eigenvalues() const noexcept { return d_; }
  const std::vector<Real>& vectors() const noexcept { return v_; }
  bool has_vectors() const noexcept { return has_vectors_; }

  Real vector_component(std::size_t component, std::size_t k) const noexcept { return v_[component * n_ + k]; }

  std::vector<Real> eigenvector(std::size_t k) const
  {
    std::vector<Real> out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      out[i] = v_[i * n_ + k];
    return out;
  }

private:
  // sqrt(a^2 + b^2), rescaled only when the squares could overflow.
  static Real pythag(Real a, Real b) noexcept
  {
    const Real aa = std::abs(a), ab = std::abs(b);
    const Real big = std::max(aa, ab);
    if (big > Real(1e150)) {
      const Real sa = aa / big, sb = ab / big;
      return big * std::sqrt(sa * sa + sb * sb);
    }
    return std::sqrt(a * a + b * b);
  }

  void ql_implicit(bool want_vectors)
  {
    const std::size_t n = n_;
    const Real eps = std::numeric_limits<Real>::epsilon();
    const std::size_t max_iter = 30 * n + 30;

    Real f = 0;
    Real tst1 = 0;
    for (std::size_t l = 0; l < n; ++l) {
      tst1 = std::max(tst1, std::abs(d_[l]) + std::abs(e_[l]));
      std::size_t m = l;
      while (m < n - 1 && std::abs(e_[m]) > eps * tst1)
        ++m;

      if (m > l) {
        std::size_t iter = 0;
        do {
          if (++iter > max_iter)
            throw std::runtime_error("TridiagonalEigensolver: QL iteration did not converge");

          Real g = d_[l];
          Real p = (d_[l + 1] - g) / (Real(2) * e_[l]);
          Real r = pythag(p, Real(1));
          if (p < 0)
            r = -r;
          d_[l] = e_[l] / (p + r);
          d_[l + 1] = e_[l] * (p + r);
          const Real dl1 = d_[l + 1];
          Real h = g - d_[l];
          for (std::size_t i = l + 2; i < n; ++i)
            d_[i] -= h;
          f += h;

          p = d_[m];
          Real c = 1, c2 = 1, c3 = 1;
          const Real el1 = e_[l + 1];
          Real s = 0, s2 = 0;
          for (std::size_t ii = m; ii-- > l;) {
            c3 = c2;
            c2 = c;
            s2 = s;
            g = c * e_[ii];
            h = c * p;
            r = pythag(p, e_[ii]);
            e_[ii + 1] = s * r;
            s = e_[ii] / r;
            c = p / r;
            p = c * d_[ii] - s * g;
            d_[ii + 1] = h + s * (c * g + s * d_[ii]);
            if (want_vectors) {
              for (std::size_t k = 0; k < n; ++k) {
                Real* row = &v_[k * n];
                h = row[ii + 1];
                row[ii + 1] = s * row[ii] + c * h;
                row[ii] = c * row[ii] - s * h;
              }
            }
          }
          p = -s * s2 * c3 * el1 * e_[l] / dl1;
          e_[l] = s * p;
          d_[l] = c * p;
        } while (std::abs(e_[l]) > eps * tst1);
      }
      d_[l] += f;
      e_[l] = 0;
    }
  }

  void sort_ascending(bool want_vectors)
  {
    const std::size_t n = n_;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      std::size_t k = i;
      for (std::size_t j = i + 1; j < n; ++j)
        if (d_[j] < d_[k])
          k = j;
      if (k != i) {
        std::swap(d_[i], d_[k]);
        if (want_vectors)
          for (std::size_t row = 0; row < n; ++row)
            std::swap(v_[row * n + i], v_[row * n + k]);
      }
    }
  }

  // Largest-magnitude component positive; ties go to the lowest index.
  void fix_gauge()
  {
    const std::size_t n = n_;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < n; ++i)
        if (std::abs(v_[i * n + k]) > std::abs(v_[best * n + k]))
          best = i;
      if (v_[best * n + k] < 0)
        for (std::size_t i = 0; i < n; ++i)
          v_[i * n + k] = -v_[i * n + k];
    }
  }

  std::size_t n_ = 0;
  bool has_vectors_ = false;
  std::vector<Real> d_;
  std::vector<Real> e_;
  std::vector<Real> v_;
};

} // namespace adiabatic_chain
