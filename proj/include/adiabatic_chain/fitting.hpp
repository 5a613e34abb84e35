#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

namespace adiabatic_chain {

struct Point
{
  double x = 0.0;
  double y = 0.0;
};

/// y = a x^2 + b x + c
struct QuadraticFit
{
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double residual_rms = 0.0;
  double r_squared = 0.0;

  double operator()(double x) const noexcept { return (a * x + b) * x + c; }
};

/// y = slope x + intercept
struct LinearFit
{
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  double r_squared = 0.0;
};

namespace detail {

// Householder QR least squares for a small dense m x p design (row-major).
inline std::vector<double> solve_least_squares(std::vector<double> design, std::vector<double> rhs, std::size_t p)
{
  const std::size_t m = rhs.size();
  if (m < p)
    throw std::invalid_argument("least squares: fewer observations than parameters");

  double scale = 0.0;
  for (double v : design)
    scale = std::max(scale, std::abs(v));

  for (std::size_t k = 0; k < p; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < m; ++i)
      norm += design[i * p + k] * design[i * p + k];
    norm = std::sqrt(norm);
    if (norm <= 1e-12 * scale * std::sqrt(static_cast<double>(m)))
      throw std::domain_error("least squares: rank-deficient design");

    const double alpha = design[k * p + k] > 0 ? -norm : norm;
    std::vector<double> v(m - k);
    for (std::size_t i = k; i < m; ++i)
      v[i - k] = design[i * p + k];
    v[0] -= alpha;
    double vnorm2 = 0.0;
    for (double x : v)
      vnorm2 += x * x;

    for (std::size_t j = k; j < p; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < m; ++i)
        dot += v[i - k] * design[i * p + j];
      const double f = 2.0 * dot / vnorm2;
      for (std::size_t i = k; i < m; ++i)
        design[i * p + j] -= f * v[i - k];
    }
    double dot = 0.0;
    for (std::size_t i = k; i < m; ++i)
      dot += v[i - k] * rhs[i];
    const double f = 2.0 * dot / vnorm2;
    for (std::size_t i = k; i < m; ++i)
      rhs[i] -= f * v[i - k];
  }

  std::vector<double> coef(p);
  for (std::size_t k = p; k-- > 0;) {
    double s = rhs[k];
    for (std::size_t j = k + 1; j < p; ++j)
      s -= design[k * p + j] * coef[j];
    coef[k] = s / design[k * p + k];
  }
  return coef;
}

struct Residuals
{
  double rms;
  double r_squared;
};

template <typename Model>
Residuals residual_stats(std::span<const Point> points, Model&& model)
{
  double mean = 0.0;
  for (const auto& pt : points)
    mean += pt.y;
  mean /= static_cast<double>(points.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (const auto& pt : points) {
    const double r = pt.y - model(pt.x);
    ss_res += r * r;
    ss_tot += (pt.y - mean) * (pt.y - mean);
  }
  double r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res <= 1e-24 ? 1.0 : 0.0);
  r2 = std::clamp(r2, 0.0, 1.0);
  return {std::sqrt(ss_res / static_cast<double>(points.size())), r2};
}

inline std::size_t distinct_x(std::span<const Point> points)
{
  std::set<double> xs;
  for (const auto& pt : points)
    xs.insert(pt.x);
  return xs.size();
}

} // namespace detail

/// Ordinary least squares on the basis {x^2, x, 1}.
inline QuadraticFit fit_quadratic(std::span<const Point> points)
{
  if (detail::distinct_x(points) < 3)
    throw std::invalid_argument("fit_quadratic: need at least 3 distinct x values");

  // Work in x / max|x| for conditioning, then undo the scaling.
  double sx = 0.0;
  for (const auto& pt : points)
    sx = std::max(sx, std::abs(pt.x));
  std::vector<double> design;
  std::vector<double> rhs;
  for (const auto& pt : points) {
    const double u = pt.x / sx;
    design.insert(design.end(), {u * u, u, 1.0});
    rhs.push_back(pt.y);
  }
  const auto coef = detail::solve_least_squares(std::move(design), std::move(rhs), 3);

  QuadraticFit fit;
  fit.a = coef[0] / (sx * sx);
  fit.b = coef[1] / sx;
  fit.c = coef[2];
  const auto stats = detail::residual_stats(points, fit);
  fit.residual_rms = stats.rms;
  fit.r_squared = stats.r_squared;
  return fit;
}

inline LinearFit fit_line(std::span<const Point> points)
{
  if (detail::distinct_x(points) < 2)
    throw std::invalid_argument("fit_line: need at least 2 distinct x values");
  std::vector<double> design;
  std::vector<double> rhs;
  for (const auto& pt : points) {
    design.insert(design.end(), {pt.x, 1.0});
    rhs.push_back(pt.y);
  }
  const auto coef = detail::solve_least_squares(std::move(design), std::move(rhs), 2);
  LinearFit fit{coef[0], coef[1], 0.0, 0.0};
  const auto stats = detail::residual_stats(points, [&](double x) { return fit.slope * x + fit.intercept; });
  fit.residual_rms = stats.rms;
  fit.r_squared = stats.r_squared;
  return fit;
}

/// y = slope x (no intercept). r_squared is measured against the mean of y,
/// so it is comparable with fit_line's.
inline LinearFit fit_proportional(std::span<const Point> points)
{
  double sxy = 0.0, sxx = 0.0;
  for (const auto& pt : points) {
    sxy += pt.x * pt.y;
    sxx += pt.x * pt.x;
  }
  if (!(sxx > 0.0))
    throw std::invalid_argument("fit_proportional: all x are zero");
  LinearFit fit{sxy / sxx, 0.0, 0.0, 0.0};
  const auto stats = detail::residual_stats(points, [&](double x) { return fit.slope * x; });
  fit.residual_rms = stats.rms;
  fit.r_squared = stats.r_squared;
  return fit;
}

} // namespace adiabatic_chain
