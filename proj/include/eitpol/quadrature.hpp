#ifndef EITPOL_QUADRATURE_HPP
#define EITPOL_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <tuple>
#include <utility>
#include <vector>

#include "eitpol/errors.hpp"

namespace eitpol {

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  int max_intervals = 4000;
};

struct QuadratureResult {
  std::complex<double> value;
  double error = 0.0;
  int evaluations = 0;
  int intervals = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule, nodes on [0, 1].
inline constexpr std::array<double, 8> gk15_nodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> gk15_kronrod_weights{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gk15_gauss_weights{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  std::complex<double> value;
  double error;
};

template <class F>
Panel gk15(F& f, double a, double b)
{
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const std::complex<double> fc = f(c);
  std::complex<double> kronrod = fc * gk15_kronrod_weights[7];
  std::complex<double> gauss = fc * gk15_gauss_weights[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * gk15_nodes[static_cast<std::size_t>(j)];
    const std::complex<double> sum = f(c - dx) + f(c + dx);
    kronrod += gk15_kronrod_weights[static_cast<std::size_t>(j)] * sum;
    if (j % 2 == 1) gauss += gk15_gauss_weights[static_cast<std::size_t>(j / 2)] * sum;
  }
  return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) integration of a complex integrand.
/// `breakpoints` must be ascending and include both end points; every listed
/// point becomes a panel boundary. Subdivision always bisects the panel with the
/// largest error estimate (first one on ties), so results are deterministic.
template <class F>
QuadratureResult integrate_adaptive(F f, const std::vector<double>& breakpoints,
                                    const QuadratureSpec& spec = {})
{
  if (breakpoints.size() < 2) throw NumericalError("quadrature needs at least two breakpoints");
  std::vector<detail::Panel> panels;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    if (breakpoints[i + 1] > breakpoints[i])
      panels.push_back(detail::gk15(f, breakpoints[i], breakpoints[i + 1]));
  int evaluations = 15 * static_cast<int>(panels.size());

  auto totals = [&] {
    std::complex<double> v = 0.0;
    double e = 0.0;
    for (const auto& p : panels) {
      v += p.value;
      e += p.error;
    }
    return std::pair{v, e};
  };

  auto [value, error] = totals();
  while (error > std::max(spec.abs_tol, spec.rel_tol * std::abs(value))) {
    if (static_cast<int>(panels.size()) >= spec.max_intervals) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "quadrature did not converge: error estimate %.3e (relative %.3e) after %zu panels",
                    error, error / std::max(std::abs(value), 1e-300), panels.size());
      throw NumericalError(buf);
    }
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const auto& x, const auto& y) { return x.error < y.error; });
    const double mid = 0.5 * (worst->a + worst->b);
    const auto left = detail::gk15(f, worst->a, mid);
    const auto right = detail::gk15(f, mid, worst->b);
    *worst = left;
    panels.push_back(right);
    evaluations += 30;
    std::tie(value, error) = totals();
  }
  return {value, error, evaluations, static_cast<int>(panels.size())};
}

}  // namespace eitpol

#endif  // EITPOL_QUADRATURE_HPP
