#ifndef EITPOL_TESTS_ORACLES_HPP
#define EITPOL_TESTS_ORACLES_HPP

// Independent reference implementations used only by the tests.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "eitpol/atomic_model.hpp"
#include "eitpol/dynamics.hpp"

namespace oracle {

using cplx = std::complex<double>;

// Signed hyperfine dipole factors of the 87Rb D1 line, evaluated symbolically
// (exact rationals and square roots) and rounded to double.
// Columns: F, m, F', m', factor.
struct CgEntry {
  int f, m, fp, mp;
  double value;
};

inline constexpr std::array<CgEntry, 38> cg_table{{
    {1, -1, 1, -1, 0.28867513459481287},  {1, -1, 1, 0, -0.28867513459481287},
    {1, -1, 2, -2, -0.70710678118654757}, {1, -1, 2, -1, 0.5},
    {1, -1, 2, 0, -0.28867513459481287},  {1, 0, 1, -1, 0.28867513459481287},
    {1, 0, 1, 0, 0},                      {1, 0, 1, 1, -0.28867513459481287},
    {1, 0, 2, -1, -0.5},                  {1, 0, 2, 0, 0.57735026918962573},
    {1, 0, 2, 1, -0.5},                   {1, 1, 1, 0, 0.28867513459481287},
    {1, 1, 1, 1, -0.28867513459481287},   {1, 1, 2, 0, -0.28867513459481287},
    {1, 1, 2, 1, 0.5},                    {1, 1, 2, 2, -0.70710678118654757},
    {2, -2, 1, -1, 0.70710678118654757},  {2, -2, 2, -2, -0.57735026918962573},
    {2, -2, 2, -1, 0.40824829046386302},  {2, -1, 1, -1, 0.5},
    {2, -1, 1, 0, 0.5},                   {2, -1, 2, -2, -0.40824829046386302},
    {2, -1, 2, -1, -0.28867513459481287}, {2, -1, 2, 0, 0.5},
    {2, 0, 1, -1, 0.28867513459481287},   {2, 0, 1, 0, 0.57735026918962573},
    {2, 0, 1, 1, 0.28867513459481287},    {2, 0, 2, -1, -0.5},
    {2, 0, 2, 0, 0},                      {2, 0, 2, 1, 0.5},
    {2, 1, 1, 0, 0.5},                    {2, 1, 1, 1, 0.5},
    {2, 1, 2, 0, -0.5},                   {2, 1, 2, 1, 0.28867513459481287},
    {2, 1, 2, 2, 0.40824829046386302},    {2, 2, 1, 1, 0.70710678118654757},
    {2, 2, 2, 1, -0.40824829046386302},   {2, 2, 2, 2, 0.57735026918962573},
}};

inline double table_cg(int f, int m, int fp, int mp)
{
  for (const auto& e : cg_table)
    if (e.f == f && e.m == m && e.fp == fp && e.mp == mp) return e.value;
  return 0.0;
}

// Doppler factor for A = gamma_ca + EIT term at zero detuning, Omega_c1 = 2pi x 60 MHz,
// gamma_ca = 2pi x 3.5 MHz, gamma_ba = 2pi x 1.1 MHz, T = 328 K, lambda = 794.979 nm:
// trapezoid rule with 4,000,001 nodes over |u| <= 6V (seconds).
inline constexpr double f1_reference_real = 1.818066073975373e-10;

/// Trapezoid rule for the integral of w(u) / (A - i k u) over |u| <= span V.
inline cplx trapezoid_doppler(cplx a, double k, double v, std::size_t points = 1000001,
                              double span = 6.0)
{
  const double lim = span * v;
  const double h = 2.0 * lim / static_cast<double>(points - 1);
  const double norm = 1.0 / (v * std::sqrt(M_PI));
  cplx sum = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double u = -lim + h * static_cast<double>(i);
    const cplx f = norm * std::exp(-(u * u) / (v * v)) / (a - cplx(0.0, k * u));
    sum += (i == 0 || i + 1 == points) ? 0.5 * f : f;
  }
  return sum * h;
}

/// Kronecker-product assembly of the same master equation, using the frozen
/// factor table for the jump operators. vec is row-major: vec(A rho B) = (A kron B^T) vec(rho).
inline Eigen::MatrixXcd kron_liouvillian(const Eigen::MatrixXcd& h, const eitpol::RelaxationRates& rates,
                                         const eitpol::LevelScheme& scheme)
{
  using eitpol::Manifold;
  const auto n = static_cast<Eigen::Index>(scheme.size());
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  auto kron = [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j)
        out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
  };
  const cplx I(0.0, 1.0);
  Eigen::MatrixXcd L = -I * (kron(h, id) - kron(id, h.transpose()));

  for (int q = -1; q <= 1; ++q) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index g = 0; g < n; ++g) {
      const auto sg = scheme.sublevels[static_cast<std::size_t>(g)];
      if (sg.manifold == Manifold::excited) continue;
      for (Eigen::Index e = 0; e < n; ++e) {
        const auto se = scheme.sublevels[static_cast<std::size_t>(e)];
        if (se.manifold != Manifold::excited || sg.m - se.m != q) continue;
        a(g, e) = std::sqrt(rates.gamma) *
                  table_cg(sg.manifold == Manifold::ground_f1 ? 1 : 2, sg.m, scheme.excited_f, se.m);
      }
    }
    const Eigen::MatrixXcd ada = a.adjoint() * a;
    L += kron(a, a.conjugate()) - 0.5 * kron(ada, id) - 0.5 * kron(id, ada.transpose());
  }

  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto mi = scheme.sublevels[static_cast<std::size_t>(i)].manifold;
      const auto mj = scheme.sublevels[static_cast<std::size_t>(j)].manifold;
      double rate = 0.0;
      if ((mi == Manifold::excited) != (mj == Manifold::excited)) rate = rates.gamma_ca - 0.5 * rates.gamma;
      else if (mi != Manifold::excited) rate = (mi == mj) ? rates.zeeman_coherence_decay() : rates.gamma_ba;
      L(i * n + j, i * n + j) -= rate;
    }

  std::vector<Eigen::Index> ground;
  for (Eigen::Index i = 0; i < n; ++i)
    if (scheme.sublevels[static_cast<std::size_t>(i)].manifold != Manifold::excited) ground.push_back(i);
  const double r = rates.exchange_rate();
  for (auto g : ground) {
    L(g * n + g, g * n + g) -= r;
    for (auto g2 : ground) L(g * n + g, g2 * n + g2) += r / static_cast<double>(ground.size());
  }
  return L;
}

/// Classical fourth-order Runge-Kutta integration of d vec(rho)/dt = L vec(rho).
inline Eigen::VectorXcd rk4_evolve(const Eigen::MatrixXcd& L, Eigen::VectorXcd x, double t_end, double dt)
{
  const auto steps = static_cast<long>(std::ceil(t_end / dt));
  const double h = t_end / static_cast<double>(steps);
  for (long s = 0; s < steps; ++s) {
    const Eigen::VectorXcd k1 = L * x;
    const Eigen::VectorXcd k2 = L * (x + 0.5 * h * k1);
    const Eigen::VectorXcd k3 = L * (x + 0.5 * h * k2);
    const Eigen::VectorXcd k4 = L * (x + h * k3);
    x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

/// Thermal start: equal populations over the ground sublevels, no coherences.
inline Eigen::VectorXcd thermal_ground_state(const eitpol::LevelScheme& scheme)
{
  const auto n = static_cast<Eigen::Index>(scheme.size());
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    if (scheme.sublevels[static_cast<std::size_t>(i)].manifold != eitpol::Manifold::excited)
      x(i * n + i) = 1.0 / 8.0;
  return x;
}

}  // namespace oracle

#endif  // EITPOL_TESTS_ORACLES_HPP
