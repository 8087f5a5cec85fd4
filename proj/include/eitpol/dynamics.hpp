#ifndef EITPOL_DYNAMICS_HPP
#define EITPOL_DYNAMICS_HPP

// Rotating-frame Hamiltonian, Lindblad generator and steady-state solve for the
// 13-level (or 11-level) D1 system, plus the closed-form weak-probe coherences.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "eitpol/atomic_model.hpp"
#include "eitpol/constants.hpp"
#include "eitpol/errors.hpp"

namespace eitpol {

using cplx = std::complex<double>;
using Hamiltonian = Eigen::MatrixXcd;
using DensityMatrix = Eigen::MatrixXcd;

inline constexpr cplx imag_unit{0.0, 1.0};

struct RelaxationRates {
  double gamma_ca = mhz(3.5);  ///< optical coherence decay
  double gamma_ba = mhz(1.1);  ///< a-b ground coherence decay
  std::optional<double> gamma_a;  ///< a-a' and b-b' coherence decay, defaults to gamma_ba
  double gamma = mhz(5.75);       ///< excited-state population decay
  std::optional<double> ground_exchange;  ///< population exchange among ground sublevels, defaults to gamma_ba

  double zeeman_coherence_decay() const { return gamma_a.value_or(gamma_ba); }
  double exchange_rate() const { return ground_exchange.value_or(gamma_ba); }
};

/// H/hbar in the frame rotating with both optical fields.
///
/// Diagonal: a -> Zeeman only; b -> -(dwp - dwc) - delta_b + Zeeman;
/// c -> -dwp + Zeeman. Off-diagonal: -Omega_t/2 on every addressed transition.
inline Hamiltonian build_hamiltonian(const LevelScheme& scheme, const FieldDrive& probe,
                                     const FieldDrive& coupling, const StarkShifts& shifts,
                                     const ZeemanField& zeeman)
{
  if (probe.which != Beam::probe || coupling.which != Beam::coupling)
    throw ConfigError("drives passed in the wrong order (probe, coupling)");
  check_drive_polarization(scheme, probe);
  check_drive_polarization(scheme, coupling);

  const auto n = static_cast<Eigen::Index>(scheme.size());
  Hamiltonian h = Hamiltonian::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& s = scheme.sublevels[static_cast<std::size_t>(i)];
    double e = zeeman_shift(s, zeeman, scheme.excited_f);
    if (s.manifold == Manifold::ground_f2) e += -(probe.detuning - coupling.detuning) - shifts.of(s);
    if (s.manifold == Manifold::excited) e += -probe.detuning;
    h(i, i) = e;
  }
  for (const auto* drive : {&probe, &coupling}) {
    for (const auto& t : scheme.transitions) {
      const double rabi = transition_rabi(scheme, *drive, t);
      if (rabi == 0.0) continue;
      const auto lo = static_cast<Eigen::Index>(scheme.index_of(t.lower));
      const auto up = static_cast<Eigen::Index>(scheme.index_of(t.upper));
      h(up, lo) += -0.5 * rabi;
      h(lo, up) += -0.5 * rabi;
    }
  }
  return h;
}

/// Superoperator acting on row-major vec(rho), element (i, j) at i * n + j.
struct Liouvillian {
  std::size_t dim = 0;
  Eigen::MatrixXcd matrix;

  static std::size_t vec_index(std::size_t i, std::size_t j, std::size_t n) { return i * n + j; }

  Eigen::VectorXcd vectorize(const DensityMatrix& rho) const
  {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(dim * dim));
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        v(static_cast<Eigen::Index>(i * dim + j)) =
            rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    return v;
  }

  DensityMatrix unvectorize(const Eigen::VectorXcd& v) const
  {
    DensityMatrix rho(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            v(static_cast<Eigen::Index>(i * dim + j));
    return rho;
  }

  DensityMatrix apply(const DensityMatrix& rho) const { return unvectorize(matrix * vectorize(rho)); }
};

/// d rho/dt = -i[H, rho] + spontaneous decay (cg-weighted jump operators per
/// photon polarization, both ground manifolds) + extra dephasing + ground exchange.
inline Liouvillian build_liouvillian(const Hamiltonian& h, const RelaxationRates& rates,
                                     const LevelScheme& scheme)
{
  const std::size_t n = scheme.size();
  if (static_cast<std::size_t>(h.rows()) != n || static_cast<std::size_t>(h.cols()) != n)
    throw ConfigError("Hamiltonian dimension does not match level scheme");
  if (rates.gamma_ca < 0.5 * rates.gamma || rates.gamma_ba < 0 || rates.gamma < 0 ||
      rates.zeeman_coherence_decay() < 0 || rates.exchange_rate() < 0)
    throw ConfigError("relaxation rates must be non-negative with gamma_ca >= Gamma/2");

  Liouvillian L;
  L.dim = n;
  const auto N = static_cast<Eigen::Index>(n * n);
  L.matrix = Eigen::MatrixXcd::Zero(N, N);
  auto at = [&](std::size_t i, std::size_t j, std::size_t k, std::size_t l) -> cplx& {
    return L.matrix(static_cast<Eigen::Index>(i * n + j), static_cast<Eigen::Index>(k * n + l));
  };
  auto hh = [&](std::size_t i, std::size_t j) {
    return h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  };

  // -i[H, rho]_ij = -i sum_k H_ik rho_kj + i sum_k rho_ik H_kj
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (hh(i, k) != 0.0) at(i, j, k, j) += -imag_unit * hh(i, k);
        if (hh(k, j) != 0.0) at(i, j, i, k) += imag_unit * hh(k, j);
      }

  // Spontaneous decay, one jump operator per emitted polarization q = m_g - m_e.
  std::vector<std::size_t> excited, ground;
  for (std::size_t i = 0; i < n; ++i)
    (scheme.sublevels[i].manifold == Manifold::excited ? excited : ground).push_back(i);

  for (int q = -1; q <= 1; ++q) {
    struct Entry {
      std::size_t g, e;
      double amp;
    };
    std::vector<Entry> jump;
    for (const auto& t : scheme.transitions) {
      if (t.lower.m - t.upper.m != q || t.natural_cg == 0.0) continue;
      jump.push_back({scheme.index_of(t.lower), scheme.index_of(t.upper),
                      std::sqrt(rates.gamma) * t.natural_cg});
    }
    for (const auto& x : jump)
      for (const auto& y : jump) at(x.g, y.g, x.e, y.e) += x.amp * y.amp;
    // -1/2 {A^dag A, rho}; A^dag A is diagonal within one q because m_e fixes m_g
    for (const auto& x : jump)
      for (const auto& y : jump) {
        if (x.g != y.g) continue;
        const double w = 0.5 * x.amp * y.amp;
        for (std::size_t j = 0; j < n; ++j) {
          at(x.e, j, y.e, j) -= w;
          at(j, y.e, j, x.e) -= w;
        }
      }
  }

  // Additional dephasing of coherences.
  const double optical_extra = rates.gamma_ca - 0.5 * rates.gamma;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto mi = scheme.sublevels[i].manifold;
      const auto mj = scheme.sublevels[j].manifold;
      double rate = 0.0;
      if ((mi == Manifold::excited) != (mj == Manifold::excited))
        rate = optical_extra;
      else if (mi != Manifold::excited)
        rate = (mi == mj) ? rates.zeeman_coherence_decay() : rates.gamma_ba;
      if (rate != 0.0) at(i, j, i, j) -= rate;
    }

  // Uniform population exchange among the ground sublevels.
  const double r = rates.exchange_rate();
  if (r > 0.0) {
    const double share = r / static_cast<double>(ground.size());
    for (auto g : ground) {
      at(g, g, g, g) -= r;
      for (auto g2 : ground) at(g, g, g2, g2) += share;
    }
  }
  return L;
}

/// Null-space dimension of L, from a full-pivot LU of the max-scaled matrix.
inline Eigen::Index kernel_dimension(const Liouvillian& L)
{
  const double scale = L.matrix.cwiseAbs().maxCoeff();
  if (scale == 0.0) return L.matrix.rows();
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(L.matrix / scale);
  return lu.dimensionOfKernel();
}

/// Steady state with the trace condition in place of the first population row.
inline DensityMatrix solve_steady_state(const Liouvillian& L)
{
  const std::size_t n = L.dim;
  const auto kernel = kernel_dimension(L);
  if (kernel != 1)
    throw NumericalError("non-unique steady state: null space dimension " + std::to_string(kernel));

  const double scale = L.matrix.cwiseAbs().maxCoeff();
  Eigen::MatrixXcd a = L.matrix / scale;
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(a.rows());
  a.row(0).setZero();
  for (std::size_t i = 0; i < n; ++i) a(0, static_cast<Eigen::Index>(i * n + i)) = 1.0;
  b(0) = 1.0;
  const Eigen::VectorXcd x = a.partialPivLu().solve(b);

  DensityMatrix rho = L.unvectorize(x);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();

  const double residual = (L.matrix * L.vectorize(rho)).norm();
  const double bound = 1e-9 * L.matrix.norm() * rho.norm();
  if (!(residual <= bound)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "steady-state residual %.3e exceeds %.3e", residual, bound);
    throw NumericalError(buf);
  }
  return rho;
}

/// Everything needed to assemble one master equation.
struct AtomicSystem {
  LevelScheme scheme = build_level_scheme(SchemeId::fig1_asym);
  FieldDrive probe{Beam::probe, DrivePolarization::linear, mhz(10.0), 0.0};
  FieldDrive coupling{Beam::coupling, DrivePolarization::sigma_minus, mhz(80.0), 0.0};
  RelaxationRates rates{};
  ZeemanField zeeman{};
  bool stark_enabled = true;

  StarkShifts stark() const
  {
    if (!stark_enabled) return {};
    return stark_shifts(coupling, scheme);
  }
  Hamiltonian hamiltonian() const { return build_hamiltonian(scheme, probe, coupling, stark(), zeeman); }
  Liouvillian liouvillian() const { return build_liouvillian(hamiltonian(), rates, scheme); }
};

inline DensityMatrix steady_state(const AtomicSystem& sys)
{
  return solve_steady_state(sys.liouvillian());
}

/// (rho_a1a1, rho_a2a2, rho_a3a3).
using GroundPopulations = std::array<double, 3>;

inline GroundPopulations ground_populations(const LevelScheme& scheme, const DensityMatrix& rho)
{
  GroundPopulations p{};
  for (int m = -1; m <= 1; ++m) {
    const auto i = static_cast<Eigen::Index>(scheme.index_of({Manifold::ground_f1, m}));
    p[static_cast<std::size_t>(m + 1)] = rho(i, i).real();
  }
  return p;
}

inline GroundPopulations ground_populations(const AtomicSystem& sys)
{
  return ground_populations(sys.scheme, steady_state(sys));
}

//
// Probe channels and the weak-probe closed form
//

/// One dipole-allowed circular probe transition a -> c, together with the
/// coupling transitions b -> c that dress its excited level.
struct ProbeChannel {
  SublevelId a;
  SublevelId c;
  Polarization polarization;
  double cg;
  double dipole;
  std::vector<std::pair<SublevelId, double>> dressing;  ///< (b, Omega_c,t)
};

/// Sigma- channels in order of a, then sigma+ channels in order of a.
inline std::vector<ProbeChannel> probe_channels(const LevelScheme& scheme, const FieldDrive& coupling)
{
  std::vector<ProbeChannel> out;
  for (auto pol : {Polarization::sigma_minus, Polarization::sigma_plus}) {
    for (const auto& t : scheme.transitions) {
      if (t.lower.manifold != Manifold::ground_f1 || t.polarization != pol) continue;
      if (std::abs(t.cg) <= zero_strength) continue;
      ProbeChannel ch{t.lower, t.upper, pol, t.cg, t.dipole, {}};
      for (const auto& u : scheme.transitions) {
        if (u.upper != t.upper) continue;
        const double rabi = transition_rabi(scheme, coupling, u);
        if (rabi != 0.0) ch.dressing.emplace_back(u.lower, rabi);
      }
      out.push_back(ch);
    }
  }
  return out;
}

/// Energies (diagonal of H) feeding the one- and two-photon denominators.
struct ChannelRates {
  cplx optical;  ///< gamma_ca + i (E_c - E_a), at zero velocity
  cplx eit;      ///< sum_b (|Omega_cb|^2 / 4) / (gamma_ba + i (E_b - E_a))
  cplx total() const { return optical + eit; }
};

inline ChannelRates channel_rates(const ProbeChannel& ch, const LevelScheme& scheme,
                                  const Hamiltonian& h, const RelaxationRates& rates)
{
  auto energy = [&](SublevelId s) {
    const auto i = static_cast<Eigen::Index>(scheme.index_of(s));
    return h(i, i).real();
  };
  const double ea = energy(ch.a);
  ChannelRates r{cplx(rates.gamma_ca, energy(ch.c) - ea), 0.0};
  for (const auto& [b, rabi] : ch.dressing)
    r.eit += 0.25 * rabi * rabi / cplx(rates.gamma_ba, energy(b) - ea);
  return r;
}

struct ProbeCoherence {
  ProbeChannel channel;
  cplx value;  ///< rho_{c,a}
};

using CoherenceSet = std::vector<ProbeCoherence>;

/// rho_ca = (i Omega_p,t / 2) rho_aa / (gamma_ca - i dwp_eff + EIT term), per channel.
inline CoherenceSet analytic_coherences(const AtomicSystem& sys, const GroundPopulations& pops)
{
  const auto h = sys.hamiltonian();
  CoherenceSet out;
  for (const auto& ch : probe_channels(sys.scheme, sys.coupling)) {
    const Transition* t = sys.scheme.find_transition(ch.a, ch.c);
    const double rabi = transition_rabi(sys.scheme, sys.probe, *t);
    const double rho_aa = pops[static_cast<std::size_t>(ch.a.m + 1)];
    const auto r = channel_rates(ch, sys.scheme, h, sys.rates);
    out.push_back({ch, imag_unit * 0.5 * rabi * rho_aa / r.total()});
  }
  return out;
}

/// Number of density-matrix elements the probe coherences depend on, directly
/// or transitively, through nonzero generator entries (the probe coherences included).
inline std::size_t coupled_element_count(const Liouvillian& L, const LevelScheme& scheme,
                                         const FieldDrive& coupling)
{
  const std::size_t n = L.dim;
  std::set<std::size_t> seen;
  std::vector<std::size_t> stack;
  for (const auto& ch : probe_channels(scheme, coupling)) {
    const auto k = scheme.index_of(ch.c) * n + scheme.index_of(ch.a);
    if (seen.insert(k).second) stack.push_back(k);
  }
  while (!stack.empty()) {
    const auto row = static_cast<Eigen::Index>(stack.back());
    stack.pop_back();
    for (Eigen::Index col = 0; col < L.matrix.cols(); ++col) {
      if (L.matrix(row, col) == 0.0) continue;
      if (seen.insert(static_cast<std::size_t>(col)).second)
        stack.push_back(static_cast<std::size_t>(col));
    }
  }
  return seen.size();
}

/// One line per nonzero generator entry:  d/dt rho[x,y] += (re, im) * rho[u,v]
inline void write_equation_dump(std::ostream& os, const Liouvillian& L, const LevelScheme& scheme)
{
  const std::size_t n = L.dim;
  char buf[64];
  for (Eigen::Index r = 0; r < L.matrix.rows(); ++r)
    for (Eigen::Index c = 0; c < L.matrix.cols(); ++c) {
      const cplx v = L.matrix(r, c);
      if (v == 0.0) continue;
      const auto ru = static_cast<std::size_t>(r), cu = static_cast<std::size_t>(c);
      std::snprintf(buf, sizeof buf, "(%.9g, %.9g)", v.real(), v.imag());
      os << "d/dt rho[" << scheme.label(ru / n) << ',' << scheme.label(ru % n) << "] += " << buf
         << " * rho[" << scheme.label(cu / n) << ',' << scheme.label(cu % n) << "]\n";
    }
}

inline void write_populations_csv(std::ostream& os, const LevelScheme& scheme, const DensityMatrix& rho)
{
  os << "level,population\n";
  char buf[32];
  for (std::size_t i = 0; i < scheme.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.9g",
                  rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real());
    os << scheme.label(i) << ',' << buf << '\n';
  }
}

}  // namespace eitpol

#endif  // EITPOL_DYNAMICS_HPP
