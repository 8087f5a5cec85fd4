#ifndef EITPOL_ATOMIC_MODEL_HPP
#define EITPOL_ATOMIC_MODEL_HPP

// Level schemes of the 87Rb D1 line: Zeeman sublevels, dipole transition table,
// drive-to-Rabi normalization, ac Stark shifts, Zeeman shifts and the
// power -> Rabi frequency calibration.

#include <algorithm>
#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eitpol/angular_momentum.hpp"
#include "eitpol/constants.hpp"
#include "eitpol/errors.hpp"

namespace eitpol {

enum class Manifold { ground_f1, ground_f2, excited };

struct SublevelId {
  Manifold manifold;
  int m;
  friend auto operator<=>(const SublevelId&, const SublevelId&) = default;
};

enum class Polarization { sigma_minus, sigma_plus, pi };

enum class SchemeId { fig1_asym, fig10_sym, fig11_f1 };

enum class Beam { probe, coupling };

/// Polarization of a drive. `linear` is the equal superposition of sigma-
/// and sigma+ (the probe of the rotation experiment).
enum class DrivePolarization { sigma_minus, sigma_plus, linear, pi };

inline std::string_view to_string(Polarization p)
{
  switch (p) {
    case Polarization::sigma_minus: return "sigma_minus";
    case Polarization::sigma_plus: return "sigma_plus";
    case Polarization::pi: return "pi";
  }
  return "?";
}

inline std::string_view to_string(SchemeId s)
{
  switch (s) {
    case SchemeId::fig1_asym: return "fig1_asym";
    case SchemeId::fig10_sym: return "fig10_sym";
    case SchemeId::fig11_f1: return "fig11_f1";
  }
  return "?";
}

inline std::string_view to_string(DrivePolarization p)
{
  switch (p) {
    case DrivePolarization::sigma_minus: return "sigma_minus";
    case DrivePolarization::sigma_plus: return "sigma_plus";
    case DrivePolarization::linear: return "linear";
    case DrivePolarization::pi: return "pi";
  }
  return "?";
}

inline std::optional<SchemeId> parse_scheme_id(std::string_view s)
{
  for (auto id : {SchemeId::fig1_asym, SchemeId::fig10_sym, SchemeId::fig11_f1})
    if (to_string(id) == s) return id;
  return std::nullopt;
}

inline std::optional<DrivePolarization> parse_drive_polarization(std::string_view s)
{
  for (auto p : {DrivePolarization::sigma_minus, DrivePolarization::sigma_plus,
                 DrivePolarization::linear, DrivePolarization::pi})
    if (to_string(p) == s) return p;
  return std::nullopt;
}

/// Polarization of the absorbed photon for lower -> upper, by m_upper - m_lower.
inline std::optional<Polarization> polarization_of(int m_lower, int m_upper)
{
  switch (m_upper - m_lower) {
    case -1: return Polarization::sigma_minus;
    case 0: return Polarization::pi;
    case 1: return Polarization::sigma_plus;
    default: return std::nullopt;
  }
}

inline int ground_f(Manifold m) { return m == Manifold::ground_f1 ? 1 : 2; }

/// Signed dipole factor for 5S1/2 (F, m) <-> 5P1/2 (F', m'), J = J' = 1/2, I = 3/2.
/// Zero for any pair forbidden by |dm| > 1 or |dF| > 1.
inline double hyperfine_cg(int f, int m, int fp, int mp)
{
  return hyperfine_dipole_factor(1, 1, 3, 2 * f, 2 * m, 2 * fp, 2 * mp);
}

struct Transition {
  SublevelId lower;
  SublevelId upper;
  Polarization polarization;
  double cg;          ///< effective factor used by coherent couplings and dipoles
  double natural_cg;  ///< angular-momentum value, used for spontaneous decay
  double dipole;      ///< C m, cg times the reduced dipole
};

struct BaseFrequencies {
  double omega_ac;  ///< rad/s, F=1 -> F' optical frequency
  double omega_cb;  ///< rad/s, F=2 -> F' optical frequency
};

inline constexpr double rb87_ground_splitting = two_pi * 6.834682610904e9;  // rad/s

struct LevelScheme {
  SchemeId id = SchemeId::fig1_asym;
  int excited_f = 2;
  std::vector<SublevelId> sublevels;
  std::vector<Transition> transitions;
  Polarization coupling_polarization = Polarization::sigma_minus;
  BaseFrequencies base_frequencies{};
  double reduced_dipole = rb87_d1_reduced_dipole;
  std::optional<int> far_excited_f;  ///< F' of the off-resonant manifold, if modelled
  double far_level_detuning = 0.0;   ///< rad/s
  std::vector<Transition> far_transitions;

  std::size_t size() const { return sublevels.size(); }

  std::size_t index_of(SublevelId s) const
  {
    auto it = std::find(sublevels.begin(), sublevels.end(), s);
    if (it == sublevels.end()) throw ConfigError("sublevel not present in level scheme");
    return static_cast<std::size_t>(it - sublevels.begin());
  }

  std::string label(SublevelId s) const
  {
    switch (s.manifold) {
      case Manifold::ground_f1: return "a" + std::to_string(s.m + 2);
      case Manifold::ground_f2: return "b" + std::to_string(s.m + 3);
      case Manifold::excited: return "c" + std::to_string(s.m + excited_f + 1);
    }
    return "?";
  }

  std::string label(std::size_t index) const { return label(sublevels.at(index)); }

  std::optional<SublevelId> parse_label(std::string_view text) const
  {
    if (text.size() < 2) return std::nullopt;
    int k = 0;
    for (char ch : text.substr(1)) {
      if (ch < '0' || ch > '9') return std::nullopt;
      k = 10 * k + (ch - '0');
    }
    SublevelId s{};
    switch (text[0]) {
      case 'a': s = {Manifold::ground_f1, k - 2}; break;
      case 'b': s = {Manifold::ground_f2, k - 3}; break;
      case 'c': s = {Manifold::excited, k - excited_f - 1}; break;
      default: return std::nullopt;
    }
    if (std::find(sublevels.begin(), sublevels.end(), s) == sublevels.end()) return std::nullopt;
    return s;
  }

  const Transition* find_transition(SublevelId lower, SublevelId upper) const
  {
    for (const auto& t : transitions)
      if (t.lower == lower && t.upper == upper) return &t;
    return nullptr;
  }
};

/// Dipole factor between a ground sublevel and an excited sublevel of a
/// manifold with the given F'. Forbidden pairs give exactly 0.
inline double clebsch_gordan(SublevelId lower, SublevelId upper, int excited_f)
{
  if (lower.manifold == Manifold::excited || upper.manifold != Manifold::excited) return 0.0;
  return hyperfine_cg(ground_f(lower.manifold), lower.m, excited_f, upper.m);
}

inline double clebsch_gordan(const LevelScheme& scheme, SublevelId lower, SublevelId upper)
{
  return clebsch_gordan(lower, upper, scheme.excited_f);
}

namespace detail {

inline std::vector<Transition> transitions_to(int excited_f, double reduced_dipole,
                                              const std::vector<SublevelId>& grounds)
{
  std::vector<Transition> out;
  for (const auto& g : grounds) {
    for (int mp = -excited_f; mp <= excited_f; ++mp) {
      auto pol = polarization_of(g.m, mp);
      if (!pol) continue;
      const SublevelId up{Manifold::excited, mp};
      const double cg = clebsch_gordan(g, up, excited_f);
      out.push_back({g, up, *pol, cg, cg, cg * reduced_dipole});
    }
  }
  return out;
}

}  // namespace detail

inline LevelScheme build_level_scheme(SchemeId id)
{
  LevelScheme s;
  s.id = id;
  s.excited_f = (id == SchemeId::fig11_f1) ? 1 : 2;
  s.coupling_polarization =
      (id == SchemeId::fig10_sym) ? Polarization::pi : Polarization::sigma_minus;

  std::vector<SublevelId> grounds;
  for (int m = -1; m <= 1; ++m) grounds.push_back({Manifold::ground_f1, m});
  for (int m = -2; m <= 2; ++m) grounds.push_back({Manifold::ground_f2, m});
  s.sublevels = grounds;
  for (int m = -s.excited_f; m <= s.excited_f; ++m) s.sublevels.push_back({Manifold::excited, m});

  s.transitions = detail::transitions_to(s.excited_f, s.reduced_dipole, grounds);

  const double omega_ac = two_pi * speed_of_light / rb87_d1_wavelength;
  s.base_frequencies = {omega_ac, omega_ac - rb87_ground_splitting};

  if (s.excited_f == 2) {
    s.far_excited_f = 1;
    s.far_level_detuning = mhz(816.0);
    std::vector<SublevelId> f2(grounds.begin() + 3, grounds.end());
    s.far_transitions = detail::transitions_to(1, s.reduced_dipole, f2);
  }
  return s;
}

/// Replace the effective factor of one transition (given by its a/b/c labels).
/// The natural value, and hence spontaneous-decay branching, is untouched.
inline void override_cg(LevelScheme& scheme, std::string_view lower, std::string_view upper,
                        double value)
{
  auto lo = scheme.parse_label(lower);
  auto up = scheme.parse_label(upper);
  if (!lo || !up)
    throw ConfigError("cg override names unknown sublevel: " + std::string(lower) + "-" +
                      std::string(upper));
  for (auto& t : scheme.transitions) {
    if (t.lower == *lo && t.upper == *up) {
      t.cg = value;
      t.dipole = value * scheme.reduced_dipole;
      return;
    }
  }
  throw ConfigError("cg override on a dipole-forbidden pair: " + std::string(lower) + "-" +
                    std::string(upper));
}

//
// Drives
//

struct FieldDrive {
  Beam which = Beam::probe;
  DrivePolarization polarization = DrivePolarization::linear;
  double rabi_scale = 0.0;  ///< rad/s
  double detuning = 0.0;    ///< rad/s
};

inline Manifold drive_manifold(Beam b)
{
  return b == Beam::probe ? Manifold::ground_f1 : Manifold::ground_f2;
}

inline bool polarization_contains(DrivePolarization d, Polarization p)
{
  switch (d) {
    case DrivePolarization::sigma_minus: return p == Polarization::sigma_minus;
    case DrivePolarization::sigma_plus: return p == Polarization::sigma_plus;
    case DrivePolarization::linear: return p != Polarization::pi;
    case DrivePolarization::pi: return p == Polarization::pi;
  }
  return false;
}

inline bool drive_addresses(const FieldDrive& drive, const Transition& t)
{
  return t.lower.manifold == drive_manifold(drive.which) &&
         polarization_contains(drive.polarization, t.polarization);
}

/// Largest natural |cg| among the transitions a drive of this beam and
/// polarization family can address. Circular and linear drives share one
/// normalization so a single rabi_scale describes both circular components.
inline double cg_normalization(const LevelScheme& scheme, Beam beam, DrivePolarization pol)
{
  const DrivePolarization family =
      pol == DrivePolarization::pi ? DrivePolarization::pi : DrivePolarization::linear;
  double best = 0.0;
  for (const auto& t : scheme.transitions)
    if (t.lower.manifold == drive_manifold(beam) && polarization_contains(family, t.polarization))
      best = std::max(best, std::abs(t.natural_cg));
  return best;
}

/// Rabi frequency Omega_t = rabi_scale * cg_t / cg_norm of one transition.
inline double transition_rabi(const LevelScheme& scheme, const FieldDrive& drive,
                              const Transition& t)
{
  if (!drive_addresses(drive, t)) return 0.0;
  const double norm = cg_normalization(scheme, drive.which, drive.polarization);
  return norm > 0.0 ? drive.rabi_scale * t.cg / norm : 0.0;
}

/// Throws ConfigError when a drive's polarization cannot be used with the scheme.
inline void check_drive_polarization(const LevelScheme& scheme, const FieldDrive& drive)
{
  if (drive.which == Beam::coupling) {
    const bool ok = (scheme.coupling_polarization == Polarization::pi)
                        ? drive.polarization == DrivePolarization::pi
                        : drive.polarization == DrivePolarization::sigma_minus;
    if (!ok)
      throw ConfigError("coupling polarization " + std::string(to_string(drive.polarization)) +
                        " does not match scheme " + std::string(to_string(scheme.id)));
  } else if (drive.polarization == DrivePolarization::pi) {
    throw ConfigError("probe polarization must be sigma_minus, sigma_plus or linear");
  }
}

/// Coupling drive with the polarization the scheme prescribes.
inline FieldDrive coupling_drive(const LevelScheme& scheme, double rabi_scale, double detuning = 0.0)
{
  return {Beam::coupling,
          scheme.coupling_polarization == Polarization::pi ? DrivePolarization::pi
                                                           : DrivePolarization::sigma_minus,
          rabi_scale, detuning};
}

//
// Lambda sub-systems
//

struct LambdaSystem {
  SublevelId a;  ///< ground F=1 (probe)
  SublevelId c;  ///< excited
  SublevelId b;  ///< ground F=2 (coupling)
  Polarization probe_polarization;
};

inline constexpr double zero_strength = 1e-12;

inline std::vector<LambdaSystem> lambda_systems(const LevelScheme& scheme)
{
  std::vector<LambdaSystem> out;
  for (const auto& p : scheme.transitions) {
    if (p.lower.manifold != Manifold::ground_f1 || p.polarization == Polarization::pi) continue;
    if (std::abs(p.cg) <= zero_strength) continue;
    for (const auto& c : scheme.transitions) {
      if (c.lower.manifold != Manifold::ground_f2 || c.upper != p.upper) continue;
      if (c.polarization != scheme.coupling_polarization || std::abs(c.cg) <= zero_strength)
        continue;
      out.push_back({p.lower, p.upper, c.lower, p.polarization});
    }
  }
  return out;
}

struct LambdaCensus {
  int sigma_minus = 0;
  int sigma_plus = 0;
};

inline LambdaCensus lambda_census(const LevelScheme& scheme)
{
  LambdaCensus n;
  for (const auto& l : lambda_systems(scheme))
    (l.probe_polarization == Polarization::sigma_minus ? n.sigma_minus : n.sigma_plus)++;
  return n;
}

//
// ac Stark shifts from the off-resonant excited manifold
//

struct StarkShifts {
  std::array<double, 5> b{};  ///< rad/s, indexed b1..b5 -> 0..4
  bool far_level_missing = false;

  double of(SublevelId s) const
  {
    return s.manifold == Manifold::ground_f2 ? b.at(static_cast<std::size_t>(s.m + 2)) : 0.0;
  }
  double b3() const { return b[2]; }
  double b4() const { return b[3]; }
  double b5() const { return b[4]; }
};

inline double stark_shift(double rabi, double far_detuning)
{
  return rabi * rabi / (4.0 * far_detuning);
}

/// delta_b = sum over far-manifold transitions the coupling addresses of
/// |Omega_far|^2 / (4 Delta), with Omega_far normalized like the resonant coupling.
inline StarkShifts stark_shifts(const FieldDrive& coupling, const LevelScheme& scheme)
{
  StarkShifts out;
  if (!scheme.far_excited_f || scheme.far_level_detuning == 0.0) {
    out.far_level_missing = true;
    return out;
  }
  const double norm = cg_normalization(scheme, Beam::coupling, coupling.polarization);
  if (norm == 0.0) return out;
  for (const auto& t : scheme.far_transitions) {
    if (!drive_addresses(coupling, t)) continue;
    const double rabi = coupling.rabi_scale * t.cg / norm;
    out.b.at(static_cast<std::size_t>(t.lower.m + 2)) +=
        stark_shift(rabi, scheme.far_level_detuning);
  }
  return out;
}

//
// Power calibration
//

struct PowerCalibration {
  double reference_power;  ///< W
  double reference_rabi;   ///< rad/s
};

inline constexpr PowerCalibration coupling_calibration{15e-3, mhz(100.0)};
inline constexpr PowerCalibration probe_calibration{150e-6, mhz(10.0)};

inline PowerCalibration default_calibration(Beam b)
{
  return b == Beam::coupling ? coupling_calibration : probe_calibration;
}

inline double rabi_from_power(double power, const PowerCalibration& cal)
{
  if (!(power >= 0.0)) throw std::domain_error("beam power must be non-negative");
  return cal.reference_rabi * std::sqrt(power / cal.reference_power);
}

inline double rabi_from_power(double power, Beam which)
{
  return rabi_from_power(power, default_calibration(which));
}

//
// Zeeman
//

struct ZeemanField {
  double b_field = 0.0;  ///< T, along the beam axis
  double g_f1 = -0.5;
  double g_f2 = 0.5;
  double g_excited_f2 = 1.0 / 6.0;
  double g_excited_f1 = -1.0 / 6.0;

  double g_factor(Manifold m, int excited_f) const
  {
    switch (m) {
      case Manifold::ground_f1: return g_f1;
      case Manifold::ground_f2: return g_f2;
      case Manifold::excited: return excited_f == 1 ? g_excited_f1 : g_excited_f2;
    }
    return 0.0;
  }
};

inline double zeeman_shift(SublevelId s, const ZeemanField& field, int excited_f = 2)
{
  return s.m * field.g_factor(s.manifold, excited_f) * bohr_magneton * field.b_field / hbar;
}

//
// Table export
//

inline void write_cg_csv(std::ostream& os, const LevelScheme& scheme)
{
  os << "lower,upper,polarization,cg\n";
  char buf[32];
  for (const auto& t : scheme.transitions) {
    std::snprintf(buf, sizeof buf, "%.9g", t.cg);
    os << scheme.label(t.lower) << ',' << scheme.label(t.upper) << ',' << to_string(t.polarization)
       << ',' << buf << '\n';
  }
}

}  // namespace eitpol

#endif  // EITPOL_ATOMIC_MODEL_HPP
