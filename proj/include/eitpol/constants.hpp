#ifndef EITPOL_CONSTANTS_HPP
#define EITPOL_CONSTANTS_HPP

#include <numbers>

namespace eitpol {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * pi;

//
// CODATA values, SI units
//
inline constexpr double hbar = 1.054571817e-34;            // J s
inline constexpr double planck = two_pi * hbar;            // J s
inline constexpr double epsilon0 = 8.8541878128e-12;       // F/m
inline constexpr double boltzmann = 1.380649e-23;          // J/K
inline constexpr double bohr_magneton = 9.2740100783e-24;  // J/T
inline constexpr double speed_of_light = 299792458.0;      // m/s
inline constexpr double atomic_mass_unit = 1.66053906660e-27;

//
// 87Rb D1 line defaults (standard alkali data tables)
//
inline constexpr double rb87_mass = 86.909180527 * atomic_mass_unit;  // kg
inline constexpr double rb87_d1_wavelength = 794.979e-9;               // m
inline constexpr double rb87_d1_reduced_dipole = 2.537e-29;            // C m, <J=1/2||er||J'=1/2>

/// Angular frequency for a frequency given in MHz of nu.
constexpr double mhz(double nu_mhz) { return two_pi * 1e6 * nu_mhz; }

/// Inverse of mhz().
constexpr double to_mhz(double omega) { return omega / (two_pi * 1e6); }

constexpr double deg(double rad) { return rad * 180.0 / pi; }
constexpr double rad(double degrees) { return degrees * pi / 180.0; }

}  // namespace eitpol

#endif  // EITPOL_CONSTANTS_HPP
