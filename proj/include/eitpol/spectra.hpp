#ifndef EITPOL_SPECTRA_HPP
#define EITPOL_SPECTRA_HPP

// Doppler-averaged susceptibilities of the two circular probe components and
// the resulting polarization rotation angle.

#include <cmath>
#include <complex>
#include <vector>

#include "eitpol/constants.hpp"
#include "eitpol/dynamics.hpp"
#include "eitpol/errors.hpp"
#include "eitpol/quadrature.hpp"

namespace eitpol {

struct MediumParams {
  double density = 1.62e17;                  ///< atoms / m^3
  double temperature = 328.15;               ///< K
  double thermal_speed = 0.0;                ///< m/s, V = sqrt(2 kB T / m)
  double length = 0.05;                      ///< m
  double wavelength = rb87_d1_wavelength;    ///< m

  double wavenumber() const { return two_pi / wavelength; }
};

inline double thermal_speed(double temperature, double mass = rb87_mass)
{
  return std::sqrt(2.0 * boltzmann * temperature / mass);
}

//
// Rubidium vapor pressure: solid-phase curve below the 312.46 K melting
// point, liquid-phase curve above it (torr, T in kelvin).
//

inline constexpr double rb_melting_point = 312.46;  // K
inline constexpr double torr = 133.322368;          // Pa

inline double rb_vapor_pressure(double temperature)
{
  if (!(temperature >= 250.0 && temperature <= 550.0))
    throw ConfigError("vapor-pressure curve is calibrated for 250 K .. 550 K");
  const double t = temperature;
  const double log10_torr =
      (t < rb_melting_point)
          ? -94.04826 - 1961.258 / t - 0.03771687 * t + 42.57526 * std::log10(t)
          : 15.88253 - 4529.635 / t + 0.00058663 * t - 2.99138 * std::log10(t);
  return std::pow(10.0, log10_torr) * torr;
}

/// Ideal-gas number density of saturated Rb vapor, atoms / m^3.
inline double vapor_number_density(double temperature)
{
  return rb_vapor_pressure(temperature) / (boltzmann * temperature);
}

struct DensityAnchor {
  double temperature = 328.15;  ///< K
  double density = 1.62e17;     ///< atoms / m^3
};

/// Vapor curve rescaled to pass through the anchor point.
inline double calibrated_density(double temperature, const DensityAnchor& anchor = {})
{
  return anchor.density * vapor_number_density(temperature) /
         vapor_number_density(anchor.temperature);
}

inline MediumParams medium_at_temperature(double temperature, const DensityAnchor& anchor = {},
                                          double length = 0.05,
                                          double wavelength = rb87_d1_wavelength)
{
  return {calibrated_density(temperature, anchor), temperature, thermal_speed(temperature), length,
          wavelength};
}

/// Normalized one-dimensional Maxwellian, N0 / (V sqrt(pi)) exp(-u^2 / V^2).
inline double maxwellian_weight(double u, double v, double n0 = 1.0)
{
  return n0 / (v * std::sqrt(pi)) * std::exp(-(u * u) / (v * v));
}

//
// Doppler factors
//

struct DopplerSpec {
  QuadratureSpec quadrature{};
  double span = 6.0;  ///< integrate over u in [-span V, span V]
};

struct DopplerFactor {
  cplx value;
  double error = 0.0;
  int evaluations = 0;
};

/// F = integral of w(u) / (A - i k u) du, with w the normalized Maxwellian.
/// A = gamma_ca + i(E_c - E_a) + EIT term; only the one-photon part sees the
/// Doppler shift, the two-photon term is velocity independent.
inline DopplerFactor doppler_factor(cplx a, double k, double v, const DopplerSpec& spec = {})
{
  if (v <= 0.0) return {1.0 / a, 0.0, 1};
  const double lim = spec.span * v;
  std::vector<double> br{-lim};
  const double pole = a.imag() / k;
  if (pole > -lim && pole < lim) br.push_back(pole);
  br.push_back(lim);
  const double norm = 1.0 / (v * std::sqrt(pi));
  auto integrand = [&](double u) {
    return norm * std::exp(-(u * u) / (v * v)) / (a - imag_unit * (k * u));
  };
  const auto r = integrate_adaptive(integrand, br, spec.quadrature);
  return {r.value, r.error, r.evaluations};
}

inline DopplerFactor doppler_factor(const ChannelRates& rates, const MediumParams& medium,
                                    const DopplerSpec& spec = {})
{
  return doppler_factor(rates.total(), medium.wavenumber(), medium.thermal_speed, spec);
}

//
// Susceptibilities
//

struct SusceptibilityPair {
  cplx chi_minus;
  cplx chi_plus;
  double n_minus = 1.0;
  double n_plus = 1.0;
  double alpha_minus = 0.0;  ///< 1/m
  double alpha_plus = 0.0;   ///< 1/m
  double index_difference = 0.0;  ///< n+ - n-, evaluated without cancellation
};

inline double refractive_index(cplx chi) { return std::sqrt(1.0 + chi.real()); }

inline double absorption_coefficient(cplx chi, double k)
{
  return 2.0 * k * std::sqrt(1.0 + chi).imag();
}

inline SusceptibilityPair make_susceptibility_pair(cplx chi_minus, cplx chi_plus, double wavelength)
{
  const double k = two_pi / wavelength;
  SusceptibilityPair p;
  p.chi_minus = chi_minus;
  p.chi_plus = chi_plus;
  p.n_minus = refractive_index(chi_minus);
  p.n_plus = refractive_index(chi_plus);
  p.alpha_minus = absorption_coefficient(chi_minus, k);
  p.alpha_plus = absorption_coefficient(chi_plus, k);
  p.index_difference = (chi_plus.real() - chi_minus.real()) / (p.n_plus + p.n_minus);
  return p;
}

/// chi_t = i N mu_t^2 rho_aa F_t / (hbar eps0) for one channel.
inline cplx channel_susceptibility(double density, double dipole, double population, cplx factor)
{
  return imag_unit * density * dipole * dipole * population * factor / (hbar * epsilon0);
}

/// chi- and chi+ as the sums over the sigma- and sigma+ channels.
inline SusceptibilityPair susceptibilities(const std::vector<ProbeChannel>& channels,
                                           const GroundPopulations& pops,
                                           const std::vector<cplx>& factors,
                                           const MediumParams& medium)
{
  if (factors.size() != channels.size())
    throw ConfigError("one Doppler factor per probe channel is required");
  cplx minus = 0.0, plus = 0.0;
  for (std::size_t i = 0; i < channels.size(); ++i) {
    const auto& ch = channels[i];
    const cplx chi = channel_susceptibility(medium.density, ch.dipole,
                                            pops[static_cast<std::size_t>(ch.a.m + 1)], factors[i]);
    (ch.polarization == Polarization::sigma_minus ? minus : plus) += chi;
  }
  return make_susceptibility_pair(minus, plus, medium.wavelength);
}

struct RotationAngle {
  double approx;  ///< (pi / (2 lambda)) Re(chi+ - chi-) d
  double exact;   ///< (pi / lambda) (n+ - n-) d
};

inline RotationAngle rotation_angle(const SusceptibilityPair& pair, const MediumParams& medium)
{
  const double c = pi / medium.wavelength * medium.length;
  return {0.5 * c * (pair.chi_plus - pair.chi_minus).real(), c * pair.index_difference};
}

/// Susceptibilities at the probe/coupling detunings stored in `sys`.
struct SpectrumEvaluation {
  SusceptibilityPair pair;
  RotationAngle angle;
  std::vector<DopplerFactor> factors;
};

inline SpectrumEvaluation evaluate_susceptibilities(const AtomicSystem& sys,
                                                    const GroundPopulations& pops,
                                                    const MediumParams& medium,
                                                    const DopplerSpec& spec = {})
{
  const auto h = sys.hamiltonian();
  const auto channels = probe_channels(sys.scheme, sys.coupling);
  SpectrumEvaluation out;
  std::vector<cplx> values;
  for (const auto& ch : channels) {
    out.factors.push_back(doppler_factor(channel_rates(ch, sys.scheme, h, sys.rates), medium, spec));
    values.push_back(out.factors.back().value);
  }
  out.pair = susceptibilities(channels, pops, values, medium);
  out.angle = rotation_angle(out.pair, medium);
  return out;
}

}  // namespace eitpol

#endif  // EITPOL_SPECTRA_HPP
