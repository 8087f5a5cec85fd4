#ifndef EITPOL_DETECTION_HPP
#define EITPOL_DETECTION_HPP

#include <cmath>
#include <complex>

#include "eitpol/errors.hpp"
#include "eitpol/spectra.hpp"

namespace eitpol {

struct JonesVector {
  cplx ex;
  cplx ey;

  double intensity() const { return std::norm(ex) + std::norm(ey); }
};

/// Circular decomposition E = c+ [1; i] + c- [1; -i], each component picking
/// up exp(-i k n d) exp(-alpha d / 2) across the cell. The mean phase k nbar d
/// enters as one global factor; the components carry only the half-difference
/// k (n+ - n-) d / 2, taken from pair.index_difference.
inline JonesVector propagate_cell(const JonesVector& in, const SusceptibilityPair& pair,
                                  const MediumParams& medium)
{
  const double k = medium.wavenumber();
  const double d = medium.length;
  const double half = 0.5 * k * pair.index_difference * d;
  const cplx global = std::exp(-imag_unit * std::fmod(0.5 * k * (pair.n_plus + pair.n_minus) * d, two_pi));
  const cplx c_plus = 0.5 * (in.ex - imag_unit * in.ey);
  const cplx c_minus = 0.5 * (in.ex + imag_unit * in.ey);
  const cplx t_plus = std::exp(-imag_unit * half) * std::exp(-0.5 * pair.alpha_plus * d);
  const cplx t_minus = std::exp(imag_unit * half) * std::exp(-0.5 * pair.alpha_minus * d);
  const cplx p = global * c_plus * t_plus;
  const cplx m = global * c_minus * t_minus;
  return {p + m, imag_unit * (p - m)};
}

struct DetectorSignals {
  double i_d1 = 0.0;
  double i_d2 = 0.0;
  double i_d3 = 0.0;
  double i_d4 = 0.0;
  double i0 = 1.0;
};

/// Ideal 50/50 beam splitter. Transmitted arm: PBS, D2 on x and D1 on y.
/// Reflected arm: half-wave plate with its axis at 22.5 deg, then PBS onto
/// D3 (x) and D4 (y).
inline DetectorSignals detector_intensities(const JonesVector& out, double i0)
{
  DetectorSignals s;
  s.i0 = i0;
  s.i_d1 = 0.5 * std::norm(out.ey);
  s.i_d2 = 0.5 * std::norm(out.ex);
  const cplx hx = 0.5 * (-out.ex + out.ey);
  const cplx hy = 0.5 * (out.ex + out.ey);
  s.i_d3 = std::norm(hx);
  s.i_d4 = std::norm(hy);
  return s;
}

/// Closed-form intensities for an x-polarized input of intensity I0, rotated
/// by phi with circular amplitude losses alpha+ d and alpha- d.
inline DetectorSignals closed_form_intensities(double i0, double phi, double alpha_plus_d,
                                               double alpha_minus_d)
{
  const double ep = std::exp(-alpha_plus_d);
  const double em = std::exp(-alpha_minus_d);
  const double cross = 2.0 * std::exp(-0.5 * (alpha_plus_d + alpha_minus_d));
  DetectorSignals s;
  s.i0 = i0;
  s.i_d1 = i0 / 8.0 * (ep + em - cross * std::cos(2.0 * phi));
  s.i_d2 = i0 / 8.0 * (ep + em + cross * std::cos(2.0 * phi));
  s.i_d3 = i0 / 8.0 * (ep + em - cross * std::sin(2.0 * phi));
  s.i_d4 = i0 / 8.0 * (ep + em + cross * std::sin(2.0 * phi));
  return s;
}

/// phi = atan2(-(I3 - I4), -(I1 - I2)) / 2, in (-pi/2, pi/2].
/// Throws NumericalError when both differences are below floor * I0.
inline double recover_angle(const DetectorSignals& s, double floor = 1e-12)
{
  const double d12 = s.i_d1 - s.i_d2;
  const double d34 = s.i_d3 - s.i_d4;
  if (std::abs(d12) < floor * s.i0 && std::abs(d34) < floor * s.i0)
    throw NumericalError("indeterminate angle: detector differences below floor");
  double phi = 0.5 * std::atan2(-d34, -d12);
  if (phi <= -0.5 * pi) phi += pi;
  return phi;
}

}  // namespace eitpol

#endif  // EITPOL_DETECTION_HPP
