#ifndef EITPOL_OUTPUT_HPP
#define EITPOL_OUTPUT_HPP

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "eitpol/config.hpp"
#include "eitpol/scenarios.hpp"

namespace eitpol {

/// Fixed 9-significant-digit formatting used for every CSV value.
inline std::string fmt9(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

namespace detail {

inline void csv_row(std::ostream& os, const std::vector<double>& values)
{
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << fmt9(values[i]);
  os << '\n';
}

}  // namespace detail

inline void write_spectrum_csv(std::ostream& os, const SweepResult& r)
{
  os << "detuning_MHz,re_chi_minus,im_chi_minus,re_chi_plus,im_chi_plus,n_plus_minus_n_minus,"
        "alpha_plus_per_m,alpha_minus_per_m,phi_deg\n";
  for (const auto& p : r.points)
    detail::csv_row(os, {to_mhz(p.detuning), p.pair.chi_minus.real(), p.pair.chi_minus.imag(),
                         p.pair.chi_plus.real(), p.pair.chi_plus.imag(), p.pair.index_difference,
                         p.pair.alpha_plus, p.pair.alpha_minus, deg(p.angle.exact)});
}

inline void write_detector_csv(std::ostream& os, const SweepResult& r)
{
  os << "detuning_MHz,I_D1,I_D2,I_D3,I_D4,phi_recovered_deg\n";
  for (const auto& p : r.points) {
    const auto& d = p.detectors;
    const double phi = p.recovered_angle ? deg(*p.recovered_angle) : std::nan("");
    detail::csv_row(os, {to_mhz(p.detuning), d.i_d1 / d.i0, d.i_d2 / d.i0, d.i_d3 / d.i0,
                         d.i_d4 / d.i0, phi});
  }
}

inline void write_power_scan_csv(std::ostream& os, const std::vector<PowerScanPoint>& scan)
{
  os << "power_mW,rabi_MHz,left_detuning_MHz,left_phi_deg,right_detuning_MHz,right_phi_deg\n";
  const double nan = std::nan("");
  for (const auto& p : scan) {
    const auto& k = p.peaks;
    detail::csv_row(os, {p.power * 1e3, to_mhz(p.rabi), k ? to_mhz(k->left_detuning) : nan,
                         k ? deg(k->left_phi) : nan, k ? to_mhz(k->right_detuning) : nan,
                         k ? deg(k->right_phi) : nan});
  }
}

inline double max_abs_phi(const SweepResult& r)
{
  double m = 0.0;
  for (const auto& p : r.points) m = std::max(m, std::abs(p.angle.exact));
  return m;
}

inline void write_temperature_scan_csv(std::ostream& os, const std::vector<TemperatureScanPoint>& scan)
{
  os << "temperature_C,density_cm3,thermal_speed_m_s,left_detuning_MHz,left_phi_deg,"
        "right_detuning_MHz,right_phi_deg,max_abs_phi_deg\n";
  const double nan = std::nan("");
  for (const auto& t : scan) {
    const auto& k = t.peaks;
    detail::csv_row(os, {t.temperature - 273.15, t.medium.density * 1e-6, t.medium.thermal_speed,
                         k ? to_mhz(k->left_detuning) : nan, k ? deg(k->left_phi) : nan,
                         k ? to_mhz(k->right_detuning) : nan, k ? deg(k->right_phi) : nan,
                         deg(max_abs_phi(t.sweep))});
  }
}

inline void write_transmission_csv(std::ostream& os, const TransmissionCurve& minus,
                                   const TransmissionCurve& plus)
{
  os << "detuning_MHz,transmission_sigma_minus,transmission_sigma_plus\n";
  for (std::size_t i = 0; i < minus.detuning.size(); ++i)
    detail::csv_row(os, {to_mhz(minus.detuning[i]), minus.transmission[i], plus.transmission[i]});
}

inline void write_peaks_csv(std::ostream& os, const std::vector<Peak>& minus, const std::vector<Peak>& plus)
{
  os << "component,index,position_MHz,transmission,prominence,width_MHz\n";
  auto rows = [&](const char* name, const std::vector<Peak>& peaks) {
    for (std::size_t i = 0; i < peaks.size(); ++i) {
      const auto& p = peaks[i];
      os << name << ',' << i << ',' << fmt9(to_mhz(p.position)) << ',' << fmt9(p.height) << ','
         << fmt9(p.prominence) << ',' << fmt9(to_mhz(p.width)) << '\n';
    }
  };
  rows("sigma_minus", minus);
  rows("sigma_plus", plus);
}

/// Resolved physical parameters in SI units, for the metadata sidecar.
inline json resolved_parameters(const ScenarioConfig& c)
{
  const auto& s = c.system;
  const auto stark = s.stark();
  json j;
  j["units"] = "SI; angular frequencies in rad/s";
  j["probe"] = {{"polarization", std::string(to_string(s.probe.polarization))},
                {"rabi_rad_s", s.probe.rabi_scale},
                {"rabi_MHz", to_mhz(s.probe.rabi_scale)}};
  j["coupling"] = {{"polarization", std::string(to_string(s.coupling.polarization))},
                   {"rabi_rad_s", s.coupling.rabi_scale},
                   {"rabi_MHz", to_mhz(s.coupling.rabi_scale)},
                   {"detuning_rad_s", s.coupling.detuning}};
  j["rates_rad_s"] = {{"gamma_ca", s.rates.gamma_ca},
                      {"gamma_ba", s.rates.gamma_ba},
                      {"gamma_a", s.rates.zeeman_coherence_decay()},
                      {"gamma", s.rates.gamma},
                      {"ground_exchange", s.rates.exchange_rate()}};
  j["stark_shifts_MHz"] = json::array();
  for (double d : stark.b) j["stark_shifts_MHz"].push_back(to_mhz(d));
  j["stark_far_level_missing"] = stark.far_level_missing;
  j["far_level_detuning_rad_s"] = s.scheme.far_level_detuning;
  j["magnetic_field_T"] = s.zeeman.b_field;
  j["medium"] = {{"density_m3", c.medium.density},
                 {"temperature_K", c.medium.temperature},
                 {"thermal_speed_m_s", c.medium.thermal_speed},
                 {"length_m", c.medium.length},
                 {"wavelength_m", c.medium.wavelength}};
  j["calibration"] = {{"coupling_reference_power_W", c.coupling_calibration.reference_power},
                      {"coupling_reference_rabi_rad_s", c.coupling_calibration.reference_rabi},
                      {"density_anchor_temperature_K", c.density_anchor.temperature},
                      {"density_anchor_density_m3", c.density_anchor.density}};
  j["quadrature"] = {{"rel_tol", c.doppler.quadrature.rel_tol},
                     {"abs_tol", c.doppler.quadrature.abs_tol},
                     {"max_intervals", c.doppler.quadrature.max_intervals},
                     {"span_in_V", c.doppler.span}};
  j["cg_table"] = json::array();
  for (const auto& t : s.scheme.transitions)
    j["cg_table"].push_back({s.scheme.label(t.lower), s.scheme.label(t.upper), t.cg});
  return j;
}

inline json populations_json(const GroundPopulations& p)
{
  return json::array({p[0], p[1], p[2]});
}

}  // namespace eitpol

#endif  // EITPOL_OUTPUT_HPP
