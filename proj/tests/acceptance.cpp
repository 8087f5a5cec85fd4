// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "eitpol/detection.hpp"
#include "eitpol/scenarios.hpp"
#include "oracles.hpp"

using namespace eitpol;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string format(const char* fmt, auto... args)
{
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

double max_abs_phi(const SweepResult& r)
{
  double m = 0.0;
  for (double v : r.phi()) m = std::max(m, std::abs(v));
  return m;
}

// Reference rotation-spectrum settings: Omega_c = 2pi x 80 MHz, Omega_p = 2pi x 10 MHz, N = 1.8e11 cm^-3, 55 C.
ScenarioConfig reference_config(SchemeId id = SchemeId::fig1_asym)
{
  ScenarioConfig c;
  c.system.scheme = build_level_scheme(id);
  c.system.coupling = coupling_drive(c.system.scheme, mhz(80.0));
  c.medium = medium_at_temperature(328.15);
  c.medium.density = 1.8e17;
  return c;
}

Outcome populations()
{
  struct Row {
    double omega_c;
    GroundPopulations reference;
  };
  const Row rows[] = {{60.0, {0.219, 0.228, 0.066}}, {80.0, {0.226, 0.233, 0.066}}, {100.0, {0.229, 0.235, 0.065}}};
  bool ok = true;
  std::string detail;
  for (const auto& r : rows) {
    AtomicSystem sys;
    sys.coupling.rabi_scale = mhz(r.omega_c);
    const auto p = ground_populations(sys);
    for (int i = 0; i < 3; ++i) ok &= std::abs(p[i] - r.reference[i]) <= 0.015;
    detail += format("%g MHz: (%.4f, %.4f, %.4f) vs (%.3f, %.3f, %.3f); ", r.omega_c, p[0], p[1], p[2],
                     r.reference[0], r.reference[1], r.reference[2]);
  }
  return {ok, detail};
}

Outcome power_calibration()
{
  const double powers[] = {6e-3, 10e-3, 15e-3};
  const double quoted[] = {63.0, 82.0, 100.0};
  bool ok = true;
  std::string detail;
  for (int i = 0; i < 3; ++i) {
    const double f = to_mhz(rabi_from_power(powers[i], Beam::coupling));
    ok &= std::abs(f - quoted[i]) <= 1.0;
    detail += format("%g mW -> %.2f MHz (quoted %g); ", powers[i] * 1e3, f, quoted[i]);
  }
  return {ok, detail};
}

Outcome symmetric_null()
{
  const auto r = sweep_probe_detuning(reference_config(SchemeId::fig10_sym), 0);
  const double m = max_abs_phi(r);
  return {m < 1e-10 && r.points.size() == 1201, format("max|phi| = %.3e rad over %zu points", m, r.points.size())};
}

Outcome weak_rotation_f1()
{
  auto cfg = reference_config(SchemeId::fig11_f1);
  cfg.system.stark_enabled = false;
  const double m = deg(max_abs_phi(sweep_probe_detuning(cfg, 0)));
  return {m >= 1.0 && m <= 4.0, format("max|phi| = %.3f deg, window [1, 4]", m)};
}

Outcome large_rotation()
{
  ScenarioConfig cfg;
  cfg.system.coupling.rabi_scale = mhz(100.0);
  cfg.medium = medium_at_temperature(338.15);
  const auto r = sweep_probe_detuning(cfg, 0);
  const auto pk = find_dispersion_peaks(r, 0.0, cfg.peak_window);
  const double peak = pk ? deg(std::max(std::abs(pk->left_phi), std::abs(pk->right_phi))) : 0.0;
  return {std::abs(peak - 45.0) <= 15.0,
          format("N = %.3e cm^-3, peak |phi| = %.2f deg, target 45 +/- 15", cfg.medium.density * 1e-6, peak)};
}

Outcome spectrum_shape()
{
  const auto cfg = reference_config();
  const auto r = sweep_probe_detuning(cfg, 0);
  const auto c = count_extrema(r.abscissa(), r.phi(), 0.0, cfg.peak_window);
  const auto pk = find_dispersion_peaks(r, 0.0, cfg.peak_window);
  if (!pk) return {false, "no dispersion peak pair found"};
  const double l = deg(pk->left_phi), rr = deg(pk->right_phi);
  const bool unequal = std::abs(std::abs(l) - std::abs(rr)) > 0.01 * std::max(std::abs(l), std::abs(rr));
  return {c.positive_maxima == 1 && c.negative_minima == 1 && l * rr < 0.0 && unequal,
          format("extrema +%d/-%d, left %.3f deg at %.3f MHz, right %.3f deg at %.3f MHz", c.positive_maxima,
                 c.negative_minima, l, to_mhz(pk->left_detuning), rr, to_mhz(pk->right_detuning))};
}

Outcome power_monotonicity()
{
  ScenarioConfig cfg;
  const std::vector<double> powers{6e-3, 8e-3, 10e-3, 12e-3, 15e-3};
  const auto scan = sweep_coupling_power(cfg, powers, 0);
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < scan.size(); ++i) {
    if (!scan[i].peaks) return {false, "peak extraction failed"};
    const double l = std::abs(deg(scan[i].peaks->left_phi)), r = std::abs(deg(scan[i].peaks->right_phi));
    if (i > 0) {
      ok &= l > std::abs(deg(scan[i - 1].peaks->left_phi));
      ok &= r > std::abs(deg(scan[i - 1].peaks->right_phi));
    }
    detail += format("%g mW: |%.2f|/|%.2f|; ", powers[i] * 1e3, l, r);
  }
  return {ok, detail};
}

Outcome detection_round_trip()
{
  MediumParams m;
  std::mt19937 gen(8);
  std::uniform_real_distribution<double> absorb(0.0, 3.0), atten(1e-3, 1.0);
  double worst = 0.0;
  int n = 0;
  for (double phi_deg = -43.9; phi_deg < 44.0; phi_deg += 0.1, ++n) {
    const double phi = rad(phi_deg);
    SusceptibilityPair p;
    p.index_difference = phi * m.wavelength / (pi * m.length);
    p.n_plus = p.n_minus + p.index_difference;
    p.alpha_plus = absorb(gen) / m.length;
    p.alpha_minus = absorb(gen) / m.length;
    auto s = detector_intensities(propagate_cell({1.0, 0.0}, p, m), 1.0);
    worst = std::max(worst, std::abs(recover_angle(s) - phi));
    const double f = atten(gen);
    s.i_d1 *= f;
    s.i_d2 *= f;
    s.i_d3 *= f;
    s.i_d4 *= f;
    worst = std::max(worst, std::abs(recover_angle(s) - phi));
  }
  return {worst < 1e-9, format("%d angles, max error %.2e rad", n, worst)};
}

Outcome eit_census()
{
  // EIT census settings: Omega_p = 2pi x 7.07 MHz, Omega_c = 2pi x 63.2 MHz, 55 C
  ScenarioConfig cfg;
  cfg.system.probe.rabi_scale = mhz(7.07);
  cfg.system.coupling.rabi_scale = mhz(63.2);
  cfg.grid = {mhz(-60.0), mhz(60.0), 1201};
  cfg.system.zeeman.b_field = 10e-4;
  auto count = [&](const ScenarioConfig& c, Polarization pol) {
    const auto t = eit_transmission(c, pol, 0);
    return count_peaks(t.detuning, t.transmission, c.prominence);
  };
  const auto m10 = count(cfg, Polarization::sigma_minus);
  const auto p10 = count(cfg, Polarization::sigma_plus);
  cfg.system.zeeman.b_field = 0.0;
  const auto m0 = count(cfg, Polarization::sigma_minus);
  const auto p0 = count(cfg, Polarization::sigma_plus);
  bool unequal = false;
  std::string shape = "n/a";
  if (m0.size() == 1 && p0.size() == 1) {
    const double dh = std::abs(m0[0].prominence - p0[0].prominence) / std::max(m0[0].prominence, p0[0].prominence);
    const double dw = std::abs(m0[0].width - p0[0].width) / std::max(m0[0].width, p0[0].width);
    unequal = dh > 0.05 || dw > 0.05;
    shape = format("heights %.4f/%.4f, widths %.2f/%.2f MHz", m0[0].prominence, p0[0].prominence,
                   to_mhz(m0[0].width), to_mhz(p0[0].width));
  }
  return {m10.size() == 3 && p10.size() == 2 && m0.size() == 1 && p0.size() == 1 && unequal,
          format("B = 10 G: sigma- %zu, sigma+ %zu; B = 0: sigma- %zu, sigma+ %zu (%s)", m10.size(), p10.size(),
                 m0.size(), p0.size(), shape.c_str())};
}

Outcome numerical_hygiene()
{
  bool ok = true;
  std::string detail;

  // (a) steady-state density matrices
  double worst_rho = 0.0;
  for (auto id : {SchemeId::fig1_asym, SchemeId::fig10_sym, SchemeId::fig11_f1})
    for (double omega_c : {0.0, 60.0, 100.0})
      for (double det : {-30.0, 0.0, 7.0}) {
        AtomicSystem sys;
        sys.scheme = build_level_scheme(id);
        sys.coupling = coupling_drive(sys.scheme, mhz(omega_c));
        sys.probe.detuning = mhz(det);
        const auto rho = steady_state(sys);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho);
        worst_rho = std::max({worst_rho, (rho - rho.adjoint()).cwiseAbs().maxCoeff(),
                              std::abs(rho.trace() - 1.0), std::max(0.0, -eig.eigenvalues().minCoeff())});
      }
  ok &= worst_rho <= 1e-10;
  detail += format("(a) rho defect %.1e; ", worst_rho);

  // (b) Doppler quadrature against a dense trapezoid rule
  std::mt19937 gen(20);
  std::uniform_real_distribution<double> det(-200.0, 200.0), rabi(0.0, 120.0), gca(2.9, 10.0), gba(0.1, 3.0),
      temp(300.0, 360.0);
  double worst_quad = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double d = mhz(det(gen)), om = mhz(rabi(gen)), g1 = mhz(gca(gen)), g2 = mhz(gba(gen));
    const auto m = medium_at_temperature(temp(gen));
    const cplx a = cplx(g1, -d) + 0.25 * om * om / cplx(g2, -d);
    const auto f = doppler_factor(a, m.wavenumber(), m.thermal_speed);
    const auto ref = oracle::trapezoid_doppler(a, m.wavenumber(), m.thermal_speed, 2000001);
    worst_quad = std::max(worst_quad, std::abs(f.value - ref) / std::abs(ref));
  }
  ok &= worst_quad <= 1e-4;
  detail += format("(b) quadrature rel err %.1e; ", worst_quad);

  // (c) closed-form probe coherences against the full solve at Omega_p = 2pi x 1 MHz
  double worst_coh = 0.0;
  for (double omega_c : {60.0, 80.0, 100.0}) {
    AtomicSystem sys;
    sys.probe.rabi_scale = mhz(1.0);
    sys.coupling.rabi_scale = mhz(omega_c);
    const auto rho = steady_state(sys);
    const auto pops = ground_populations(sys.scheme, rho);
    for (const auto& pc : analytic_coherences(sys, pops)) {
      const cplx full = rho(static_cast<Eigen::Index>(sys.scheme.index_of(pc.channel.c)),
                            static_cast<Eigen::Index>(sys.scheme.index_of(pc.channel.a)));
      worst_coh = std::max(worst_coh, std::abs(pc.value - full) / std::abs(full));
    }
  }
  ok &= worst_coh <= 0.05;
  detail += format("(c) coherence rel err %.1e; ", worst_coh);

  // (d) exact vs small-chi angle over the reference rotation spectrum
  const auto r = sweep_probe_detuning(reference_config(), 0);
  double max_chi = 0.0, worst_angle = 0.0;
  for (const auto& p : r.points) {
    max_chi = std::max({max_chi, std::abs(p.pair.chi_minus), std::abs(p.pair.chi_plus)});
    if (p.angle.exact != 0.0)
      worst_angle = std::max(worst_angle, std::abs(p.angle.exact - p.angle.approx) / std::abs(p.angle.exact));
  }
  ok &= max_chi < 1e-3 && worst_angle <= 1e-2;
  detail += format("(d) max|chi| %.1e, angle rel diff %.1e", max_chi, worst_angle);
  return {ok, detail};
}

}  // namespace

int main()
{
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {1, "ground-state populations", populations},
      {2, "power calibration", power_calibration},
      {3, "symmetric scheme gives no rotation", symmetric_null},
      {4, "F'=1 scheme gives weak rotation", weak_rotation_f1},
      {5, "large rotation at 65 C, 100 MHz", large_rotation},
      {6, "dispersion spectrum shape", spectrum_shape},
      {7, "peak growth with coupling power", power_monotonicity},
      {8, "detection round trip", detection_round_trip},
      {9, "EIT transmission peak census", eit_census},
      {10, "numerical hygiene", numerical_hygiene},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
