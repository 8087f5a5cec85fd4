#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "eitpol/spectra.hpp"
#include "oracles.hpp"

using namespace eitpol;

namespace {

MediumParams reference_medium()
{
  MediumParams m = medium_at_temperature(328.15);
  m.density = 1.8e17;
  return m;
}

cplx f1_argument(double probe_detuning)
{
  const double omega_c1 = mhz(60.0);
  return cplx(mhz(3.5), -probe_detuning) + 0.25 * omega_c1 * omega_c1 / cplx(mhz(1.1), -probe_detuning);
}

}  // namespace

TEST(Maxwellian, NormalizationAndShape)
{
  const double v = thermal_speed(328.0);
  EXPECT_NEAR(maxwellian_weight(0.0, v), 1.0 / (v * std::sqrt(pi)), 1e-15);
  EXPECT_NEAR(maxwellian_weight(v, v) / maxwellian_weight(0.0, v), std::exp(-1.0), 1e-15);
  auto w = [v](double u) { return cplx(maxwellian_weight(u, v, 2.5), 0.0); };
  EXPECT_NEAR(integrate_adaptive(w, {-10.0 * v, 10.0 * v}).value.real(), 2.5, 1e-12);
}

TEST(Maxwellian, ThermalSpeed)
{
  EXPECT_NEAR(thermal_speed(328.0), 250.51641309155005, 1e-9);
}

TEST(DopplerFactor, FrozenReferenceAtResonance)
{
  const MediumParams m = medium_at_temperature(328.0);
  const auto f = doppler_factor(f1_argument(0.0), m.wavenumber(), m.thermal_speed);
  EXPECT_NEAR(f.value.real(), oracle::f1_reference_real, 1e-6 * oracle::f1_reference_real);
  EXPECT_LT(std::abs(f.value.imag()), 1e-9 * oracle::f1_reference_real);
  EXPECT_LE(f.error, 1e-9 * std::abs(f.value));
}

TEST(DopplerFactor, AgreesWithDenseTrapezoid)
{
  const MediumParams m = medium_at_temperature(328.0);
  for (double det : {-300.0, -40.0, -2.0, 0.7, 9.0, 150.0}) {
    const cplx a = f1_argument(mhz(det));
    const auto f = doppler_factor(a, m.wavenumber(), m.thermal_speed);
    const auto ref = oracle::trapezoid_doppler(a, m.wavenumber(), m.thermal_speed);
    EXPECT_LT(std::abs(f.value - ref) / std::abs(ref), 1e-6) << det << " MHz";
  }
}

TEST(DopplerFactor, ZeroVelocityWidthReducesToIntegrand)
{
  const cplx a(mhz(3.5), -mhz(12.0));
  EXPECT_EQ(doppler_factor(a, 7.9e6, 0.0).value, 1.0 / a);
}

TEST(DopplerFactor, WithoutCouplingAllChannelsShareOneForm)
{
  AtomicSystem sys;
  sys.coupling.rabi_scale = 0.0;
  sys.probe.detuning = mhz(-20.0);
  const auto h = sys.hamiltonian();
  const auto m = reference_medium();
  const auto channels = probe_channels(sys.scheme, sys.coupling);
  const auto f0 = doppler_factor(channel_rates(channels[0], sys.scheme, h, sys.rates), m).value;
  for (const auto& ch : channels)
    EXPECT_NEAR(std::abs(doppler_factor(channel_rates(ch, sys.scheme, h, sys.rates), m).value - f0), 0.0,
                1e-14 * std::abs(f0));
}

TEST(DopplerFactor, HalvingToleranceStaysWithinReportedError)
{
  const MediumParams m = medium_at_temperature(338.15);
  for (double det : {-60.0, 0.0, 3.3}) {
    const cplx a = f1_argument(mhz(det));
    DopplerSpec loose;
    loose.quadrature.rel_tol = 1e-6;
    DopplerSpec tight = loose;
    tight.quadrature.rel_tol = 0.5e-6;
    const auto f = doppler_factor(a, m.wavenumber(), m.thermal_speed, loose);
    const auto g = doppler_factor(a, m.wavenumber(), m.thermal_speed, tight);
    EXPECT_LE(std::abs(f.value - g.value), f.error + g.error);
  }
}

TEST(DopplerFactor, EitDipStaysAtTwoPhotonResonanceForAnyWidth)
{
  // Im(chi-) of the a1 channel (no Stark shift on b2) has a local minimum at zero detuning
  AtomicSystem sys;
  sys.rates.gamma_ba = mhz(0.2);
  const GroundPopulations pops{1.0, 0.0, 0.0};
  for (double temperature : {300.0, 330.0, 400.0}) {
    const auto m = medium_at_temperature(temperature);
    auto im_chi = [&](double det) {
      sys.probe.detuning = mhz(det);
      return evaluate_susceptibilities(sys, pops, m).pair.chi_minus.imag();
    };
    EXPECT_LT(im_chi(0.0), im_chi(-0.3));
    EXPECT_LT(im_chi(0.0), im_chi(0.3));
  }
}

TEST(Susceptibility, ZeroPopulationGivesZero)
{
  AtomicSystem sys;
  const auto e = evaluate_susceptibilities(sys, {0.0, 0.0, 0.0}, reference_medium());
  EXPECT_EQ(e.pair.chi_minus, cplx(0.0));
  EXPECT_EQ(e.pair.chi_plus, cplx(0.0));
  EXPECT_EQ(e.angle.exact, 0.0);
}

TEST(Susceptibility, LinearInDensity)
{
  AtomicSystem sys;
  sys.probe.detuning = mhz(-4.0);
  const GroundPopulations pops{0.22, 0.23, 0.06};
  auto m = reference_medium();
  const auto a = evaluate_susceptibilities(sys, pops, m).pair;
  m.density *= 2.0;
  const auto b = evaluate_susceptibilities(sys, pops, m).pair;
  EXPECT_NEAR(std::abs(b.chi_minus - 2.0 * a.chi_minus), 0.0, 1e-14 * std::abs(b.chi_minus));
  EXPECT_NEAR(std::abs(b.chi_plus - 2.0 * a.chi_plus), 0.0, 1e-14 * std::abs(b.chi_plus));
}

TEST(Susceptibility, SymmetricSchemeHasEqualComponents)
{
  AtomicSystem sys;
  sys.scheme = build_level_scheme(SchemeId::fig10_sym);
  sys.coupling = coupling_drive(sys.scheme, mhz(80.0));
  const auto pops = ground_populations(sys);
  EXPECT_NEAR(pops[0], pops[2], 1e-12);
  for (double det : {-200.0, -5.0, 0.0, 2.5, 60.0}) {
    sys.probe.detuning = mhz(det);
    const auto p = evaluate_susceptibilities(sys, pops, reference_medium()).pair;
    EXPECT_LE(std::abs(p.chi_plus - p.chi_minus), 1e-12 * std::abs(p.chi_minus)) << det;
  }
}

TEST(Susceptibility, IndexAndAbsorptionDefinitions)
{
  const auto p = make_susceptibility_pair(cplx(2e-6, 3e-6), cplx(-1e-6, 1e-6), 795e-9);
  EXPECT_DOUBLE_EQ(p.n_minus, std::sqrt(1.0 + 2e-6));
  EXPECT_DOUBLE_EQ(p.n_plus, std::sqrt(1.0 - 1e-6));
  EXPECT_NEAR(p.index_difference, p.n_plus - p.n_minus, 1e-15);
  const double k = two_pi / 795e-9;
  EXPECT_NEAR(p.alpha_minus, k * 3e-6, 1e-6 * k * 3e-6);
  EXPECT_GT(p.alpha_plus, 0.0);
}

TEST(RotationAngle, HandEvaluatedExample)
{
  MediumParams m;
  m.wavelength = 795e-9;
  m.length = 0.05;
  const auto p = make_susceptibility_pair(cplx(0.0, 1e-7), cplx(1e-6, 1e-7), m.wavelength);
  const auto phi = rotation_angle(p, m);
  EXPECT_NEAR(phi.approx, 0.0988, 5e-5);
  EXPECT_NEAR(deg(phi.approx), 5.66, 5e-3);
  EXPECT_NEAR(phi.exact, phi.approx, 1e-6 * phi.approx);

  const auto q = make_susceptibility_pair(cplx(1e-6, 1e-7), cplx(0.0, 1e-7), m.wavelength);
  EXPECT_DOUBLE_EQ(rotation_angle(q, m).approx, -phi.approx);
  const auto z = make_susceptibility_pair(cplx(3e-6, 1e-7), cplx(3e-6, 1e-7), m.wavelength);
  EXPECT_EQ(rotation_angle(z, m).exact, 0.0);
}

TEST(RotationAngle, ExactAndApproximateAgreeForSmallChi)
{
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> u(-1e-3, 1e-3);
  MediumParams m;
  for (int i = 0; i < 200; ++i) {
    const auto p = make_susceptibility_pair(cplx(u(gen), std::abs(u(gen))), cplx(u(gen), std::abs(u(gen))),
                                            m.wavelength);
    const auto phi = rotation_angle(p, m);
    EXPECT_LE(std::abs(phi.exact - phi.approx), 1e-2 * std::abs(phi.exact) + 1e-300);
  }
}

TEST(VaporDensity, AnchorAndGrowth)
{
  EXPECT_NEAR(calibrated_density(328.15), 1.62e17, 1e3);
  // saturated vapor at 55 C, before anchoring: ~1.6e11 atoms / cm^3
  EXPECT_NEAR(vapor_number_density(328.15) * 1e-6, 1.636e11, 0.02e11);
  EXPECT_LT(calibrated_density(318.15), calibrated_density(328.15));
  EXPECT_LT(calibrated_density(328.15), calibrated_density(338.15));
  EXPECT_THROW(vapor_number_density(200.0), ConfigError);
  EXPECT_THROW(vapor_number_density(600.0), ConfigError);
  // the two phase curves meet at the melting point
  EXPECT_NEAR(rb_vapor_pressure(rb_melting_point - 1e-9) / rb_vapor_pressure(rb_melting_point + 1e-9), 1.0, 0.02);
}

TEST(Susceptibility, ChannelCountMismatchIsRejected)
{
  AtomicSystem sys;
  const auto channels = probe_channels(sys.scheme, sys.coupling);
  EXPECT_THROW(susceptibilities(channels, {0.2, 0.2, 0.2}, {cplx(1.0)}, reference_medium()), ConfigError);
}
