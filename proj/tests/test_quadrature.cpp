#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "eitpol/quadrature.hpp"

using namespace eitpol;
using cplx = std::complex<double>;

TEST(Quadrature, PolynomialsAreExactOnOnePanel)
{
  // a 15-point Kronrod rule integrates degree-22 polynomials exactly
  auto f = [](double x) { return cplx(std::pow(x, 10), 3.0 * x * x); };
  const auto r = integrate_adaptive(f, {-1.0, 2.0});
  EXPECT_NEAR(r.value.real(), (std::pow(2.0, 11) + 1.0) / 11.0, 1e-10);
  EXPECT_NEAR(r.value.imag(), 9.0, 1e-12);
  EXPECT_EQ(r.intervals, 1);
  EXPECT_EQ(r.evaluations, 15);
}

TEST(Quadrature, GaussianAndLorentzian)
{
  auto g = [](double x) { return cplx(std::exp(-x * x), 0.0); };
  EXPECT_NEAR(integrate_adaptive(g, {-8.0, 8.0}).value.real(), std::sqrt(M_PI), 1e-12);

  const double w = 1e-3;
  auto l = [w](double x) { return 1.0 / cplx(w, -x); };
  const auto r = integrate_adaptive(l, {-1.0, 0.0, 1.0}, {1e-11, 0.0, 10000});
  EXPECT_NEAR(r.value.real(), 2.0 * std::atan(1.0 / w), 1e-8);
  EXPECT_NEAR(r.value.imag(), 0.0, 1e-9);
}

TEST(Quadrature, ReportedErrorBoundsTrueError)
{
  auto f = [](double x) { return cplx(1.0 / (1.0 + 25.0 * x * x), 0.0); };
  const double exact = 0.4 * std::atan(5.0);
  for (double tol : {1e-4, 1e-7, 1e-10}) {
    const auto r = integrate_adaptive(f, {-1.0, 1.0}, {tol, 0.0, 4000});
    EXPECT_LE(std::abs(r.value.real() - exact), std::max(r.error, 1e-15));
    EXPECT_LE(r.error, tol * std::abs(r.value));
  }
}

TEST(Quadrature, TighterToleranceNeedsMoreWork)
{
  auto f = [](double x) { return 1.0 / cplx(0.01, -x); };
  const auto coarse = integrate_adaptive(f, {-1.0, 1.0}, {1e-4, 0.0, 4000});
  const auto fine = integrate_adaptive(f, {-1.0, 1.0}, {1e-10, 0.0, 4000});
  EXPECT_GT(fine.evaluations, coarse.evaluations);
}

TEST(Quadrature, NonConvergenceThrowsWithEstimate)
{
  auto f = [](double x) { return 1.0 / cplx(1e-9, -x); };
  try {
    integrate_adaptive(f, {-1.0, 1.0}, {1e-14, 0.0, 3});
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("error estimate"), std::string::npos);
  }
  EXPECT_THROW(integrate_adaptive(f, {1.0}), NumericalError);
}

TEST(Quadrature, Deterministic)
{
  auto f = [](double x) { return cplx(std::sin(40.0 * x), std::cos(3.0 * x)) / (1.0 + x * x); };
  const auto a = integrate_adaptive(f, {-3.0, 3.0});
  const auto b = integrate_adaptive(f, {-3.0, 3.0});
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.intervals, b.intervals);
}
