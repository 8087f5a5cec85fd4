#ifndef EITPOL_ANGULAR_MOMENTUM_HPP
#define EITPOL_ANGULAR_MOMENTUM_HPP

// Wigner 3j / 6j symbols via the Racah closed forms. All angular momenta are
// passed doubled (2j, 2m) so half-integer nuclear and electronic spins stay exact.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>

namespace eitpol {

namespace detail {

inline long double factorial(int n)
{
  static const auto table = [] {
    std::array<long double, 64> t{};
    t[0] = 1.0L;
    for (int i = 1; i < 64; ++i) t[i] = t[i - 1] * static_cast<long double>(i);
    return t;
  }();
  return table.at(static_cast<std::size_t>(n));
}

inline bool is_even(int twice) { return twice % 2 == 0; }

// Triangle condition on doubled arguments, including integer-sum parity.
inline bool triangle(int ta, int tb, int tc)
{
  return tc >= std::abs(ta - tb) && tc <= ta + tb && is_even(ta + tb + tc);
}

// sqrt of the triangle coefficient Delta(abc), doubled arguments
inline long double triangle_coefficient(int ta, int tb, int tc)
{
  return std::sqrt(factorial((ta + tb - tc) / 2) * factorial((ta - tb + tc) / 2) *
                   factorial((-ta + tb + tc) / 2) / factorial((ta + tb + tc) / 2 + 1));
}

inline int parity_sign(int n) { return (n % 2 == 0) ? 1 : -1; }

}  // namespace detail

/// Wigner 3j symbol (j1 j2 j3; m1 m2 m3), arguments doubled.
inline double wigner_3j(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3)
{
  using detail::factorial;
  if (tm1 + tm2 + tm3 != 0) return 0.0;
  if (!detail::triangle(tj1, tj2, tj3)) return 0.0;
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tm3) > tj3) return 0.0;
  if (!detail::is_even(tj1 + tm1) || !detail::is_even(tj2 + tm2) || !detail::is_even(tj3 + tm3))
    return 0.0;
  if (tm1 == 0 && tm2 == 0 && !detail::is_even((tj1 + tj2 + tj3) / 2)) return 0.0;

  const int j1pm1 = (tj1 + tm1) / 2, j1mm1 = (tj1 - tm1) / 2;
  const int j2pm2 = (tj2 + tm2) / 2, j2mm2 = (tj2 - tm2) / 2;
  const int j3pm3 = (tj3 + tm3) / 2, j3mm3 = (tj3 - tm3) / 2;
  const int j1j2mj3 = (tj1 + tj2 - tj3) / 2;
  const int j3mj2pm1 = (tj3 - tj2 + tm1) / 2;
  const int j3mj1mm2 = (tj3 - tj1 - tm2) / 2;

  const int kmin = std::max({0, -j3mj2pm1, -j3mj1mm2});
  const int kmax = std::min({j1j2mj3, j1mm1, j2pm2});

  long double sum = 0.0L;
  for (int k = kmin; k <= kmax; ++k) {
    const long double denom = factorial(k) * factorial(j3mj2pm1 + k) * factorial(j3mj1mm2 + k) *
                              factorial(j1j2mj3 - k) * factorial(j1mm1 - k) * factorial(j2pm2 - k);
    sum += detail::parity_sign(k) / denom;
  }

  const long double norm = detail::triangle_coefficient(tj1, tj2, tj3) *
                           std::sqrt(factorial(j1pm1) * factorial(j1mm1) * factorial(j2pm2) *
                                     factorial(j2mm2) * factorial(j3pm3) * factorial(j3mm3));
  const int phase = detail::parity_sign((tj1 - tj2 - tm3) / 2);
  return static_cast<double>(phase * norm * sum);
}

/// Wigner 6j symbol {j1 j2 j3; j4 j5 j6}, arguments doubled.
inline double wigner_6j(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6)
{
  using detail::factorial;
  using detail::triangle;
  if (!triangle(tj1, tj2, tj3) || !triangle(tj1, tj5, tj6) || !triangle(tj4, tj2, tj6) ||
      !triangle(tj4, tj5, tj3))
    return 0.0;

  const int a1 = (tj1 + tj2 + tj3) / 2;
  const int a2 = (tj1 + tj5 + tj6) / 2;
  const int a3 = (tj4 + tj2 + tj6) / 2;
  const int a4 = (tj4 + tj5 + tj3) / 2;
  const int b1 = (tj1 + tj2 + tj4 + tj5) / 2;
  const int b2 = (tj2 + tj3 + tj5 + tj6) / 2;
  const int b3 = (tj3 + tj1 + tj6 + tj4) / 2;

  const int tmin = std::max({a1, a2, a3, a4});
  const int tmax = std::min({b1, b2, b3});
  long double sum = 0.0L;
  for (int t = tmin; t <= tmax; ++t) {
    const long double denom = factorial(t - a1) * factorial(t - a2) * factorial(t - a3) *
                              factorial(t - a4) * factorial(b1 - t) * factorial(b2 - t) *
                              factorial(b3 - t);
    sum += detail::parity_sign(t) * factorial(t + 1) / denom;
  }
  const long double norm =
      detail::triangle_coefficient(tj1, tj2, tj3) * detail::triangle_coefficient(tj1, tj5, tj6) *
      detail::triangle_coefficient(tj4, tj2, tj6) * detail::triangle_coefficient(tj4, tj5, tj3);
  return static_cast<double>(norm * sum);
}

/// Angular part of the dipole matrix element <F m_F| e r_q |F' m_F'> for a
/// hyperfine transition, in units of the fine-structure reduced element
/// <J||er||J'>. Spins are doubled. Returns 0 for any forbidden pair.
///
/// Convention: reduce <F||er||F'> with a 6j, then apply Wigner-Eckart with
/// phase (-1)^(F'-1+m_F). For J = J' the squares summed over all ground
/// sublevels of a given excited sublevel equal 1.
inline double hyperfine_dipole_factor(int two_j, int two_jp, int two_i, int two_f, int two_mf,
                                      int two_fp, int two_mfp)
{
  const int two_q = two_mf - two_mfp;
  if (std::abs(two_q) > 2) return 0.0;
  if (std::abs(two_f - two_fp) > 2) return 0.0;
  if (std::abs(two_mf) > two_f || std::abs(two_mfp) > two_fp) return 0.0;

  const double six_j = wigner_6j(two_j, two_jp, 2, two_fp, two_f, two_i);
  const double reduced = detail::parity_sign((two_fp + two_j + 2 + two_i) / 2) *
                         std::sqrt(static_cast<double>((two_fp + 1) * (two_j + 1))) * six_j;
  const double three_j = wigner_3j(two_fp, 2, two_f, two_mfp, two_q, -two_mf);
  const double angular = detail::parity_sign((two_fp - 2 + two_mf) / 2) *
                         std::sqrt(static_cast<double>(two_f + 1)) * three_j;
  return reduced * angular;
}

}  // namespace eitpol

#endif  // EITPOL_ANGULAR_MOMENTUM_HPP
