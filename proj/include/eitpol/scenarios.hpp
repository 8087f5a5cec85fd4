#ifndef EITPOL_SCENARIOS_HPP
#define EITPOL_SCENARIOS_HPP

// Detuning sweeps, power and temperature scans, dispersion-peak extraction and
// EIT-transmission peak counting built from the physics modules.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "eitpol/detection.hpp"
#include "eitpol/dynamics.hpp"
#include "eitpol/spectra.hpp"

namespace eitpol {

struct DetuningGrid {
  double start = mhz(-400.0);
  double stop = mhz(400.0);
  std::size_t points = 1201;

  std::vector<double> values() const
  {
    if (points < 2 || !(stop > start) || !std::isfinite(start) || !std::isfinite(stop))
      throw ConfigError("detuning grid must be finite, ascending and have at least 2 points");
    std::vector<double> x(points);
    const double step = (stop - start) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) x[i] = start + step * static_cast<double>(i);
    x.back() = stop;
    return x;
  }
};

enum class PopulationPolicy { once, per_point };

struct ScenarioConfig {
  AtomicSystem system{};
  MediumParams medium = medium_at_temperature(328.15);
  DetuningGrid grid{};
  DopplerSpec doppler{};
  PopulationPolicy populations = PopulationPolicy::once;
  double peak_window = mhz(30.0);  ///< half-width of the search window around two-photon resonance
  double prominence = 1e-4;        ///< peak-count threshold, relative to the curve's range
  double angle_floor = 1e-12;      ///< recover_angle floor, relative to I0
  PowerCalibration coupling_calibration = eitpol::coupling_calibration;
  DensityAnchor density_anchor{};
};

/// Runs body(i) for i in [0, n) on up to `threads` workers. Each index is
/// processed exactly once; callers write into slot i, so output order never
/// depends on scheduling. The first exception is rethrown after joining.
template <class Body>
void parallel_for(std::size_t n, unsigned threads, Body body)
{
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct SweepPoint {
  double detuning = 0.0;  ///< probe detuning, rad/s
  SusceptibilityPair pair;
  RotationAngle angle{};
  DetectorSignals detectors;
  std::optional<double> recovered_angle;
  GroundPopulations populations{};
  double quadrature_error = 0.0;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  GroundPopulations populations{};  ///< populations used (policy "once")
  StarkShifts stark{};
  PopulationPolicy policy = PopulationPolicy::once;

  std::vector<double> abscissa() const
  {
    std::vector<double> x;
    for (const auto& p : points) x.push_back(p.detuning);
    return x;
  }
  std::vector<double> phi() const
  {
    std::vector<double> y;
    for (const auto& p : points) y.push_back(p.angle.exact);
    return y;
  }
};

/// Populations at probe detuning 0 with the configured coupling detuning.
inline GroundPopulations representative_populations(const ScenarioConfig& cfg)
{
  AtomicSystem sys = cfg.system;
  sys.probe.detuning = 0.0;
  return ground_populations(sys);
}

inline SweepResult sweep_probe_detuning(const ScenarioConfig& cfg, unsigned threads = 1)
{
  const auto grid = cfg.grid.values();
  SweepResult out;
  out.policy = cfg.populations;
  out.stark = cfg.system.stark();
  if (cfg.populations == PopulationPolicy::once) out.populations = representative_populations(cfg);
  out.points.resize(grid.size());

  parallel_for(grid.size(), threads, [&](std::size_t i) {
    AtomicSystem sys = cfg.system;
    sys.probe.detuning = grid[i];
    SweepPoint& p = out.points[i];
    p.detuning = grid[i];
    p.populations = cfg.populations == PopulationPolicy::once ? out.populations : ground_populations(sys);
    const auto eval = evaluate_susceptibilities(sys, p.populations, cfg.medium, cfg.doppler);
    p.pair = eval.pair;
    p.angle = eval.angle;
    for (const auto& f : eval.factors) p.quadrature_error = std::max(p.quadrature_error, f.error / std::abs(f.value));
    const JonesVector in{1.0, 0.0};
    p.detectors = detector_intensities(propagate_cell(in, p.pair, cfg.medium), in.intensity());
    try {
      p.recovered_angle = recover_angle(p.detectors, cfg.angle_floor);
    } catch (const NumericalError&) {
      p.recovered_angle.reset();
    }
  });
  return out;
}

//
// Dispersion peaks
//

struct PeakPair {
  double left_detuning, left_phi;
  double right_detuning, right_phi;
};

namespace detail {

// Vertex of the parabola through three equally spaced samples around i.
inline std::pair<double, double> refine_extremum(const std::vector<double>& x,
                                                 const std::vector<double>& y, std::size_t i)
{
  if (i == 0 || i + 1 >= x.size()) return {x[i], y[i]};
  const double y0 = y[i - 1], y1 = y[i], y2 = y[i + 1];
  const double denom = y0 - 2.0 * y1 + y2;
  if (denom == 0.0) return {x[i], y[i]};
  const double h = 0.5 * (x[i + 1] - x[i - 1]);
  const double s = 0.5 * (y0 - y2) / denom;
  if (std::abs(s) > 1.0) return {x[i], y[i]};
  return {x[i] + s * h, y1 - 0.25 * (y0 - y2) * s};
}

}  // namespace detail

/// Extremal value on each side of the sign change of y closest to `center`,
/// searched within |x - center| <= window. Empty when there is no sign change
/// or one side holds no value of the expected sign.
inline std::optional<PeakPair> find_dispersion_peaks(const std::vector<double>& x,
                                                     const std::vector<double>& y, double center,
                                                     double window)
{
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::abs(x[i] - center) <= window) idx.push_back(i);
  if (idx.size() < 3) return std::nullopt;

  // sign changes are taken between consecutive nonzero samples, so exact zeros on the grid are skipped
  std::optional<std::pair<std::size_t, std::size_t>> crossing;
  double best = 0.0;
  std::optional<std::size_t> prev;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const std::size_t i = idx[k];
    if (y[i] == 0.0) continue;
    if (prev && (y[idx[*prev]] > 0) != (y[i] > 0)) {
      const std::size_t j = idx[*prev];
      const double xc = x[j] - y[j] * (x[i] - x[j]) / (y[i] - y[j]);
      if (!crossing || std::abs(xc - center) < best) {
        crossing = std::pair{*prev, k};
        best = std::abs(xc - center);
      }
    }
    prev = k;
  }
  if (!crossing) return std::nullopt;

  const double left_sign = y[idx[crossing->first]] > 0 ? 1.0 : -1.0;
  std::optional<std::size_t> li, ri;
  for (std::size_t k = 0; k <= crossing->first; ++k) {
    const std::size_t i = idx[k];
    if (y[i] * left_sign > 0 && (!li || std::abs(y[i]) > std::abs(y[*li]))) li = i;
  }
  for (std::size_t k = crossing->second; k < idx.size(); ++k) {
    const std::size_t i = idx[k];
    if (y[i] * left_sign < 0 && (!ri || std::abs(y[i]) > std::abs(y[*ri]))) ri = i;
  }
  if (!li || !ri) return std::nullopt;
  const auto [lx, ly] = detail::refine_extremum(x, y, *li);
  const auto [rx, ry] = detail::refine_extremum(x, y, *ri);
  return PeakPair{lx, ly, rx, ry};
}

inline std::optional<PeakPair> find_dispersion_peaks(const SweepResult& r, double center, double window)
{
  return find_dispersion_peaks(r.abscissa(), r.phi(), center, window);
}

struct ExtremumCount {
  int positive_maxima = 0;
  int negative_minima = 0;
};

/// Interior local maxima with y > 0 and local minima with y < 0 inside the window.
/// Flat runs count once.
inline ExtremumCount count_extrema(const std::vector<double>& x, const std::vector<double>& y,
                                   double center, double window)
{
  ExtremumCount c;
  std::vector<double> w;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::abs(x[i] - center) <= window) w.push_back(y[i]);
  std::vector<double> u;
  for (double v : w)
    if (u.empty() || v != u.back()) u.push_back(v);
  for (std::size_t i = 1; i + 1 < u.size(); ++i) {
    if (u[i] > u[i - 1] && u[i] > u[i + 1] && u[i] > 0) ++c.positive_maxima;
    if (u[i] < u[i - 1] && u[i] < u[i + 1] && u[i] < 0) ++c.negative_minima;
  }
  return c;
}

//
// Scans
//

struct PowerScanPoint {
  double power = 0.0;  ///< W
  double rabi = 0.0;   ///< rad/s
  std::optional<PeakPair> peaks;
  GroundPopulations populations{};
};

inline std::vector<PowerScanPoint> sweep_coupling_power(const ScenarioConfig& cfg,
                                                        const std::vector<double>& powers,
                                                        unsigned threads = 1)
{
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (!(powers[i] > 0.0)) throw ConfigError("coupling powers must be positive");
    if (i > 0 && !(powers[i] > powers[i - 1])) throw ConfigError("coupling powers must be ascending");
  }
  std::vector<PowerScanPoint> out;
  for (double p : powers) {
    ScenarioConfig c = cfg;
    c.system.coupling.rabi_scale = rabi_from_power(p, cfg.coupling_calibration);
    const auto r = sweep_probe_detuning(c, threads);
    out.push_back({p, c.system.coupling.rabi_scale,
                   find_dispersion_peaks(r, c.system.coupling.detuning, c.peak_window),
                   r.populations});
  }
  return out;
}

struct TemperatureScanPoint {
  double temperature = 0.0;  ///< K
  MediumParams medium;
  SweepResult sweep;
  std::optional<PeakPair> peaks;
};

inline std::vector<TemperatureScanPoint> sweep_temperature(const ScenarioConfig& cfg,
                                                           const std::vector<double>& temps,
                                                           unsigned threads = 1)
{
  std::vector<TemperatureScanPoint> out;
  for (double t : temps) {
    ScenarioConfig c = cfg;
    c.medium = medium_at_temperature(t, cfg.density_anchor, cfg.medium.length, cfg.medium.wavelength);
    auto r = sweep_probe_detuning(c, threads);
    auto peaks = find_dispersion_peaks(r, c.system.coupling.detuning, c.peak_window);
    out.push_back({t, c.medium, std::move(r), peaks});
  }
  return out;
}

//
// EIT transmission of one circular probe component
//

struct TransmissionCurve {
  Polarization component = Polarization::sigma_minus;
  std::vector<double> detuning;
  std::vector<double> transmission;
  GroundPopulations populations{};
};

inline TransmissionCurve eit_transmission(const ScenarioConfig& cfg, Polarization component,
                                          unsigned threads = 1)
{
  if (component == Polarization::pi) throw ConfigError("transmission component must be circular");
  ScenarioConfig c = cfg;
  c.system.probe.polarization = component == Polarization::sigma_minus
                                    ? DrivePolarization::sigma_minus
                                    : DrivePolarization::sigma_plus;
  TransmissionCurve out;
  out.component = component;
  out.detuning = c.grid.values();
  out.transmission.resize(out.detuning.size());
  out.populations = representative_populations(c);

  parallel_for(out.detuning.size(), threads, [&](std::size_t i) {
    AtomicSystem sys = c.system;
    sys.probe.detuning = out.detuning[i];
    const auto eval = evaluate_susceptibilities(sys, out.populations, c.medium, c.doppler);
    const double alpha = component == Polarization::sigma_minus ? eval.pair.alpha_minus
                                                                : eval.pair.alpha_plus;
    out.transmission[i] = std::exp(-alpha * c.medium.length);
  });
  return out;
}

struct Peak {
  double position = 0.0;
  double height = 0.0;
  double prominence = 0.0;
  double width = 0.0;  ///< full width at half prominence
};

/// Local maxima whose topographic prominence exceeds rel_prominence times the
/// curve's max - min range.
inline std::vector<Peak> count_peaks(const std::vector<double>& x, const std::vector<double>& y,
                                     double rel_prominence)
{
  std::vector<Peak> peaks;
  const std::size_t n = y.size();
  if (n < 3) return peaks;
  const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
  const double range = *hi - *lo;
  if (range <= 0.0) return peaks;

  std::size_t i = 1;
  while (i + 1 < n) {
    if (!(y[i] > y[i - 1])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && y[j + 1] == y[i]) ++j;
    if (j + 1 >= n || !(y[j + 1] < y[i])) {
      i = j + 1;
      continue;
    }
    const std::size_t peak = (i + j) / 2;
    const double top = y[peak];

    std::size_t l = i, lbase = i;
    double lmin = top;
    while (l > 0 && y[l - 1] <= top) {
      --l;
      if (y[l] < lmin) {
        lmin = y[l];
        lbase = l;
      }
    }
    std::size_t r = j, rbase = j;
    double rmin = top;
    while (r + 1 < n && y[r + 1] <= top) {
      ++r;
      if (y[r] < rmin) {
        rmin = y[r];
        rbase = r;
      }
    }
    const double prom = top - std::max(lmin, rmin);
    if (prom >= rel_prominence * range) {
      const double half = top - 0.5 * prom;
      auto cross = [&](std::size_t from, std::size_t to, int dir) {
        std::size_t k = from;
        while (k != to && y[k] > half) k = static_cast<std::size_t>(static_cast<long>(k) + dir);
        const std::size_t prev = static_cast<std::size_t>(static_cast<long>(k) - dir);
        if (y[k] > half || y[prev] == y[k]) return x[k];
        return x[k] + (half - y[k]) * (x[prev] - x[k]) / (y[prev] - y[k]);
      };
      const double wl = cross(peak, lbase, -1);
      const double wr = cross(peak, rbase, +1);
      peaks.push_back({x[peak], top, prom, wr - wl});
    }
    i = j + 1;
  }
  return peaks;
}

}  // namespace eitpol

#endif  // EITPOL_SCENARIOS_HPP
