#ifndef EITPOL_CLI_HPP
#define EITPOL_CLI_HPP

// Scenario dispatch for the command-line tool: runs one RunSpec, writes CSV
// files plus a JSON sidecar, and maps failures onto exit codes.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "eitpol/config.hpp"
#include "eitpol/output.hpp"
#include "eitpol/scenarios.hpp"

namespace eitpol {

inline constexpr std::string_view tool_version = "1.0.0";

enum ExitCode : int { exit_ok = 0, exit_config_error = 1, exit_numerical_error = 2 };

struct RunOptions {
  unsigned threads = 0;  ///< 0: hardware concurrency
  bool dump_cg = false;
  bool dump_equations = false;
};

/// One machine-parsable diagnostic line: {"error":"config","message":"..."}
inline std::string error_line(std::string_view kind, std::string_view message)
{
  return json{{"error", kind}, {"message", message}}.dump();
}

namespace detail {

class OutputDir {
 public:
  explicit OutputDir(const std::string& dir) : dir_(dir)
  {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec || !std::filesystem::is_directory(dir_))
      throw ConfigError("output directory not writable: " + dir);
  }

  std::ofstream open(const std::string& name)
  {
    std::ofstream f(dir_ / name, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + (dir_ / name).string());
    written_.push_back(name);
    return f;
  }

  const std::vector<std::string>& written() const { return written_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> written_;
};

inline std::string celsius_label(double kelvin)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%gC", kelvin - 273.15);
  return buf;
}

}  // namespace detail

/// Executes the scenario. Throws ConfigError / NumericalError on failure.
inline json execute(const RunSpec& spec, const RunOptions& opt, std::ostream& log)
{
  const ScenarioConfig cfg = make_scenario_config(spec);
  detail::OutputDir out(spec.output_directory);
  json meta;
  meta["tool_version"] = std::string(tool_version);
  meta["resolved"] = resolved_parameters(cfg);
  const double center = cfg.system.coupling.detuning;
  if (spec.verbosity > 0)
    log << "scenario " << to_string(spec.scenario) << ", scheme " << to_string(spec.scheme)
        << ", coupling " << to_mhz(cfg.system.coupling.rabi_scale) << " MHz, density "
        << cfg.medium.density * 1e-6 << " cm^-3\n";

  if (opt.dump_cg) {
    auto f = out.open("cg_table.csv");
    write_cg_csv(f, cfg.system.scheme);
  }
  if (opt.dump_equations) {
    auto f = out.open("equations.txt");
    write_equation_dump(f, cfg.system.liouvillian(), cfg.system.scheme);
  }

  auto sweep_meta = [&](const SweepResult& r) {
    json j;
    j["populations_policy"] = r.policy == PopulationPolicy::once ? "once" : "per_point";
    if (r.policy == PopulationPolicy::once) j["populations"] = populations_json(r.populations);
    double qerr = 0.0;
    for (const auto& p : r.points) qerr = std::max(qerr, p.quadrature_error);
    j["max_relative_quadrature_error"] = qerr;
    j["max_abs_phi_deg"] = deg(max_abs_phi(r));
    if (auto pk = find_dispersion_peaks(r, center, cfg.peak_window))
      j["peaks"] = {{"left_detuning_MHz", to_mhz(pk->left_detuning)},
                    {"left_phi_deg", deg(pk->left_phi)},
                    {"right_detuning_MHz", to_mhz(pk->right_detuning)},
                    {"right_phi_deg", deg(pk->right_phi)}};
    else
      j["peaks"] = nullptr;
    return j;
  };

  switch (spec.scenario) {
    case Scenario::spectrum: {
      const auto r = sweep_probe_detuning(cfg, opt.threads);
      auto f = out.open("spectrum.csv");
      write_spectrum_csv(f, r);
      meta["result"] = sweep_meta(r);
      break;
    }
    case Scenario::detector_trace: {
      const auto r = sweep_probe_detuning(cfg, opt.threads);
      auto f = out.open("detector_trace.csv");
      write_detector_csv(f, r);
      meta["result"] = sweep_meta(r);
      break;
    }
    case Scenario::power_scan: {
      std::vector<double> watts;
      for (double mw : spec.scan_powers_mw) watts.push_back(mw * 1e-3);
      const auto scan = sweep_coupling_power(cfg, watts, opt.threads);
      auto f = out.open("power_scan.csv");
      write_power_scan_csv(f, scan);
      meta["result"]["populations"] = json::array();
      for (const auto& p : scan) meta["result"]["populations"].push_back(populations_json(p.populations));
      break;
    }
    case Scenario::temp_scan: {
      const auto scan = sweep_temperature(cfg, spec.scan_temperatures_k, opt.threads);
      {
        auto f = out.open("temp_scan.csv");
        write_temperature_scan_csv(f, scan);
      }
      meta["result"] = json::array();
      for (const auto& t : scan) {
        auto f = out.open("spectrum_" + detail::celsius_label(t.temperature) + ".csv");
        write_spectrum_csv(f, t.sweep);
        auto m = sweep_meta(t.sweep);
        m["temperature_K"] = t.temperature;
        m["density_m3"] = t.medium.density;
        meta["result"].push_back(m);
      }
      break;
    }
    case Scenario::eit_peaks: {
      const auto minus = eit_transmission(cfg, Polarization::sigma_minus, opt.threads);
      const auto plus = eit_transmission(cfg, Polarization::sigma_plus, opt.threads);
      const auto pm = count_peaks(minus.detuning, minus.transmission, cfg.prominence);
      const auto pp = count_peaks(plus.detuning, plus.transmission, cfg.prominence);
      {
        auto f = out.open("eit_transmission.csv");
        write_transmission_csv(f, minus, plus);
      }
      auto f = out.open("eit_peaks.csv");
      write_peaks_csv(f, pm, pp);
      meta["result"] = {{"sigma_minus_peaks", pm.size()},
                        {"sigma_plus_peaks", pp.size()},
                        {"sigma_minus_populations", populations_json(minus.populations)},
                        {"sigma_plus_populations", populations_json(plus.populations)}};
      log << "peaks sigma_minus=" << pm.size() << " sigma_plus=" << pp.size() << '\n';
      break;
    }
    case Scenario::populations: {
      AtomicSystem sys = cfg.system;
      sys.probe.detuning = 0.0;
      const auto rho = steady_state(sys);
      auto f = out.open("populations.csv");
      write_populations_csv(f, sys.scheme, rho);
      const auto p = ground_populations(sys.scheme, rho);
      meta["result"] = {{"populations", populations_json(p)}};
      log << "rho_a1a1=" << fmt9(p[0]) << " rho_a2a2=" << fmt9(p[1]) << " rho_a3a3=" << fmt9(p[2]) << '\n';
      break;
    }
  }

  json sidecar = to_json(spec);
  meta["files"] = out.written();
  sidecar[std::string(metadata_key)] = meta;
  auto f = out.open("run.meta.json");
  f << sidecar.dump(2) << '\n';
  return sidecar;
}

/// Runs and converts failures into exit codes plus one diagnostic line on `err`.
inline int run(const RunSpec& spec, const RunOptions& opt, std::ostream& out, std::ostream& err)
{
  try {
    execute(spec, opt, out);
    return exit_ok;
  } catch (const ConfigError& e) {
    err << error_line("config", e.what()) << '\n';
    return exit_config_error;
  } catch (const NumericalError& e) {
    err << error_line("numerical", e.what()) << '\n';
    return exit_numerical_error;
  } catch (const std::exception& e) {
    err << error_line("numerical", e.what()) << '\n';
    return exit_numerical_error;
  }
}

}  // namespace eitpol

#endif  // EITPOL_CLI_HPP
